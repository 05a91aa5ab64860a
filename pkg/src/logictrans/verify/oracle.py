"""Consequence oracles over a fixed bounded model space.

For engines whose model space depends only on the atoms in play, every
pointed model gets one bit; a formula becomes the mask of pointed models
where it holds and ``Γ ⊨ φ`` fails iff ``mask(Γ) & ~mask(φ)`` is nonzero.
The lowest set bit is the first countermodel in canonical order.

Matrix logics are evaluated bit-parallel: each formula gets one mask per
truth value, and tables combine masks instead of single values. Kripke
logics evaluate every valuation of a frame at once (see ``framegrid``).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..formula import Apply, Atom, Const, Formula, IndexedAtom, atoms_of
from ..semantics import EvaluationError, LogicSpec, first_counter
from ..semantics.logic import shares_space
from .framegrid import FrameGrid


class Oracle:
    def __init__(self, logic: LogicSpec, context: Sequence[Formula], size_bound: int | None = None):
        self.logic = logic
        self.size_bound = logic.bound(size_bound)
        self.kind = logic.kind
        self.grid = shares_space(logic)
        self._masks: dict = {}
        self.frames = None
        if self.grid and self.kind == "kripke":
            eng = logic.engine
            self.frames = FrameGrid(eng.frame_class, eng.keys(list(context)), self.size_bound)
            self.full = self.frames.full
        elif self.grid:
            eng = logic.engine
            self.atoms = frozenset(atoms_of(context))
            self.models = eng.space(list(context), self.size_bound)
            self.offsets = []
            full, off = 0, 0
            for m in self.models:
                self.offsets.append(off)
                full |= eng.points(m) << off
                off += m.n if self.kind == "kripke" else 1
            self.full = full
            self._memos = [dict() for _ in self.models]
            if self.kind == "matrix":
                self._init_matrix()

    def _init_matrix(self):
        sem = self.logic.engine.semantics
        self.sem = sem
        vals = sem.values
        n, k = len(vals), len(self.atoms)
        order = atoms_of(self.atoms)
        self._vmasks: dict = {}
        total = len(self.models)
        for i, a in enumerate(order):
            # value index j // step % n; the pattern repeats every n * step models
            step = n ** (k - 1 - i)
            period = n * step
            repeat = ((1 << total) - 1) // ((1 << period) - 1)
            block = (1 << step) - 1
            self._vmasks[a] = {v: (block << (vi * step)) * repeat for vi, v in enumerate(vals)}

    def value_masks(self, f: Formula) -> dict:
        """Truth value -> mask of models giving ``f`` that value."""
        hit = self._vmasks.get(f)
        if hit is not None:
            return hit
        sem = self.sem
        if isinstance(f, (Atom, IndexedAtom)):
            raise EvaluationError(f"atom {f} has no value")
        if isinstance(f, Const):
            if f.value not in sem.constants:
                raise EvaluationError(f"{sem.name} has no constant {f.value}")
            out = {v: 0 for v in sem.values}
            out[sem.constants[f.value]] = self.full
        elif isinstance(f, Apply):
            table = sem.tables.get(f.op)
            if table is None:
                raise EvaluationError(f"{sem.name} has no table for {f.op}")
            subs = [self.value_masks(a) for a in f.args]
            out = {v: 0 for v in sem.values}
            for args, v in table.items():
                m = self.full
                for sub, a in zip(subs, args):
                    m &= sub[a]
                    if not m:
                        break
                out[v] |= m
        else:
            raise EvaluationError(f"{sem.name} cannot evaluate {f}")
        self._vmasks[f] = out
        return out

    def mask(self, f: Formula) -> int:
        hit = self._masks.get(f)
        if hit is not None:
            return hit
        if not self.grid:
            raise TypeError(f"{self.logic.name} has no shared model space")
        if self.kind == "matrix":
            vm = self.value_masks(f)
            r = 0
            for v in self.sem.designated:
                r |= vm[v]
            self._masks[f] = r
            return r
        if self.frames is not None:
            r = self._masks[f] = self.frames.mask(f)
            return r
        eng = self.logic.engine
        r = 0
        for m, off, memo in zip(self.models, self.offsets, self._memos):
            r |= eng.truth(m, f, memo) << off
        self._masks[f] = r
        return r

    def premises_mask(self, premises: Iterable[Formula]) -> int:
        r = self.full
        for p in premises:
            r &= self.mask(p)
        return r

    def model_at(self, bit: int):
        """The pointed model owning bit ``bit``."""
        lo, hi = 0, len(self.offsets)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.offsets[mid] <= bit:
                lo = mid
            else:
                hi = mid
        return self.logic.engine.pointed(self.models[lo], bit - self.offsets[lo])

    def first_bit(self, mask: int):
        if self.frames is not None:
            return self.frames.first(mask)
        return self.model_at((mask & -mask).bit_length() - 1) if mask else None

    def counter(self, premises: Sequence[Formula], conclusion: Formula):
        """First countermodel to ``premises ⊨ conclusion`` or ``None``."""
        if self.kind == "explicit":
            return None if self.logic.engine.entails(list(premises), conclusion) else "refuted"
        if self.grid:
            return self.first_bit(self.premises_mask(premises) & ~self.mask(conclusion))
        return first_counter(self.logic, list(premises), conclusion, self.size_bound)

    def entails(self, premises: Sequence[Formula], conclusion: Formula) -> bool:
        if self.kind == "explicit":
            return self.logic.engine.entails(list(premises), conclusion)
        if self.grid:
            return not (self.premises_mask(premises) & ~self.mask(conclusion))
        return self.counter(premises, conclusion) is None

    def entails_mask(self, gamma_mask: int, conclusion: Formula) -> bool:
        return not (gamma_mask & ~self.mask(conclusion))


def oracle_for(logic: LogicSpec, formulas: Sequence[Formula], size_bound: int | None = None) -> Oracle:
    return Oracle(logic, list(formulas), size_bound)
