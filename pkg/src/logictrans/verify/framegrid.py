"""Kripke evaluation with all valuations of a frame at once.

For a fixed frame with ``n`` worlds and valuation sets ``S`` (all masks, or
upsets for intuitionistic classes), valuation number ``v`` assigns key ``i``
the set ``S[d_i]`` where ``d_i`` is the ``i``-th base-``|S|`` digit of
``v`` (first key most significant), matching the engine's enumeration.
A formula becomes one ``V``-bit mask per world: bit ``v`` is set when the
world forces it under valuation ``v``.

Frames are laid out one after the other; inside a frame block world ``w``
occupies bits ``w*V .. w*V+V-1``. Canonical order is (frame, valuation,
world), as in the engine's pointed enumeration.
"""

from __future__ import annotations

import bisect
from typing import Sequence

from ..formula import Apply, Atom, Const, Formula, IndexedAtom
from ..semantics import EvaluationError, KripkeModel
from ..semantics.kripke import INTUITIONISTIC, _valuation_sets, frames

_BOT = Const("bot")


class _Frame:
    __slots__ = ("n", "succ", "sets", "V", "full", "atoms", "memo", "offset")

    def __init__(self, cls: str, n: int, succ, keys, offset: int):
        self.n, self.succ, self.offset = n, succ, offset
        self.sets = _valuation_sets(cls, n, succ)
        u, k = len(self.sets), len(keys)
        self.V = u ** k
        self.full = (1 << self.V) - 1
        self.atoms = {}
        for i, key in enumerate(keys):
            step = u ** (k - 1 - i)
            repeat = self.full // ((1 << (u * step)) - 1)
            block = (1 << step) - 1
            self.atoms[key] = tuple(
                sum((block << (d * step)) * repeat for d, s in enumerate(self.sets) if s >> w & 1)
                for w in range(n))
        self.memo = {}


class FrameGrid:
    def __init__(self, frame_class: str, keys: Sequence[Formula], size_bound: int):
        self.cls = frame_class
        self.keys = tuple(keys)
        self.frames: list[_Frame] = []
        offset = 0
        for n in range(1, size_bound + 1):
            for succ in frames(frame_class, n):
                fr = _Frame(frame_class, n, succ, self.keys, offset)
                self.frames.append(fr)
                offset += n * fr.V
        self.offsets = [fr.offset for fr in self.frames]
        self.full = self._join([(fr, (fr.full,) * fr.n) for fr in self.frames])

    @staticmethod
    def _join(parts) -> int:
        r = 0
        for fr, ext in reversed(parts):
            for w in range(fr.n - 1, -1, -1):
                r = (r << fr.V) | ext[w]
        return r

    def mask(self, f: Formula) -> int:
        return self._join([(fr, self.ext(fr, f)) for fr in self.frames])

    def ext(self, fr: _Frame, f: Formula) -> tuple[int, ...]:
        hit = fr.memo.get(f)
        if hit is not None:
            return hit
        n, succ, full, cls = fr.n, fr.succ, fr.full, self.cls
        if isinstance(f, (Atom, IndexedAtom)):
            try:
                r = fr.atoms[f]
            except KeyError:
                raise EvaluationError(f"atom {f} has no value") from None
        elif isinstance(f, Const):
            if f.value == "top":
                r = (full,) * n
            elif cls == "MIN":
                r = fr.atoms[_BOT]
            else:
                r = (0,) * n
        elif isinstance(f, Apply):
            op, args = f.op, f.args
            if op == "not":
                a = self.ext(fr, args[0])
                if cls in INTUITIONISTIC:
                    b = fr.atoms[_BOT] if cls == "MIN" else (0,) * n
                    r = _imp(n, succ, full, a, b)
                else:
                    r = tuple(full ^ x for x in a)
            elif op == "and":
                r = tuple(x & y for x, y in zip(self.ext(fr, args[0]), self.ext(fr, args[1])))
            elif op == "or":
                r = tuple(x | y for x, y in zip(self.ext(fr, args[0]), self.ext(fr, args[1])))
            elif op == "->":
                a, b = self.ext(fr, args[0]), self.ext(fr, args[1])
                if cls in INTUITIONISTIC:
                    r = _imp(n, succ, full, a, b)
                else:
                    r = tuple((full ^ x) | y for x, y in zip(a, b))
            elif op == "<->":
                a, b = self.ext(fr, args[0]), self.ext(fr, args[1])
                if cls in INTUITIONISTIC:
                    r = tuple(x & y for x, y in zip(_imp(n, succ, full, a, b), _imp(n, succ, full, b, a)))
                else:
                    r = tuple(full ^ (x ^ y) for x, y in zip(a, b))
            elif op == "box":
                a = self.ext(fr, args[0])
                r = tuple(_meet(succ[w], a, full) for w in range(n))
            elif op == "dia":
                a = self.ext(fr, args[0])
                r = tuple(_join_succ(succ[w], a) for w in range(n))
            else:
                raise EvaluationError(f"Kripke semantics has no clause for {op}")
        else:
            raise EvaluationError(f"Kripke semantics cannot evaluate {f}")
        fr.memo[f] = r
        return r

    def first(self, mask: int) -> KripkeModel | None:
        """First pointed model (frame, valuation, world) whose bit is set."""
        if not mask:
            return None
        low = (mask & -mask).bit_length() - 1
        i = bisect.bisect_right(self.offsets, low) - 1
        fr = self.frames[i]
        block = mask >> fr.offset
        slices = [(block >> (w * fr.V)) & fr.full for w in range(fr.n)]
        v = min((s & -s).bit_length() - 1 for s in slices if s)
        w = next(w for w, s in enumerate(slices) if s >> v & 1)
        return self.model(fr, v).at(w)

    def model(self, fr: _Frame, v: int) -> KripkeModel:
        u, k = len(fr.sets), len(self.keys)
        digits = [(v // u ** (k - 1 - i)) % u for i in range(k)]
        return KripkeModel(self.cls, fr.n, fr.succ, {key: fr.sets[d] for key, d in zip(self.keys, digits)})


def _imp(n, succ, full, a, b) -> tuple[int, ...]:
    bad = [full ^ ((full ^ x) | y) for x, y in zip(a, b)]
    return tuple(full ^ _join_succ(succ[w], bad) for w in range(n))


def _meet(s: int, a, full: int) -> int:
    r = full
    u = 0
    while s:
        if s & 1:
            r &= a[u]
        s >>= 1
        u += 1
    return r


def _join_succ(s: int, a) -> int:
    r = 0
    u = 0
    while s:
        if s & 1:
            r |= a[u]
        s >>= 1
        u += 1
    return r

