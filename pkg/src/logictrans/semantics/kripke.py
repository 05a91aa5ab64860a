"""Finite Kripke semantics over bitmask-encoded frames.

Worlds are ``0..n-1``; a frame is the tuple of successor masks; valuations
map atoms to world masks. Frame classes:

``K``          any relation
``K4``         transitive
``S4``         reflexive and transitive
``Grz``        reflexive, transitive, antisymmetric (finite posets)
``IPL``        partial orders, persistent valuations, intuitionistic clauses
``MIN``        as ``IPL`` with ``bot`` read as an arbitrary persistent set
``atom-only``  no accessibility at all
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from ..formula import Apply, Atom, Const, Formula, IndexedAtom, atoms_of
from .matrix import EvaluationError

FRAME_CLASSES = ("K", "K4", "S4", "Grz", "IPL", "MIN", "atom-only")
INTUITIONISTIC = ("IPL", "MIN")


@dataclass(frozen=True, eq=False)
class KripkeModel:
    frame_class: str
    n: int
    succ: tuple[int, ...]
    valuation: Mapping[Formula, int]
    point: int = 0

    @property
    def worlds(self) -> range:
        return range(self.n)

    @property
    def access(self) -> frozenset[tuple[int, int]]:
        return frozenset((w, v) for w in range(self.n) for v in range(self.n) if self.succ[w] >> v & 1)

    def forced(self, f: Formula, memo: dict | None = None) -> bool:
        return bool(extension(self, f, memo) >> self.point & 1)

    def at(self, point: int) -> "KripkeModel":
        return KripkeModel(self.frame_class, self.n, self.succ, self.valuation, point)

    def worlds_of(self, mask: int) -> list[int]:
        return [w for w in range(self.n) if mask >> w & 1]

    def to_json(self) -> dict:
        return {
            "kind": "kripke",
            "class": self.frame_class,
            "worlds": list(range(self.n)),
            "access": sorted([list(p) for p in self.access]),
            "valuation": {str(a): self.worlds_of(m) for a, m in sorted(self.valuation.items(), key=lambda kv: str(kv[0]))},
            "point": self.point,
        }


def make_model(frame_class: str, n: int, access, valuation: Mapping[Formula | str, Sequence[int]], point: int = 0) -> KripkeModel:
    """Build a model from explicit pairs and world lists."""
    succ = [0] * n
    for w, v in access:
        succ[w] |= 1 << v
    val = {}
    for a, ws in valuation.items():
        key = Atom(a) if isinstance(a, str) else a
        m = 0
        for w in ws:
            m |= 1 << w
        val[key] = m
    model = KripkeModel(frame_class, n, tuple(succ), val, point)
    if not frame_ok(frame_class, n, model.succ):
        raise ValueError(f"frame violates {frame_class} conditions")
    if frame_class in INTUITIONISTIC and not all(is_upset(model.succ, m) for m in val.values()):
        raise ValueError("valuation is not persistent")
    return model


# --------------------------------------------------------------------------
# Frames
# --------------------------------------------------------------------------


def _reflexive(n, succ):
    return all(succ[w] >> w & 1 for w in range(n))


def _transitive(n, succ):
    for w in range(n):
        for v in range(n):
            if succ[w] >> v & 1 and succ[v] & ~succ[w]:
                return False
    return True


def _antisymmetric(n, succ):
    return all(not (succ[w] >> v & 1 and succ[v] >> w & 1) for w in range(n) for v in range(n) if w != v)


def frame_ok(frame_class: str, n: int, succ: Sequence[int]) -> bool:
    if frame_class == "K":
        return True
    if frame_class == "atom-only":
        return not any(succ)
    if frame_class == "K4":
        return _transitive(n, succ)
    if frame_class == "S4":
        return _reflexive(n, succ) and _transitive(n, succ)
    if frame_class in ("Grz", "IPL", "MIN"):
        return _reflexive(n, succ) and _transitive(n, succ) and _antisymmetric(n, succ)
    raise ValueError(f"unknown frame class {frame_class!r}")


@functools.lru_cache(maxsize=None)
def frames(frame_class: str, n: int) -> tuple[tuple[int, ...], ...]:
    """All frames of the class on ``n`` labelled worlds, in canonical order."""
    if frame_class == "atom-only":
        return ((0,) * n,)
    out = []
    forced = (1 << n) - 1 if frame_class in ("S4", "Grz", "IPL", "MIN") else 0
    for rows in itertools.product(range(1 << n), repeat=n):
        if forced and any(not rows[w] >> w & 1 for w in range(n)):
            continue
        if frame_ok(frame_class, n, rows):
            out.append(tuple(rows))
    return tuple(out)


def is_upset(succ: Sequence[int], mask: int) -> bool:
    w = 0
    m = mask
    while m:
        if m & 1 and succ[w] & ~mask:
            return False
        m >>= 1
        w += 1
    return True


@functools.lru_cache(maxsize=None)
def _valuation_sets(frame_class: str, n: int, succ: tuple[int, ...]) -> tuple[int, ...]:
    masks = range(1 << n)
    if frame_class in INTUITIONISTIC:
        return tuple(m for m in masks if is_upset(succ, m))
    return tuple(masks)


# --------------------------------------------------------------------------
# Evaluation
# --------------------------------------------------------------------------


def extension(model: KripkeModel, f: Formula, memo: dict | None = None) -> int:
    """Mask of worlds forcing ``f``."""
    if memo is not None:
        hit = memo.get(f)
        if hit is not None:
            return hit
    n, succ, cls = model.n, model.succ, model.frame_class
    full = (1 << n) - 1
    if isinstance(f, (Atom, IndexedAtom)):
        try:
            r = model.valuation[f]
        except KeyError:
            raise EvaluationError(f"atom {f} has no value") from None
    elif isinstance(f, Const):
        if f.value == "top":
            r = full
        elif cls == "MIN":
            r = model.valuation.get(f, 0)
        else:
            r = 0
    elif isinstance(f, Apply):
        op = f.op
        if op == "not":
            a = extension(model, f.args[0], memo)
            if cls == "MIN":
                b = model.valuation.get(_BOT, 0)
                r = _intuitionistic_imp(n, succ, a, b)
            elif cls == "IPL":
                r = _intuitionistic_imp(n, succ, a, 0)
            else:
                r = full & ~a
        elif op == "and":
            r = extension(model, f.args[0], memo) & extension(model, f.args[1], memo)
        elif op == "or":
            r = extension(model, f.args[0], memo) | extension(model, f.args[1], memo)
        elif op == "->":
            a = extension(model, f.args[0], memo)
            b = extension(model, f.args[1], memo)
            r = _intuitionistic_imp(n, succ, a, b) if cls in INTUITIONISTIC else full & (~a | b)
        elif op == "<->":
            a = extension(model, f.args[0], memo)
            b = extension(model, f.args[1], memo)
            if cls in INTUITIONISTIC:
                r = _intuitionistic_imp(n, succ, a, b) & _intuitionistic_imp(n, succ, b, a)
            else:
                r = full & ~(a ^ b)
        elif op == "box":
            a = extension(model, f.args[0], memo)
            r = 0
            for w in range(n):
                if not succ[w] & ~a:
                    r |= 1 << w
        elif op == "dia":
            a = extension(model, f.args[0], memo)
            r = 0
            for w in range(n):
                if succ[w] & a:
                    r |= 1 << w
        else:
            raise EvaluationError(f"Kripke semantics has no clause for {op}")
    else:
        raise EvaluationError(f"Kripke semantics cannot evaluate {f}")
    if memo is not None:
        memo[f] = r
    return r


_BOT = Const("bot")


def _intuitionistic_imp(n: int, succ, a: int, b: int) -> int:
    bad = a & ~b
    r = 0
    for w in range(n):
        if not succ[w] & bad:
            r |= 1 << w
    return r


class KripkeEngine:
    kind = "kripke"
    exact = False

    def __init__(self, frame_class: str):
        if frame_class not in FRAME_CLASSES:
            raise ValueError(f"unknown frame class {frame_class!r}")
        self.frame_class = frame_class
        self._spaces: dict = {}

    def keys(self, context: Sequence[Formula]) -> tuple[Formula, ...]:
        keys = tuple(atoms_of(context))
        if self.frame_class == "MIN":
            keys += (_BOT,)
        return keys

    def models_of_size(self, keys: tuple, n: int) -> Iterator[KripkeModel]:
        cls = self.frame_class
        for succ in frames(cls, n):
            sets = _valuation_sets(cls, n, succ)
            for combo in itertools.product(sets, repeat=len(keys)):
                yield KripkeModel(cls, n, succ, dict(zip(keys, combo)))

    def space(self, context: Sequence[Formula], size_bound: int) -> list[KripkeModel]:
        if size_bound < 1:
            raise ValueError("Kripke enumeration needs size_bound >= 1")
        keys = self.keys(context)
        cache_key = (keys, size_bound)
        try:
            return self._spaces[cache_key]
        except KeyError:
            pass
        models = [m for n in range(1, size_bound + 1) for m in self.models_of_size(keys, n)]
        if len(self._spaces) > 32:
            self._spaces.clear()
        self._spaces[cache_key] = models
        return models

    def iter_space(self, context: Sequence[Formula], size_bound: int) -> Iterator[KripkeModel]:
        keys = self.keys(context)
        for n in range(1, size_bound + 1):
            yield from self.models_of_size(keys, n)

    def points(self, model: KripkeModel) -> int:
        return (1 << model.n) - 1

    def truth(self, model: KripkeModel, f: Formula, memo: dict | None = None) -> int:
        return extension(model, f, memo)

    def value(self, model: KripkeModel, f: Formula) -> bool:
        return model.forced(f)

    def pointed(self, model: KripkeModel, point: int) -> KripkeModel:
        return model.at(point)

    def enumerate(self, context, size_bound):
        for m in self.iter_space(context, size_bound):
            for w in range(m.n):
                yield m.at(w)
