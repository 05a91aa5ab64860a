"""Finite logical matrices: truth tables plus designated values."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from ..formula import Apply, Atom, Const, Formula, IndexedAtom, atoms_of


class EvaluationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MatrixSemantics:
    name: str
    values: tuple
    designated: frozenset
    tables: Mapping[str, Mapping[tuple, object]]
    constants: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if not self.designated or not set(self.designated) <= set(self.values):
            raise ValueError(f"{self.name}: designated values must be a nonempty subset of the values")
        for op, table in self.tables.items():
            arity = len(next(iter(table)))
            for args in itertools.product(self.values, repeat=arity):
                if args not in table:
                    raise ValueError(f"{self.name}: table for {op} undefined at {args}")

    @classmethod
    def from_functions(cls, name, values, designated, functions: Mapping[str, tuple[int, Callable]], constants=None):
        tables = {
            op: {args: fn(*args) for args in itertools.product(values, repeat=arity)}
            for op, (arity, fn) in functions.items()
        }
        return cls(name, tuple(values), frozenset(designated), tables, dict(constants or {}))


@dataclass(frozen=True, eq=False)
class MatrixModel:
    """A valuation of atoms into a matrix's truth values.

    ``valuation`` may be any mapping, including lazily computed ones.
    """

    semantics: MatrixSemantics
    valuation: Mapping[Formula, object]

    def value(self, f: Formula, memo: dict | None = None):
        return matrix_value(self.semantics, self.valuation, f, memo)

    def designates(self, f: Formula) -> bool:
        return self.value(f) in self.semantics.designated

    def restricted(self, atom_list) -> tuple:
        return tuple((str(a), self.valuation[a]) for a in atom_list)

    def to_json(self) -> dict:
        items = sorted(((str(a), v) for a, v in self.valuation.items()))
        return {"kind": "matrix", "matrix": self.semantics.name,
                "valuation": {k: format_value(v) for k, v in items}}


def format_value(v) -> str | int | bool:
    if isinstance(v, Fraction):
        return str(v)
    return v


def matrix_value(sem: MatrixSemantics, valuation: Mapping, f: Formula, memo: dict | None = None):
    if memo is not None:
        hit = memo.get(f)
        if hit is not None:
            return hit
    if isinstance(f, (Atom, IndexedAtom)):
        try:
            v = valuation[f]
        except KeyError:
            raise EvaluationError(f"atom {f} has no value") from None
    elif isinstance(f, Const):
        try:
            v = sem.constants[f.value]
        except KeyError:
            raise EvaluationError(f"{sem.name} has no constant {f.value}") from None
    elif isinstance(f, Apply):
        table = sem.tables.get(f.op)
        if table is None:
            raise EvaluationError(f"{sem.name} has no table for {f.op}")
        v = table[tuple(matrix_value(sem, valuation, a, memo) for a in f.args)]
    else:
        raise EvaluationError(f"{sem.name} cannot evaluate {f}")
    if memo is not None:
        memo[f] = v
    return v


class MatrixEngine:
    kind = "matrix"
    exact = True

    def __init__(self, semantics: MatrixSemantics):
        self.semantics = semantics
        self._spaces: dict = {}

    def space(self, context: Sequence[Formula], size_bound: int = 1) -> list[MatrixModel]:
        atom_list = tuple(atoms_of(context))
        try:
            return self._spaces[atom_list]
        except KeyError:
            pass
        sem = self.semantics
        models = [MatrixModel(sem, dict(zip(atom_list, combo)))
                  for combo in itertools.product(sem.values, repeat=len(atom_list))]
        if len(self._spaces) > 256:
            self._spaces.clear()
        self._spaces[atom_list] = models
        return models

    def points(self, model) -> int:
        return 1

    def truth(self, model: MatrixModel, f: Formula, memo: dict | None = None) -> int:
        return 1 if matrix_value(model.semantics, model.valuation, f, memo) in model.semantics.designated else 0

    def value(self, model: MatrixModel, f: Formula):
        return model.value(f)

    def pointed(self, model, point: int):
        return model

    def enumerate(self, context, size_bound=1):
        yield from self.space(context, size_bound)


# --------------------------------------------------------------------------
# Standard matrices
# --------------------------------------------------------------------------

HALF = Fraction(1, 2)


def classical_matrix() -> MatrixSemantics:
    return MatrixSemantics.from_functions(
        "CPL", (0, 1), {1},
        {
            "not": (1, lambda a: 1 - a),
            "and": (2, min),
            "or": (2, max),
            "->": (2, lambda a, b: max(1 - a, b)),
            "<->": (2, lambda a, b: int(a == b)),
        },
        {"top": 1, "bot": 0},
    )


def lukasiewicz3_matrix() -> MatrixSemantics:
    one, zero = Fraction(1), Fraction(0)
    return MatrixSemantics.from_functions(
        "L3", (zero, HALF, one), {one},
        {
            "not": (1, lambda a: one - a),
            "and": (2, min),
            "or": (2, max),
            "->": (2, lambda a, b: min(one, one - a + b)),
            "<->": (2, lambda a, b: min(one, one - abs(a - b))),
        },
        {"top": one, "bot": zero},
    )


def trivial_matrix() -> MatrixSemantics:
    return MatrixSemantics.from_functions(
        "Trivial", (1,), {1},
        {op: (n, lambda *a: 1) for op, n in (("not", 1), ("and", 2), ("or", 2), ("->", 2), ("<->", 2))},
        {"top": 1, "bot": 1},
    )
