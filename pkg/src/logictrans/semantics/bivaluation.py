"""Bivaluations over subformula closures, used for half-negation logic.

A model assigns T/F to every member of a subformula-closed domain.
Conjunction, disjunction and implication follow the classical clauses; a
negation may only be true when its operand is false (but need not be).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from ..formula import Apply, Atom, Const, Formula, IndexedAtom, canonical_key, render, subformula_closure
from .matrix import EvaluationError

CLASSICAL = {
    "and": lambda a, b: a and b,
    "or": lambda a, b: a or b,
    "->": lambda a, b: (not a) or b,
    "<->": lambda a, b: a == b,
}


@dataclass(frozen=True, eq=False)
class BivaluationModel:
    domain: tuple[Formula, ...]
    assignment: Mapping[Formula, bool]

    def value(self, f: Formula) -> bool:
        try:
            return self.assignment[f]
        except KeyError:
            raise EvaluationError(f"{render(f)} is outside the model's domain") from None

    def atom_valuation(self) -> dict[Formula, bool]:
        return {f: v for f, v in self.assignment.items() if isinstance(f, (Atom, IndexedAtom))}

    def to_json(self) -> dict:
        return {"kind": "bivaluation",
                "assignment": {render(f): self.assignment[f] for f in self.domain}}


def satisfies_constraints(assignment: Mapping[Formula, bool]) -> bool:
    for f, v in assignment.items():
        if isinstance(f, Const):
            if v != (f.value == "top"):
                return False
        elif isinstance(f, Apply):
            if f.op == "not":
                if v and assignment[f.args[0]]:
                    return False
            elif f.op in CLASSICAL:
                if v != CLASSICAL[f.op](*(assignment[a] for a in f.args)):
                    return False
            else:
                return False
    return True


def enumerate_bivaluations(context: Sequence[Formula]) -> Iterator[BivaluationModel]:
    """All constraint-satisfying assignments on the closure of ``context``.

    Members are decided in canonical order (operands before compounds), so
    the only branching points are atoms and negations of false operands.
    Models come out in lexicographic order of their assignment vectors with
    F before T.
    """
    domain = tuple(subformula_closure(context))
    for f in domain:
        if isinstance(f, Apply) and f.op != "not" and f.op not in CLASSICAL:
            raise EvaluationError(f"bivaluation semantics has no clause for {f.op}")
    assignment: dict[Formula, bool] = {}

    def go(i: int):
        if i == len(domain):
            yield BivaluationModel(domain, dict(assignment))
            return
        f = domain[i]
        if isinstance(f, (Atom, IndexedAtom)):
            choices = (False, True)
        elif isinstance(f, Const):
            choices = (f.value == "top",)
        elif f.op == "not":
            choices = (False,) if assignment[f.args[0]] else (False, True)
        else:
            choices = (CLASSICAL[f.op](*(assignment[a] for a in f.args)),)
        for c in choices:
            assignment[f] = c
            yield from go(i + 1)
        del assignment[f]

    yield from go(0)


class BivaluationEngine:
    kind = "bivaluation"
    exact = True

    def __init__(self, constraint: str = "half-negation"):
        self.constraint = constraint
        self._spaces: dict = {}

    def space(self, context: Sequence[Formula], size_bound: int = 1) -> list[BivaluationModel]:
        if not context:
            raise ValueError("bivaluation enumeration needs a nonempty context")
        key = tuple(sorted(set(context), key=canonical_key))
        try:
            return self._spaces[key]
        except KeyError:
            pass
        models = list(enumerate_bivaluations(key))
        if len(self._spaces) > 4096:
            self._spaces.clear()
        self._spaces[key] = models
        return models

    def points(self, model) -> int:
        return 1

    def truth(self, model: BivaluationModel, f: Formula, memo=None) -> int:
        return 1 if model.value(f) else 0

    def value(self, model: BivaluationModel, f: Formula) -> bool:
        return model.value(f)

    def pointed(self, model, point: int):
        return model

    def enumerate(self, context, size_bound=1):
        yield from self.space(context, size_bound)
