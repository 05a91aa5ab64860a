"""Logics given only by a consequence relation over a fixed finite formula set."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from ..formula import Formula, canonical_order, render
from .matrix import EvaluationError


@dataclass(frozen=True, eq=False)
class ExplicitConsequence:
    """``Γ ⊢ φ`` iff ``φ ∈ Γ`` or some base pair ``(Δ, φ)`` has ``Δ ⊆ Γ``.

    The closure under reflexivity and monotony is built in, so the relation
    is Tarskian over ``formulas`` by construction.
    """

    formulas: tuple[Formula, ...]
    base: tuple[tuple[frozenset[Formula], Formula], ...] = ()

    def __post_init__(self):
        known = set(self.formulas)
        for prem, concl in self.base:
            if not (set(prem) | {concl}) <= known:
                raise ValueError("base pair mentions a formula outside the formula set")

    def entails(self, premises: Iterable[Formula], conclusion: Formula) -> bool:
        gamma = frozenset(premises)
        known = set(self.formulas)
        if not (gamma | {conclusion}) <= known:
            outside = sorted(render(f) for f in (gamma | {conclusion}) - known)
            raise EvaluationError(f"formulas outside the logic: {', '.join(outside)}")
        if conclusion in gamma:
            return True
        return any(concl == conclusion and prem <= gamma for prem, concl in self.base)

    def premise_sets(self, max_size: int | None = None) -> list[frozenset[Formula]]:
        fs = canonical_order(self.formulas)
        top = len(fs) if max_size is None else min(max_size, len(fs))
        return [frozenset(c) for k in range(top + 1) for c in combinations(fs, k)]

    def pairs(self) -> list[tuple[frozenset[Formula], Formula]]:
        """The full relation as explicit (premise-set, conclusion) pairs."""
        return [(g, f) for g in self.premise_sets() for f in canonical_order(self.formulas) if self.entails(g, f)]


class ExplicitEngine:
    kind = "explicit"
    exact = True

    def __init__(self, relation: ExplicitConsequence):
        self.relation = relation

    def entails(self, premises: Sequence[Formula], conclusion: Formula) -> bool:
        return self.relation.entails(premises, conclusion)
