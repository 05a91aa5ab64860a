"""Relatedness models: a classical valuation plus a reflexive, symmetric
relation on atoms. An implication holds when it holds materially and its
antecedent shares a related atom with its consequent."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..formula import Apply, Atom, Formula, IndexedAtom, atoms, atoms_of, render
from .matrix import EvaluationError


@dataclass(frozen=True, eq=False)
class RelatednessModel:
    valuation: Mapping[Formula, bool]
    related: frozenset[tuple[Formula, Formula]]

    def __post_init__(self):
        for a, b in self.related:
            if (b, a) not in self.related:
                raise ValueError("relatedness relation must be symmetric")
        for a in self.valuation:
            if (a, a) not in self.related:
                raise ValueError("relatedness relation must be reflexive")

    def lifted(self, f: Formula, g: Formula) -> bool:
        """Some atom of ``f`` is related to some atom of ``g``."""
        return any((a, b) in self.related for a in atoms(f) for b in atoms(g))

    def value(self, f: Formula, memo: dict | None = None) -> bool:
        return relatedness_value(self, f, memo)

    def to_json(self) -> dict:
        pairs = sorted({tuple(sorted((render(a), render(b)))) for a, b in self.related if a != b})
        return {"kind": "relatedness",
                "valuation": {render(a): v for a, v in sorted(self.valuation.items(), key=lambda kv: render(kv[0]))},
                "related": [list(p) for p in pairs]}


def make_relatedness_model(valuation: Mapping[str, bool], related_pairs=()) -> RelatednessModel:
    """Model from atom names; ``related_pairs`` is closed under reflexivity and symmetry."""
    val = {Atom(k): bool(v) for k, v in valuation.items()}
    rel = {(a, a) for a in val}
    for x, y in related_pairs:
        rel |= {(Atom(x), Atom(y)), (Atom(y), Atom(x))}
    return RelatednessModel(val, frozenset(rel))


def relatedness_value(m: RelatednessModel, f: Formula, memo: dict | None = None) -> bool:
    if memo is not None:
        hit = memo.get(f)
        if hit is not None:
            return hit
    if isinstance(f, (Atom, IndexedAtom)):
        try:
            v = m.valuation[f]
        except KeyError:
            raise EvaluationError(f"atom {f} has no value") from None
    elif isinstance(f, Apply) and f.op == "not":
        v = not relatedness_value(m, f.args[0], memo)
    elif isinstance(f, Apply) and f.op == "and":
        v = relatedness_value(m, f.args[0], memo) and relatedness_value(m, f.args[1], memo)
    elif isinstance(f, Apply) and f.op == "->":
        a, b = f.args
        material = (not relatedness_value(m, a, memo)) or relatedness_value(m, b, memo)
        v = material and m.lifted(a, b)
    else:
        raise EvaluationError(f"relatedness semantics cannot evaluate {render(f)}")
    if memo is not None:
        memo[f] = v
    return v


class RelatednessEngine:
    kind = "relatedness"
    exact = True

    def __init__(self):
        self._spaces: dict = {}

    def space(self, context: Sequence[Formula], size_bound: int = 1) -> list[RelatednessModel]:
        atom_list = tuple(atoms_of(context))
        if not atom_list:
            raise ValueError("relatedness enumeration needs atoms in the context")
        try:
            return self._spaces[atom_list]
        except KeyError:
            pass
        pairs = list(itertools.combinations(atom_list, 2))
        refl = {(a, a) for a in atom_list}
        models = []
        for bits in itertools.product((False, True), repeat=len(atom_list)):
            val = dict(zip(atom_list, bits))
            for chosen in itertools.product((False, True), repeat=len(pairs)):
                rel = set(refl)
                for (a, b), on in zip(pairs, chosen):
                    if on:
                        rel |= {(a, b), (b, a)}
                models.append(RelatednessModel(val, frozenset(rel)))
        self._spaces[atom_list] = models
        return models

    def points(self, model) -> int:
        return 1

    def truth(self, model: RelatednessModel, f: Formula, memo=None) -> int:
        return 1 if relatedness_value(model, f, memo) else 0

    def value(self, model, f):
        return relatedness_value(model, f)

    def pointed(self, model, point):
        return model

    def enumerate(self, context, size_bound=1):
        yield from self.space(context, size_bound)
