"""Finite first-order structures with unary predicates and one binary relation."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from ..formula import Apply, Const, Formula, Pred, Quant, render
from .kripke import KripkeModel
from .matrix import EvaluationError


@dataclass(frozen=True, eq=False)
class FOStructure:
    domain: tuple[int, ...]
    predicates: Mapping[str, frozenset[int]]
    relation: frozenset[tuple[int, int]]
    relation_symbol: str = "R"

    def __post_init__(self):
        elems = set(self.domain)
        if not elems:
            raise ValueError("domain must be nonempty")
        for name, ext in self.predicates.items():
            if not set(ext) <= elems:
                raise ValueError(f"extension of {name} leaves the domain")
        if not all(a in elems and b in elems for a, b in self.relation):
            raise ValueError("relation leaves the domain")

    def to_json(self) -> dict:
        return {"kind": "fo", "domain": list(self.domain),
                "predicates": {k: sorted(v) for k, v in sorted(self.predicates.items())},
                "relation": sorted([list(p) for p in self.relation])}


@functools.lru_cache(maxsize=1 << 16)
def free_variables(f: Formula) -> frozenset[str]:
    if isinstance(f, Pred):
        return frozenset(f.variables)
    if isinstance(f, Quant):
        return free_variables(f.body) - {f.var}
    out: frozenset[str] = frozenset()
    for c in f.children:
        out |= free_variables(c)
    return out


def fol_evaluate(s: FOStructure, f: Formula, assignment: Mapping[str, int], memo: dict | None = None) -> bool:
    """Tarskian satisfaction of ``f`` in ``s`` under ``assignment``.

    ``memo`` may be shared across calls on the same structure; entries are
    keyed by the formula and the values of its free variables only.
    """
    free = free_variables(f)
    try:
        env = tuple(sorted((v, assignment[v]) for v in free))
    except KeyError as e:
        raise EvaluationError(f"free variable {e.args[0]} is unassigned in {render(f)}") from None
    if memo is not None:
        key = (f, env)
        hit = memo.get(key)
        if hit is not None:
            return hit
    if isinstance(f, Pred):
        vals = [assignment[v] for v in f.variables]
        if f.symbol == s.relation_symbol and len(vals) == 2:
            r = (vals[0], vals[1]) in s.relation
        elif len(vals) == 1:
            r = vals[0] in s.predicates.get(f.symbol, ())
        else:
            raise EvaluationError(f"unknown predicate {f.symbol}/{len(vals)}")
    elif isinstance(f, Quant):
        inner = dict(env)

        def holds(d):
            inner[f.var] = d
            return fol_evaluate(s, f.body, inner, memo)

        check = all if f.kind == "forall" else any
        r = check(holds(d) for d in s.domain)
    elif isinstance(f, Const):
        r = f.value == "top"
    elif isinstance(f, Apply):
        args = f.args
        if f.op == "not":
            r = not fol_evaluate(s, args[0], assignment, memo)
        elif f.op == "and":
            r = fol_evaluate(s, args[0], assignment, memo) and fol_evaluate(s, args[1], assignment, memo)
        elif f.op == "or":
            r = fol_evaluate(s, args[0], assignment, memo) or fol_evaluate(s, args[1], assignment, memo)
        elif f.op == "->":
            r = (not fol_evaluate(s, args[0], assignment, memo)) or fol_evaluate(s, args[1], assignment, memo)
        elif f.op == "<->":
            r = fol_evaluate(s, args[0], assignment, memo) == fol_evaluate(s, args[1], assignment, memo)
        else:
            raise EvaluationError(f"no first-order clause for {f.op}")
    else:
        raise EvaluationError(f"cannot evaluate {render(f)} in a first-order structure")
    if memo is not None:
        memo[key] = r
    return r


def predicate_name(atom_name: str) -> str:
    """Unary predicate symbol standing for a propositional atom."""
    return atom_name[:1].upper() + atom_name[1:]


def kripke_to_structure(m: KripkeModel, relation_symbol: str = "R") -> FOStructure:
    preds = {predicate_name(str(a)): frozenset(m.worlds_of(mask)) for a, mask in m.valuation.items()}
    return FOStructure(tuple(m.worlds), preds, m.access, relation_symbol)


class FOEngine:
    """Finite structures over a fixed vocabulary, for sentences.

    Unary predicates are read off the context; models are raw enumerations
    up to ``size_bound`` elements.
    """

    kind = "fo"
    exact = False

    def __init__(self, relation_symbol: str = "R"):
        self.relation_symbol = relation_symbol

    def vocabulary(self, context: Sequence[Formula]) -> list[str]:
        names = set()
        for f in context:
            stack = [f]
            while stack:
                g = stack.pop()
                if isinstance(g, Pred) and g.symbol != self.relation_symbol:
                    names.add(g.symbol)
                stack.extend(g.children)
        return sorted(names)

    def enumerate_structures(self, context, size_bound) -> Iterator[FOStructure]:
        preds = self.vocabulary(context)
        for n in range(1, size_bound + 1):
            dom = tuple(range(n))
            pairs = [(a, b) for a in dom for b in dom]
            for rbits in range(1 << len(pairs)):
                rel = frozenset(p for i, p in enumerate(pairs) if rbits >> i & 1)
                for exts in itertools.product(range(1 << n), repeat=len(preds)):
                    ext = {name: frozenset(d for d in dom if e >> d & 1) for name, e in zip(preds, exts)}
                    yield FOStructure(dom, ext, rel, self.relation_symbol)

    def space(self, context, size_bound):
        return list(self.enumerate_structures(context, size_bound))

    def points(self, model) -> int:
        return 1

    def truth(self, model, f, memo=None) -> int:
        return 1 if fol_evaluate(model, f, {}, memo) else 0

    def value(self, model, f):
        return fol_evaluate(model, f, {})

    def pointed(self, model, point):
        return model

    def enumerate(self, context, size_bound):
        yield from self.enumerate_structures(context, size_bound)
