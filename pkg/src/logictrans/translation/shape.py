"""Syntactic shape classification of clause systems."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ..formula import Apply, placeholder_index
from .clauses import Clause, ClauseSystem


@dataclass(frozen=True)
class ShapeClass:
    literal_for: tuple[str, ...]
    single_translator: bool
    fixed_templates_only: bool
    parameter_free: bool
    atom_identity: bool
    general_recursive: bool
    gr_conditional_compositional: bool
    opaque: bool
    composite_keys: bool
    context_family: bool
    translator_count: int

    @property
    def compositional(self) -> bool:
        return (not self.opaque and self.single_translator and self.fixed_templates_only
                and not self.composite_keys and not self.context_family)

    @property
    def grammatical_shape(self) -> bool:
        """Compositional and parameter-free; grammaticality proper also
        needs a verified back-and-forth property."""
        return self.compositional and self.parameter_free

    @property
    def definitional_shape(self) -> bool:
        return self.grammatical_shape and self.atom_identity

    def named_classes(self) -> list[str]:
        names = []
        if self.opaque:
            names.append("opaque")
        if self.general_recursive:
            names.append("GR (extended)" if self.context_family else "general-recursive")
        if self.gr_conditional_compositional:
            names.append("GR^C")
        if self.compositional:
            names.append("compositional")
        if self.grammatical_shape:
            names.append("grammatical-shape")
        if self.definitional_shape:
            names.append("definitional-shape")
        return names

    def to_json(self) -> dict:
        out = asdict(self)
        out["literal_for"] = list(self.literal_for)
        out["compositional"] = self.compositional
        out["grammatical_shape"] = self.grammatical_shape
        out["definitional_shape"] = self.definitional_shape
        out["named"] = self.named_classes()
        return out


def is_literal(c: Clause, translator: str) -> bool:
    if len(c.key) != 1 or c.quantifier:
        return False
    body = c.template.body
    if not isinstance(body, Apply) or body.op != c.key[0]:
        return False
    n = len(body.args)
    if [placeholder_index(a) for a in body.args] != list(range(1, n + 1)):
        return False
    if any(r != "any" for r in c.ranges):
        return False
    return len(c.plan) == n and all(
        it.kind == "via" and it.translator == translator and it.operands == (i + 1,) and not it.shift
        for i, it in enumerate(c.plan))


def _compositional_clause(c: Clause, translator: str) -> bool:
    """Fixed template over the operands translated by ``translator`` itself."""
    if any(r != "any" for r in c.ranges):
        return False
    return all(it.kind == "via" and it.translator == translator for it in c.plan)


def classify_shape(cs: ClauseSystem) -> ShapeClass:
    if cs.opaque is not None:
        return ShapeClass((), True, False, False, False, False, False, True, False, False, 0)
    names = cs.reachable()
    trs = [cs.translators[n] for n in names]
    main = cs.main_translator
    conn = lambda t: [c for c in t.clauses if not c.quantifier]
    literal = sorted(c.key[0] for c in conn(main) if is_literal(c, main.name))
    if main.atom.kind == "identity":
        literal = ["atoms", *literal]
    fixed = all(t.atom.kind != "idx" and all(it.kind == "via" for c in conn(t) for it in c.plan) for t in trs)
    params = False
    for t in trs:
        if t.atom.kind == "template" and t.atom.template.parameters():
            params = True
        if any(c.template.parameters() for c in conn(t)):
            params = True
    composite = any(len(c.key) > 1 for t in trs for c in conn(t))
    context = any(t.context for t in trs)
    cond = main.clause("->")
    overridden = any(c.key[0] == "->" and len(c.key) > 1 for c in conn(main))
    grc = cond is not None and not overridden and _compositional_clause(cond, main.name)
    return ShapeClass(
        literal_for=tuple(literal),
        single_translator=len(names) == 1,
        fixed_templates_only=fixed,
        parameter_free=not params,
        atom_identity=main.atom.kind == "identity",
        general_recursive=True,
        gr_conditional_compositional=grc,
        opaque=False,
        composite_keys=composite,
        context_family=context,
        translator_count=len(names),
    )
