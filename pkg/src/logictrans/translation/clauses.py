"""Translations as systems of mutually recursive clause-defined translators.

A translator maps atoms by its atom clause and compound formulas by the
clause whose key matches the formula's head. Keys may be composite
(``("not", "box")`` matches ``(not (box φ))``); the longest matching key
wins. A clause's template placeholders are filled by its operand plan:
``via`` items translate one operand with some translator, ``idx`` items
produce a fresh indexed atom for a tuple of (untranslated) operands.

Context families cover translations like the standard translation, where
each translator carries a current variable: templates may mention
``$cur`` and ``$next``, and plan items may move to the next context.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..formula import (Apply, Atom, Const, Formula, FormulaError, IndexedAtom, Pred, Quant, Template, indexed_atom,
                       neg, placeholder, placeholder_index, render, rename_variables, substitute, subformulas)

CUR, NEXT, BOUND = "$cur", "$next", "$var"


class TranslationError(ValueError):
    pass


@dataclass(frozen=True)
class PlanItem:
    """How one placeholder gets its value.

    ``kind == "via"``: translate operand ``operands[0]`` with ``translator``
    (in the next context when ``shift``). ``kind == "idx"``: the indexed atom
    ``base{operands...}`` built from the untranslated operands.
    """

    kind: str
    operands: tuple[int, ...]
    translator: str | None = None
    base: str | None = None
    shift: bool = False

    def __post_init__(self):
        if self.kind not in ("via", "idx"):
            raise ValueError(f"unknown plan item kind {self.kind!r}")
        if self.kind == "via" and (len(self.operands) != 1 or not self.translator):
            raise ValueError("a via item names one translator and one operand")
        if self.kind == "idx" and not self.base:
            raise ValueError("an idx item needs a base")

    def text(self) -> str:
        if self.kind == "via":
            return f"via {self.translator} {self.operands[0]}" + (" next" if self.shift else "")
        return f"idx {self.base} {','.join(map(str, self.operands))}"


def via(translator: str, operand: int, shift: bool = False) -> PlanItem:
    return PlanItem("via", (operand,), translator=translator, shift=shift)


def idx(base: str, *operands: int) -> PlanItem:
    return PlanItem("idx", tuple(operands), base=base)


@dataclass(frozen=True)
class Clause:
    key: tuple[str, ...]
    template: Template
    plan: tuple[PlanItem, ...]
    ranges: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.plan) < max(self.template.placeholders(), default=0):
            raise ValueError(f"clause {'.'.join(self.key)}: placeholder without a plan item")
        for r in self.ranges:
            if r not in ("any", "atom"):
                raise ValueError(f"unknown operand range {r!r}")

    @property
    def quantifier(self) -> bool:
        return self.key[0] in ("forall", "exists")

    @property
    def key_text(self) -> str:
        return ".".join(self.key)


@dataclass(frozen=True)
class AtomClause:
    kind: str = "identity"
    template: Template | None = None
    base: str | None = None

    def __post_init__(self):
        if self.kind not in ("identity", "template", "idx", "predicate"):
            raise ValueError(f"unknown atom clause {self.kind!r}")
        if self.kind == "template" and self.template is None:
            raise ValueError("template atom clause needs a template")
        if self.kind == "idx" and not self.base:
            raise ValueError("idx atom clause needs a base")

    def text(self) -> str:
        if self.kind == "template":
            return f"template {self.template}"
        if self.kind == "idx":
            return f"idx {self.base}"
        return self.kind


@dataclass(frozen=True)
class Translator:
    name: str
    atom: AtomClause = AtomClause()
    clauses: tuple[Clause, ...] = ()
    context: tuple[str, ...] | None = None

    def __post_init__(self):
        keys = [c.key for c in self.clauses]
        if len(set(keys)) != len(keys):
            raise ValueError(f"translator {self.name}: duplicate clause keys")

    def candidates(self, head: str) -> list[Clause]:
        """Clauses whose key starts with ``head``, longest key first."""
        found = [c for c in self.clauses if c.key[0] == head]
        return sorted(found, key=lambda c: -len(c.key))

    def clause(self, *key: str) -> Clause | None:
        for c in self.clauses:
            if c.key == key:
                return c
        return None


@dataclass(frozen=True)
class OpaqueRule:
    """A whole-formula rule with no inductive structure."""

    kind: str
    argument: object = None

    KINDS = ("double-negation", "index", "constant", "validity-enumeration")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown opaque rule {self.kind!r}")

    def text(self) -> str:
        if self.kind == "index":
            return f"index {self.argument}"
        if self.kind == "constant":
            return f"constant {render(self.argument)}"
        if self.kind == "validity-enumeration":
            return "validity-enumeration " + " ".join(f"{k}={v}" for k, v in self.argument)
        return self.kind


@dataclass(frozen=True, eq=False)
class ClauseSystem:
    name: str
    source: str
    target: str
    main: str
    translators: Mapping[str, Translator] = field(default_factory=dict)
    opaque: OpaqueRule | None = None
    requires_model_map: bool = False
    metadata: Mapping[str, object] = field(default_factory=dict)
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.opaque is None:
            if self.main not in self.translators:
                raise ValueError(f"{self.name}: main translator {self.main!r} is undefined")
            for t in self.translators.values():
                for c in t.clauses:
                    for item in c.plan:
                        if item.kind == "via" and item.translator not in self.translators:
                            raise ValueError(f"{self.name}: clause {c.key_text} refers to unknown translator {item.translator!r}")
                        arity_hint = max(item.operands)
                        if arity_hint < 1:
                            raise ValueError(f"{self.name}: operand indices start at 1")

    def __call__(self, f: Formula) -> Formula:
        return apply_translation(self, f)

    @property
    def main_translator(self) -> Translator:
        return self.translators[self.main]

    def reachable(self) -> list[str]:
        """Translators reachable from the main one, in discovery order."""
        if self.opaque is not None:
            return []
        seen = [self.main]
        i = 0
        while i < len(seen):
            t = self.translators[seen[i]]
            for c in t.clauses:
                for item in c.plan:
                    if item.kind == "via" and item.translator not in seen:
                        seen.append(item.translator)
            i += 1
        return seen

    def clause_count(self) -> int:
        return sum(len(self.translators[t].clauses) + 1 for t in self.reachable())


# --------------------------------------------------------------------------
# Application
# --------------------------------------------------------------------------


def _next_token(tr: Translator, token: str | None) -> str | None:
    if token is None or not tr.context:
        return token
    ctx = tr.context
    return ctx[(ctx.index(token) + 1) % len(ctx)]


def match(tr: Translator, f: Formula) -> tuple[Clause, tuple[Formula, ...]] | None:
    """Longest clause key matching ``f`` whose operand ranges accept it."""
    if isinstance(f, Apply):
        head = f.op
    elif isinstance(f, Quant):
        head = f.kind
    elif isinstance(f, Const):
        head = f.value
    else:
        return None
    for c in tr.candidates(head):
        operands = _match_key(c.key, f)
        if operands is None:
            continue
        if c.ranges and any(r == "atom" and not isinstance(operands[i], (Atom, IndexedAtom))
                            for i, r in enumerate(c.ranges) if i < len(operands)):
            continue
        return c, operands
    return None


def _match_key(key: tuple[str, ...], f: Formula) -> tuple[Formula, ...] | None:
    g = f
    for depth, sym in enumerate(key):
        if isinstance(g, Apply) and g.op == sym:
            if depth < len(key) - 1:
                if len(g.args) != 1:
                    return None
                g = g.args[0]
            else:
                return tuple(g.args)
        elif isinstance(g, Quant) and g.kind == sym and depth == len(key) - 1:
            return (g.body,)
        elif isinstance(g, Const) and g.value == sym and len(key) == 1:
            return ()
        else:
            return None
    return None


def _translate(cs: ClauseSystem, tname: str, f: Formula, token: str | None) -> Formula:
    memo_key = (tname, f, token)
    hit = cs._memo.get(memo_key)
    if hit is not None:
        return hit
    tr = cs.translators[tname]
    if isinstance(f, (Atom, IndexedAtom, Pred)):
        out = _translate_atom(tr, f, token)
    else:
        m = match(tr, f)
        if m is None:
            if isinstance(f, Const):
                out = f
            else:
                head = f.op if isinstance(f, Apply) else getattr(f, "kind", type(f).__name__)
                raise TranslationError(f"{cs.name}: translator {tname} has no clause for {head}")
        else:
            clause, operands = m
            args = []
            for item in clause.plan:
                if item.kind == "via":
                    i = item.operands[0]
                    if i > len(operands):
                        raise TranslationError(f"{cs.name}: clause {clause.key_text} has no operand {i}")
                    nxt = _next_token(tr, token) if item.shift else token
                    args.append(_translate(cs, item.translator, operands[i - 1], nxt))
                else:
                    args.append(indexed_atom(item.base, [operands[i - 1] for i in item.operands]))
            body = clause.template.body
            if tr.context or clause.quantifier:
                ren = {}
                if token is not None:
                    ren = {CUR: token, NEXT: _next_token(tr, token)}
                if isinstance(f, Quant):
                    ren[BOUND] = f.var
                body = rename_variables(body, ren)
            out = substitute(body, args)
    if len(cs._memo) > 200_000:
        cs._memo.clear()
    cs._memo[memo_key] = out
    return out


def _translate_atom(tr: Translator, f: Formula, token: str | None) -> Formula:
    a = tr.atom
    if a.kind == "identity":
        return f
    if a.kind == "template":
        body = a.template.body
        if token is not None:
            body = rename_variables(body, {CUR: token, NEXT: _next_token(tr, token)})
        return substitute(body, [f])
    if a.kind == "idx":
        return indexed_atom(a.base, [f])
    if isinstance(f, Pred):
        return f
    name = render(f)
    return Pred(name[:1].upper() + name[1:], [token or "x"])


def _opaque_image(cs: ClauseSystem, f: Formula) -> Formula:
    rule = cs.opaque
    if rule.kind == "double-negation":
        return neg(neg(f))
    if rule.kind == "index":
        return indexed_atom(str(rule.argument), [f])
    if rule.kind == "constant":
        return rule.argument
    from .enumerative import validity_enumeration_image
    return validity_enumeration_image(dict(rule.argument), f)


def apply_translation(cs: ClauseSystem, f: Formula, context: str | None = None) -> Formula:
    """Image of ``f``; ``context`` picks the starting token of a context family."""
    if cs.opaque is not None:
        return _opaque_image(cs, f)
    tr = cs.main_translator
    if tr.context and context is None:
        context = tr.context[0]
    return _translate(cs, cs.main, f, context)


def image_size_constant(cs: ClauseSystem) -> int:
    """Per-system constant ``C`` with ``|T(φ)| <= C * |φ|`` for non-opaque systems.

    Each source node contributes at most one template's worth of nodes per
    translator, and each translator may be invoked on each node once, so
    ``C`` = (number of reachable translators) × (largest template node count,
    counting an idx atom as one node).
    """
    if cs.opaque is not None:
        raise TranslationError(f"{cs.name} is opaque")
    names = cs.reachable()
    biggest = 1
    for n in names:
        tr = cs.translators[n]
        if tr.atom.kind == "template":
            biggest = max(biggest, tr.atom.template.body.size)
        for c in tr.clauses:
            biggest = max(biggest, c.template.body.size)
    return len(names) * biggest


def literal_clause(symbol: str, arity: int, translator: str) -> Clause:
    body = Apply(symbol, [placeholder(i) for i in range(1, arity + 1)])
    return Clause((symbol,), Template(body, arity), tuple(via(translator, i) for i in range(1, arity + 1)))
