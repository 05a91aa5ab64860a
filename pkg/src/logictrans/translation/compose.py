"""Clause fusion: a clause system computing ``t2 ∘ t1``.

Composed translators are pairs ``(B, A)`` with ``B`` from ``t2`` and ``A``
from ``t1``; ``B∘A`` maps φ to ``B(A(φ))``. Each clause of ``A`` is fused by
running ``B`` symbolically over ``A``'s template: a placeholder standing for
``A_i(φ_j)`` becomes a placeholder standing for ``(B∘A_i)(φ_j)``. Fusion is
refused when ``B`` would have to look inside a placeholder (composite keys
or atom ranges on unknown operands) or when a context family is involved.
"""

from __future__ import annotations

from ..formula import Apply, Atom, Const, Formula, IndexedAtom, Template, placeholder, placeholder_index, substitute
from .clauses import AtomClause, Clause, ClauseSystem, PlanItem, TranslationError, Translator, _translate_atom

MODES = ("surjective", "weakened")


def pair_name(b: str, a: str) -> str:
    return f"{b}∘{a}"


class _Fuser:
    def __init__(self, t1: ClauseSystem, t2: ClauseSystem):
        self.t1, self.t2 = t1, t2
        self.queue: list[tuple[str, str]] = []
        self.done: dict[str, Translator] = {}

    def want(self, b: str, a: str) -> str:
        name = pair_name(b, a)
        if name not in self.done and (b, a) not in self.queue:
            self.queue.append((b, a))
        return name

    def run(self, b: str, a: str) -> dict[str, Translator]:
        self.want(b, a)
        while self.queue:
            pair = self.queue.pop(0)
            name = pair_name(*pair)
            if name in self.done:
                continue
            self.done[name] = self.fuse(*pair)
        return self.done

    def fuse(self, bname: str, aname: str) -> Translator:
        B = self.t2.translators[bname]
        A = self.t1.translators[aname]
        if A.context or B.context:
            raise TranslationError("composition of context-family translators is not supported")
        atom = self.fuse_atom(B, A)
        clauses = []
        for c in A.clauses:
            if c.quantifier:
                continue
            items: list[PlanItem] = []
            slots: dict[tuple[int, str], Formula] = {}

            def leaf(i: int, tname: str, c=c, items=items, slots=slots) -> Formula:
                if (i, tname) in slots:
                    return slots[i, tname]
                item = c.plan[i - 1]
                if item.kind == "via":
                    items.append(PlanItem("via", item.operands, translator=self.want(tname, item.translator)))
                    out = placeholder(len(items))
                else:
                    # an indexed atom: the second stage reads it with its atom clause
                    items.append(item)
                    out = placeholder(len(items))
                    T = self.t2.translators[tname]
                    if T.atom.kind == "template":
                        out = substitute(T.atom.template.body, [out])
                    elif T.atom.kind != "identity":
                        raise TranslationError(f"cannot fuse: {tname} re-indexes indexed atoms")
                slots[i, tname] = out
                return out

            body = self.apply_symbolic(B, c.template.body, leaf)
            clauses.append(Clause(c.key, Template(body, len(items)), tuple(items), c.ranges))
        return Translator(pair_name(bname, aname), atom, tuple(clauses))

    def fuse_atom(self, B: Translator, A: Translator) -> AtomClause:
        probe = Atom("#1")
        if A.atom.kind == "identity":
            inner = probe
        elif A.atom.kind == "template":
            inner = A.atom.template.body
        else:
            if B.atom.kind == "identity":
                return A.atom
            raise TranslationError("cannot fuse an indexing atom clause with a non-identity one")
        if B.atom.kind == "idx":
            if inner == probe:
                return B.atom
            raise TranslationError("cannot fuse: indexing atom clause under a template")
        if B.atom.kind == "predicate":
            raise TranslationError("composition of context-family translators is not supported")
        body = self.apply_symbolic(B, inner, None, atom_probe=True)
        if body == probe:
            return AtomClause("identity")
        return AtomClause("template", Template(body, 1))

    def apply_symbolic(self, B: Translator, f: Formula, leaf, atom_probe: bool = False) -> Formula:
        """``B`` applied to template ``f``; placeholders resolved by ``leaf``."""
        i = placeholder_index(f)
        if i is not None and not atom_probe:
            return leaf(i, B.name)
        if isinstance(f, (Atom, IndexedAtom)):
            return _translate_atom(B, f, None)
        if isinstance(f, Const):
            c = B.clause(f.value)
            return c.template.body if c is not None else f
        if not isinstance(f, Apply):
            raise TranslationError(f"cannot fuse over {f!r}")
        cands = B.candidates(f.op)
        chosen = None
        for c in cands:
            operands = self._symbolic_match(c.key, f, atom_probe)
            if operands is None:
                continue
            if c.ranges and any(r == "atom" for r in c.ranges):
                for k, r in enumerate(c.ranges):
                    if r == "atom" and k < len(operands):
                        o = operands[k]
                        if placeholder_index(o) is not None and not atom_probe:
                            raise TranslationError(f"cannot fuse: clause {c.key_text} needs to know whether a placeholder is an atom")
                if any(r == "atom" and k < len(operands) and not isinstance(operands[k], (Atom, IndexedAtom))
                       for k, r in enumerate(c.ranges)):
                    continue
            chosen = (c, operands)
            break
        if chosen is None:
            raise TranslationError(f"cannot fuse: no clause of {B.name} for {f.op}")
        c, operands = chosen
        args = []
        for item in c.plan:
            if item.kind == "via":
                sub = self.t2.translators[item.translator]
                args.append(self.apply_symbolic(sub, operands[item.operands[0] - 1], leaf, atom_probe))
            else:
                raise TranslationError(f"cannot fuse: {B.name} indexes compound operands")
        return substitute(c.template.body, args)

    def _symbolic_match(self, key, f, atom_probe):
        g = f
        for depth, sym in enumerate(key):
            if placeholder_index(g) is not None and not atom_probe:
                raise TranslationError(f"cannot fuse: composite key {'.'.join(key)} would inspect a placeholder")
            if isinstance(g, Apply) and g.op == sym:
                if depth < len(key) - 1:
                    if len(g.args) != 1:
                        return None
                    g = g.args[0]
                else:
                    return tuple(g.args)
            else:
                return None
        return None


def compose_translations(t1: ClauseSystem, t2: ClauseSystem, mode: str = "surjective", name: str | None = None) -> ClauseSystem:
    """Clause system for ``t2 ∘ t1`` (apply ``t1`` first)."""
    if mode not in MODES:
        raise ValueError(f"unknown composition mode {mode!r}")
    if t1.target != t2.source:
        raise TranslationError(f"signature mismatch: {t1.name} targets {t1.target}, {t2.name} reads {t2.source}")
    if t1.opaque is not None or t2.opaque is not None:
        raise TranslationError("opaque translations cannot be composed clause-wise")
    fuser = _Fuser(t1, t2)
    translators = fuser.run(t2.main, t1.main)
    meta = {
        "composition": {"mode": mode, "first": t1.name, "second": t2.name,
                        "back_scope": "full" if mode == "surjective" else "intersected range"},
    }
    return ClauseSystem(
        name or pair_name(t2.name, t1.name), t1.source, t2.target, pair_name(t2.main, t1.main), translators,
        requires_model_map=t1.requires_model_map or t2.requires_model_map, metadata=meta,
    )
