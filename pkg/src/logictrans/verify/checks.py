"""Semantic property checkers.

Each checker returns a :class:`CheckEntry`. Refutations carry the first
witness in canonical order (formulas by size then text, models in
enumeration order), so reports are reproducible.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from ..formula import (Atom, Formula, Template, atoms_of, canonical_order, enumerate_formulas, imp, placeholder,
                       render, subformula_closure, substitute)
from ..semantics import REFUTED, SKIPPED, VALID_BOUNDED, VALID_EXACT, GuardError, LogicSpec, ModelMap
from ..semantics.logic import shares_space
from ..translation import ClauseSystem, TranslationError, apply_translation, classify_shape
from .oracle import Oracle
from .report import CheckEntry, VerificationError, exactness, formula_witness, make_entry, model_witness

DEFAULT_ATOMS = ("p", "q")


def source_formulas(logic: LogicSpec, atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 3) -> list[Formula]:
    """The bounded formula universe of ``logic``."""
    if logic.kind == "explicit":
        return canonical_order(logic.engine.relation.formulas)
    return list(enumerate_formulas(logic.signature, list(atoms), max_nodes))


def default_pool(logic: LogicSpec, atoms: Sequence[str] = DEFAULT_ATOMS) -> list[Formula]:
    """Atoms, a negated atom, one binary compound and a nested conditional, as the signature allows."""
    if logic.kind == "explicit":
        return canonical_order(logic.engine.relation.formulas)
    a = [Atom(x) for x in atoms]
    pool = list(a)
    sig = logic.signature
    if sig.arity("not") == 1:
        pool.append(_apply("not", a[0]))
    if len(a) > 1:
        for op in ("->", "and", "or"):
            if sig.arity(op) == 2:
                pool.append(_apply(op, a[0], a[1]))
                break
        if sig.arity("->") == 2:
            pool.append(imp(a[0], imp(a[0], a[1])))
    return pool


def _apply(op, *args):
    from ..formula import Apply
    return Apply(op, args)


def _bounds(logic: LogicSpec, size_bound, **extra) -> dict:
    out = {k: (list(v) if isinstance(v, tuple) else v) for k, v in extra.items() if v is not None}
    if logic.kind in ("kripke", "fo"):
        out["max_model_size"] = logic.bound(size_bound)
    return out


def _subsets(pool: Sequence[Formula], max_size: int) -> list[tuple[Formula, ...]]:
    pool = list(dict.fromkeys(pool))
    return [c for k in range(min(max_size, len(pool)) + 1) for c in itertools.combinations(pool, k)]


# --------------------------------------------------------------------------
# Truth preservation
# --------------------------------------------------------------------------


def verify_truth_preservation(t: ClauseSystem, mm: ModelMap | None, source: LogicSpec, target: LogicSpec, *,
                              atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 4, size_bound: int | None = None,
                              formulas: Sequence[Formula] | None = None) -> CheckEntry:
    """``m ⊨ φ`` iff ``map(m) ⊨ t(φ)`` over the bounded models and formulas.

    With ``direction`` source->target the map sends source models forward;
    otherwise target models are sent back to the source.
    """
    if mm is None:
        raise VerificationError("truth-preservation requires a model map")
    start = time.perf_counter()
    fs = list(formulas) if formulas is not None else source_formulas(source, atoms, max_nodes)
    images = [apply_translation(t, f) for f in fs]
    forward = mm.direction.startswith("source")
    bounds = _bounds(source if forward else target, size_bound, atoms=tuple(atoms), max_nodes=max_nodes,
                     formulas=len(fs))
    subject = f"{t.name} with {mm.name}"
    details = {"orientation": mm.direction, "formulas": len(fs)}
    if forward:
        pairs = [(fs, images)]
        walk, back = source, target
    else:
        pairs = [(fs, images)] if shares_space(target) else [([f], [g]) for f, g in zip(fs, images)]
        walk, back = target, source
    checked = 0
    for src_ctx, img_ctx in pairs:
        ctx = src_ctx if forward else img_ctx
        for m in walk.engine.space(ctx, walk.bound(size_bound)):
            try:
                image = mm(m, src_ctx if not forward else ())
            except GuardError as e:
                return make_entry("truth-preservation", subject, REFUTED, start, bounds=bounds,
                                  witnesses=[model_witness(m, "guard-violation")],
                                  reason=f"model map guard violated: {e}", details=details)
            m_memo, i_memo = {}, {}
            for f, g in zip(src_ctx, img_ctx):
                here = walk.engine.truth(m, f if forward else g, m_memo)
                there = back.engine.truth(image, g if forward else f, i_memo)
                checked += 1
                if here != there:
                    bit = here ^ there
                    point = (bit & -bit).bit_length() - 1
                    return make_entry(
                        "truth-preservation", subject, REFUTED, start, bounds=bounds,
                        witnesses=[formula_witness(formula=f, image=g),
                                   model_witness(walk.engine.pointed(m, point), "model"),
                                   model_witness(back.engine.pointed(image, point), "mapped-model")],
                        reason="truth value differs between a model and its image", details=details)
    details["comparisons"] = checked
    status = exactness(walk)
    return make_entry("truth-preservation", subject, status, start, bounds=bounds, details=details)


# --------------------------------------------------------------------------
# Theoremhood and conservativity
# --------------------------------------------------------------------------


class _AtomGroups:
    """Validity oracles, one per atom set, so a formula only meets its own atoms."""

    def __init__(self, logic: LogicSpec, formulas: Sequence[Formula], size_bound):
        self.logic, self.size_bound = logic, size_bound
        self.groups: dict = {}
        for f in formulas:
            self.groups.setdefault(frozenset(atoms_of([f])), []).append(f)
        self.oracles: dict = {}

    def counter(self, f: Formula):
        key = frozenset(atoms_of([f]))
        o = self.oracles.get(key)
        if o is None:
            o = self.oracles[key] = Oracle(self.logic, self.groups.get(key, [f]), self.size_bound)
        return o.counter([], f)


def verify_theoremhood(t: ClauseSystem, source: LogicSpec, target: LogicSpec, *, atoms: Sequence[str] = DEFAULT_ATOMS,
                       max_nodes: int = 4, size_bound: int | None = None,
                       formulas: Sequence[Formula] | None = None) -> CheckEntry:
    """``⊢ φ`` iff ``⊢ t(φ)`` for every bounded source formula."""
    start = time.perf_counter()
    subject = t.name
    fs = list(formulas) if formulas is not None else source_formulas(source, atoms, max_nodes)
    bounds = {"atoms": list(atoms), "max_nodes": max_nodes, "formulas": len(fs)}
    if source.kind == "syntax" or target.kind == "syntax":
        return make_entry("theoremhood", subject, SKIPPED, start, bounds=bounds,
                          reason="an endpoint is syntax-only")
    if target.kind == "fo":
        return make_entry("theoremhood", subject, SKIPPED, start, bounds=bounds,
                          reason="first-order target: validity of open formulas is not decided here")
    images = [apply_translation(t, f) for f in fs]
    if source.kind in ("kripke", "fo"):
        bounds["source_model_size"] = source.bound(size_bound)
    if target.kind in ("kripke", "fo"):
        bounds["target_model_size"] = target.bound(size_bound)
    so, to = _AtomGroups(source, fs, size_bound), _AtomGroups(target, images, size_bound)
    for f, g in zip(fs, images):
        cs, ct = so.counter(f), to.counter(g)
        if (cs is None) != (ct is None):
            side = "source" if cs is not None else "target"
            wit = [formula_witness(formula=f, image=g, source_valid=cs is None, target_valid=ct is None)]
            if not isinstance(cs or ct, str):
                wit.append(model_witness(cs if cs is not None else ct, f"{side}-countermodel"))
            return make_entry("theoremhood", subject, REFUTED, start, bounds=bounds, witnesses=wit,
                              reason=f"{render(f)} is {'valid' if cs is None else 'not valid'} but its image is "
                                     f"{'valid' if ct is None else 'not valid'}")
    return make_entry("theoremhood", subject, exactness(source, target), start, bounds=bounds)


def verify_conservativity(t: ClauseSystem, source: LogicSpec, target: LogicSpec, *,
                          pool: Sequence[Formula] | None = None, conclusions: Sequence[Formula] | None = None,
                          max_premises: int = 3, atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 3,
                          size_bound: int | None = None) -> CheckEntry:
    """``Γ ⊢ φ`` iff ``t(Γ) ⊢ t(φ)`` for ``Γ ⊆ pool`` with ``|Γ| <= max_premises``."""
    start = time.perf_counter()
    subject = t.name
    pool = list(pool) if pool is not None else default_pool(source, atoms)
    concl = list(conclusions) if conclusions is not None else source_formulas(source, atoms, max_nodes)
    bounds = {"pool": [render(f) for f in pool], "max_premises": max_premises, "conclusions": len(concl),
              "atoms": list(atoms), "max_nodes": max_nodes}
    for lg, role in ((source, "source"), (target, "target")):
        if lg.consequence_mode != "full":
            return make_entry("conservativity", subject, SKIPPED, start, bounds=bounds,
                              reason=f"{role} {lg.name} is theoremhood-only")
        if lg.kind == "syntax":
            return make_entry("conservativity", subject, SKIPPED, start, bounds=bounds,
                              reason=f"{role} {lg.name} is syntax-only")
    if target.kind == "bivaluation":
        return make_entry("conservativity", subject, SKIPPED, start, bounds=bounds,
                          reason="deferred: multi-premise consequence of the bivaluation target is a convention")
    sets = _subsets(pool, max_premises)
    img = {f: apply_translation(t, f) for f in dict.fromkeys([*pool, *concl])}
    so = Oracle(source, list(img), size_bound)
    to = Oracle(target, list(img.values()), size_bound)
    grid = so.grid and to.grid
    for gamma in sets:
        if grid:
            gs, gt = so.premises_mask(gamma), to.premises_mask([img[g] for g in gamma])
        for c in concl:
            if grid:
                a, b = so.entails_mask(gs, c), to.entails_mask(gt, img[c])
            else:
                a, b = so.entails(gamma, c), to.entails([img[g] for g in gamma], img[c])
            if a != b:
                side = so if not a else to
                prem = list(gamma) if not a else [img[g] for g in gamma]
                cm = side.counter(prem, c if not a else img[c])
                wit = [formula_witness(premises=list(gamma), conclusion=c, image_premises=[img[g] for g in gamma],
                                       image_conclusion=img[c], source_entails=a, target_entails=b)]
                if cm is not None and not isinstance(cm, str):
                    wit.append(model_witness(cm, ("source" if not a else "target") + "-countermodel"))
                return make_entry("conservativity", subject, REFUTED, start, bounds=bounds, witnesses=wit,
                                  reason="consequence not preserved in both directions")
    return make_entry("conservativity", subject, exactness(source, target), start, bounds=bounds)


# --------------------------------------------------------------------------
# Sub-logic witnesses
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GvWitness:
    """A translation, a map from target models back to source models, and a guard.

    ``theta`` is a formula sequence or, with ``contextual``, a function from
    the checked source formulas (a subformula-closed set) to the guard.
    """

    translation: ClauseSystem
    model_map: ModelMap
    theta: Sequence[Formula] | Callable
    contextual: bool = False

    def guard(self, context: Sequence[Formula]) -> list[Formula]:
        return list(self.theta(context) if callable(self.theta) else self.theta)

    def with_theta(self, theta) -> "GvWitness":
        return GvWitness(self.translation, self.model_map, theta, False)


def _profile(engine, model, formulas, memo=None) -> tuple:
    memo = {} if memo is None else memo
    return tuple(engine.truth(model, f, memo) for f in formulas)


def verify_gv_sublogic(w: GvWitness, source: LogicSpec, target: LogicSpec, *, atoms: Sequence[str] = DEFAULT_ATOMS,
                       max_nodes: int = 3, size_bound: int | None = None,
                       formulas: Sequence[Formula] | None = None) -> CheckEntry:
    """Both sub-logic conditions within bounds.

    (a) every enumerated source model agrees, on every checked formula, with
    the image of some θ-satisfying target model; (b) every θ-satisfying
    target model satisfies ``t(φ)`` exactly when its image satisfies ``φ``.
    """
    start = time.perf_counter()
    t, mm = w.translation, w.model_map
    subject = f"{t.name} with {mm.name}"
    fs = list(formulas) if formulas is not None else source_formulas(source, atoms, max_nodes)
    bounds = {"atoms": list(atoms), "max_nodes": max_nodes, "formulas": len(fs)}
    if w.contextual:
        contexts = list(dict.fromkeys(tuple(subformula_closure([f])) for f in fs))
    else:
        contexts = [tuple(fs)]
    details = {"contexts": len(contexts), "theta_models": 0, "source_models": 0}
    images_all = {}
    for ctx in contexts:
        images = [apply_translation(t, f) for f in ctx]
        images_all.update(zip(ctx, images))
        theta = w.guard(ctx)
        tgt_models = target.engine.space([*images, *theta], target.bound(size_bound))
        hits = set()
        for m in tgt_models:
            memo = {}
            if not all(target.engine.truth(m, th, memo) == target.engine.points(m) for th in theta):
                continue
            details["theta_models"] += 1
            try:
                image = mm(m, ctx)
            except GuardError as e:
                return make_entry("gv-sublogic", subject, REFUTED, start, bounds=bounds,
                                  witnesses=[model_witness(m, "theta-model")],
                                  reason=f"condition (b): map undefined on a θ-model ({e})",
                                  details={**details, "a": "unknown", "b": "fail"})
            imemo = {}
            for f, g in zip(ctx, images):
                if target.engine.truth(m, g, memo) != source.engine.truth(image, f, imemo):
                    return make_entry("gv-sublogic", subject, REFUTED, start, bounds=bounds,
                                      witnesses=[formula_witness(formula=f, image=g), model_witness(m, "theta-model"),
                                                 model_witness(image, "mapped-model")],
                                      reason="condition (b): truth differs between a θ-model and its image",
                                      details={**details, "a": "unknown", "b": "fail"})
            hits.add(_profile(source.engine, image, ctx, imemo))
        for sm in source.engine.space(list(ctx), source.bound(size_bound)):
            details["source_models"] += 1
            if _profile(source.engine, sm, ctx) not in hits:
                reason = ("condition (a): no θ-model exists" if not details["theta_models"]
                          else "condition (a): a source model is not the image of any θ-model")
                return make_entry("gv-sublogic", subject, REFUTED, start, bounds=bounds,
                                  witnesses=[model_witness(sm, "unreached-source-model"),
                                             formula_witness(theta=theta)],
                                  reason=reason, details={**details, "a": "fail", "b": "pass"})
    details.update(a="pass", b="pass")
    imgs = [images_all[f] for f in fs if f in images_all]
    details["injective"] = len(set(imgs)) == len(imgs)
    return make_entry("gv-sublogic", subject, exactness(source, target), start, bounds=bounds, details=details)


# --------------------------------------------------------------------------
# Deduction theorems
# --------------------------------------------------------------------------


def _dt_scan(oracle: Oracle, pool, formulas, alpha: Callable[[Formula, Formula], Formula], max_premises: int,
             lhs_cache: dict | None = None):
    """First ``(Γ, φ, ψ)`` where ``Γ,φ ⊨ ψ`` and ``Γ ⊨ α(φ,ψ)`` disagree."""
    for gamma in _subsets(pool, max_premises):
        gm = oracle.premises_mask(gamma) if oracle.grid else None
        for phi in formulas:
            gpm = (gm & oracle.mask(phi)) if oracle.grid else None
            for psi in formulas:
                key = (gamma, phi, psi)
                if lhs_cache is not None and key in lhs_cache:
                    lhs = lhs_cache[key]
                else:
                    lhs = oracle.entails_mask(gpm, psi) if oracle.grid else oracle.entails([*gamma, phi], psi)
                    if lhs_cache is not None:
                        lhs_cache[key] = lhs
                a = alpha(phi, psi)
                rhs = oracle.entails_mask(gm, a) if oracle.grid else oracle.entails(gamma, a)
                if lhs != rhs:
                    return gamma, phi, psi, lhs, rhs
    return None


def _dt_witness(oracle: Oracle, found, alpha) -> list:
    gamma, phi, psi, lhs, rhs = found
    a = alpha(phi, psi)
    cm = oracle.counter([*gamma, phi], psi) if not lhs else oracle.counter(gamma, a)
    wit = [formula_witness(gamma=list(gamma), phi=phi, psi=psi, alpha=a, with_premise=lhs, with_conditional=rhs)]
    if cm is not None and not isinstance(cm, str):
        wit.append(model_witness(cm))
    return wit


def _dt_universe(logic, pool, formulas, atoms, max_nodes):
    pool = list(pool) if pool is not None else default_pool(logic, atoms)
    fs = list(formulas) if formulas is not None else source_formulas(logic, atoms, max_nodes)
    return pool, fs


def verify_standard_dt(logic: LogicSpec, *, pool: Sequence[Formula] | None = None,
                       formulas: Sequence[Formula] | None = None, max_premises: int = 2,
                       atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 2,
                       size_bound: int | None = None) -> CheckEntry:
    """``Γ,φ ⊨ ψ`` iff ``Γ ⊨ φ→ψ`` for ``Γ ⊆ pool``, ``|Γ| <= max_premises``."""
    if not logic.conditional or logic.signature.arity(logic.conditional) != 2:
        raise VerificationError(f"{logic.name} has no designated conditional")
    start = time.perf_counter()
    pool, fs = _dt_universe(logic, pool, formulas, atoms, max_nodes)
    cond = logic.conditional
    alpha = lambda a, b: _apply(cond, a, b)
    oracle = Oracle(logic, [*pool, *fs], size_bound)
    bounds = _bounds(logic, size_bound, pool=[render(f) for f in pool], max_premises=max_premises,
                     formulas=[render(f) for f in fs])
    found = _dt_scan(oracle, pool, fs, alpha, max_premises)
    if found:
        return make_entry("standard-dt", logic.name, REFUTED, start, bounds=bounds,
                          witnesses=_dt_witness(oracle, found, alpha), reason="deduction theorem fails")
    return make_entry("standard-dt", logic.name, exactness(logic), start, bounds=bounds)


def template_candidates(logic: LogicSpec, placeholders: int, template_bound: int, parameters: Sequence[str] = (),
                        require_all: bool = True):
    """Templates over ``#1..#k`` (and optional parameter atoms) in canonical order."""
    leaves = [placeholder(i) for i in range(1, placeholders + 1)] + [Atom(a) for a in parameters]
    for f in enumerate_formulas(logic.signature, leaves, template_bound):
        tpl = Template(f, placeholders)
        if require_all and tpl.placeholders() != set(range(1, placeholders + 1)):
            continue
        yield tpl


def search_general_dt(logic: LogicSpec, *, template_bound: int = 7, pool: Sequence[Formula] | None = None,
                      formulas: Sequence[Formula] | None = None, max_premises: int = 2,
                      atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 2,
                      size_bound: int | None = None) -> CheckEntry:
    """First two-placeholder template α with ``Γ,φ ⊨ ψ`` iff ``Γ ⊨ α(φ,ψ)`` at bounds."""
    start = time.perf_counter()
    pool, fs = _dt_universe(logic, pool, formulas, atoms, max_nodes)
    bounds = _bounds(logic, size_bound, template_bound=template_bound, pool=[render(f) for f in pool],
                     max_premises=max_premises, formulas=[render(f) for f in fs])
    oracle = Oracle(logic, [*pool, *fs], size_bound)
    lhs_cache: dict = {}
    tried = 0
    for tpl in template_candidates(logic, 2, template_bound):
        tried += 1
        alpha = lambda a, b, tpl=tpl: substitute(tpl, [a, b])
        if _dt_scan(oracle, pool, fs, alpha, max_premises, lhs_cache) is None:
            return make_entry("general-dt", logic.name, exactness(logic), start, bounds=bounds,
                              witnesses=[formula_witness(template=tpl.body)],
                              details={"template": render(tpl.body), "templates_tried": tried})
    return make_entry("general-dt", logic.name, REFUTED, start, bounds=bounds,
                      reason="exhausted: no template within the bound satisfies the deduction theorem",
                      details={"template": None, "templates_tried": tried, "exhausted": True})


def conditional_template(t: ClauseSystem) -> Callable[[Formula, Formula], Formula] | None:
    """α(X, Y): the main conditional clause with operand images X and Y."""
    shape = classify_shape(t)
    if not shape.gr_conditional_compositional:
        return None
    clause = t.main_translator.clause("->")
    slots = [item.operands[0] for item in clause.plan]
    return lambda x, y: substitute(clause.template, [x if k == 1 else y for k in slots])


def verify_dt_preservation(t: ClauseSystem, source: LogicSpec, target: LogicSpec, reports: dict, *,
                           pool: Sequence[Formula] | None = None, formulas: Sequence[Formula] | None = None,
                           max_premises: int = 2, atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 2,
                           size_bound: int | None = None) -> CheckEntry:
    """General deduction theorem on the image of ``t`` with α from its conditional clause.

    ``reports`` supplies ``standard_dt`` (source) and ``conservativity``.
    """
    start = time.perf_counter()
    subject = t.name
    sdt, cons = reports.get("standard_dt"), reports.get("conservativity")
    alpha = conditional_template(t)
    unmet = []
    if alpha is None:
        unmet.append("not GR^C: the conditional clause is not a fixed template over the main translator")
    if sdt is None or not sdt.passed:
        unmet.append("source standard DT not verified")
    if cons is None or cons.refuted:
        unmet.append("translation not verified conservative")
    if unmet:
        return make_entry("dt-preservation", subject, SKIPPED, start, reason="; ".join(unmet))
    pool, fs = _dt_universe(source, pool, formulas, atoms, max_nodes)
    ipool = [apply_translation(t, f) for f in pool]
    ifs = [apply_translation(t, f) for f in fs]
    oracle = Oracle(target, [*ipool, *ifs], size_bound)
    bounds = _bounds(target, size_bound, pool=[render(f) for f in ipool], max_premises=max_premises,
                     formulas=[render(f) for f in ifs])
    alpha_text = render(alpha(placeholder(1), placeholder(2)))
    found = _dt_scan(oracle, ipool, ifs, alpha, max_premises)
    if found:
        return make_entry("dt-preservation", subject, REFUTED, start, bounds=bounds,
                          witnesses=_dt_witness(oracle, found, alpha), details={"alpha": alpha_text},
                          reason="image violates the general deduction theorem")
    return make_entry("dt-preservation", subject, exactness(target), start, bounds=bounds,
                      details={"alpha": alpha_text})


# --------------------------------------------------------------------------
# Proof-theoretic connectives
# --------------------------------------------------------------------------

ROLES = ("falsum", "conjunction", "disjunction", "implication", "negation")
_ROLE_ARITY = {"falsum": 1, "conjunction": 2, "disjunction": 2, "implication": 2, "negation": 1}


def _pt_instances(role, universe, sets):
    """Instances ``key -> list of (condition-left, condition-right-of-γ)``."""
    if role in ("conjunction", "implication", "disjunction"):
        for gamma in sets:
            for phi in universe:
                for psi in universe:
                    yield gamma, (phi, psi)
    else:
        for gamma in sets:
            for phi in universe:
                yield gamma, (phi,)


class _PT:
    """Table conditions for one role; ``ok(γ, Γ, args)`` decides one instance."""

    def __init__(self, oracle: Oracle, universe, falsum: Formula | None):
        self.o, self.u, self.falsum = oracle, universe, falsum

    def ent(self, prem, c):
        return self.o.entails(list(prem), c)

    def ok(self, role, gamma_f, gamma, args) -> bool:
        if role == "conjunction":
            phi, psi = args
            return self.ent(gamma, gamma_f) == (self.ent(gamma, phi) and self.ent(gamma, psi))
        if role == "implication":
            phi, psi = args
            return self.ent(gamma, gamma_f) == self.ent([*gamma, phi], psi)
        if role == "disjunction":
            phi, psi = args
            return all(self.ent([gamma_f, *gamma], chi) == (self.ent([phi, *gamma], chi) and self.ent([psi, *gamma], chi))
                       for chi in self.u)
        if role == "negation":
            (phi,) = args
            return self.ent([*gamma, phi], self.falsum) == self.ent(gamma, gamma_f)
        if role == "falsum":
            return all(self.ent([gamma_f], chi) for chi in self.u)
        raise VerificationError(f"unknown role {role!r}")


def verify_pt_connective(logic: LogicSpec, role: str, mode: str = "strict-template", *,
                         atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 2, max_premises: int = 1,
                         template_bound: int = 4, size_bound: int | None = None) -> CheckEntry:
    """Presence of a proof-theoretic connective over the bounded universe.

    ``strict-template``: one template δ (over placeholders and the logic's
    atoms) satisfies the condition on every instance. ``relaxed-instancewise``:
    each instance ``(Γ, φ, ψ)`` only needs some formula γ of the universe.
    """
    if role not in ROLES:
        raise VerificationError(f"unknown role {role!r}")
    if mode not in ("strict-template", "relaxed-instancewise"):
        raise VerificationError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    subject = f"{logic.name}:{role}"
    explicit = logic.kind == "explicit"
    universe = source_formulas(logic, atoms, max_nodes)
    premise_cap = len(universe) if explicit else max_premises
    sets = _subsets(universe, premise_cap)
    bounds = _bounds(logic, size_bound, mode=mode, universe=[render(f) for f in universe], max_premises=premise_cap,
                     template_bound=None if mode != "strict-template" else template_bound)
    oracle = Oracle(logic, universe, size_bound)
    falsum = None
    if role == "negation":
        inner = verify_pt_connective(logic, "falsum", mode, atoms=atoms, max_nodes=max_nodes,
                                     max_premises=max_premises, template_bound=template_bound, size_bound=size_bound)
        if not inner.passed:
            return make_entry("pt-connective", subject, REFUTED, start, bounds=bounds,
                              reason="no falsum is present, so negation has no reference point",
                              details={"present": False})
        falsum = inner.details["falsum"]
    pt = _PT(oracle, universe, falsum)
    in_universe = set(universe)
    if mode == "relaxed-instancewise":
        choices = {}
        for gamma, args in _pt_instances(role, universe, sets):
            found = next((g for g in universe if pt.ok(role, g, gamma, args)), None)
            if found is None:
                return make_entry("pt-connective", subject, REFUTED, start, bounds=bounds,
                                  witnesses=[formula_witness(gamma=list(gamma), operands=list(args))],
                                  reason="no formula serves this instance", details={"present": False})
            if not gamma:
                choices[" ".join(render(a) for a in args)] = render(found)
        details = {"present": True, "choices_for_empty_premises": choices}
        if role == "falsum":
            details["falsum"] = parse_first(choices)
        return make_entry("pt-connective", subject, VALID_EXACT if logic.exact else VALID_BOUNDED, start,
                          bounds=bounds, details=details)
    arity = _ROLE_ARITY[role]
    params = [] if explicit else list(atoms)
    if explicit:
        params = [render(a) for a in atoms_of(universe)]
    tried = 0
    for tpl in template_candidates(logic, arity, template_bound, params, require_all=False):
        tried += 1
        good = True
        for gamma, args in _pt_instances(role, universe, sets):
            inst = substitute(tpl, list(args))
            if explicit and inst not in in_universe:
                good = False
                break
            if not pt.ok(role, inst, gamma, args):
                good = False
                break
        if good:
            details = {"present": True, "template": render(tpl.body), "templates_tried": tried}
            if role == "falsum":
                details["falsum"] = substitute(tpl, [universe[0]])
            return make_entry("pt-connective", subject, VALID_EXACT if logic.exact else VALID_BOUNDED, start,
                              bounds=bounds, details=details)
    return make_entry("pt-connective", subject, REFUTED, start, bounds=bounds,
                      reason="no single template satisfies the condition on every instance",
                      details={"present": False, "templates_tried": tried})


def parse_first(choices: dict):
    from ..formula import parse
    return parse(next(iter(choices.values()))) if choices else None


# --------------------------------------------------------------------------
# Triviality and bounded expressive power
# --------------------------------------------------------------------------


def verify_triviality(logic: LogicSpec, *, atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 2,
                      size_bound: int | None = None) -> CheckEntry:
    """Whether ``φ ⊢ ψ`` for all bounded ``φ, ψ``. Holds iff the logic is trivial at bounds."""
    start = time.perf_counter()
    fs = source_formulas(logic, atoms, max_nodes)
    bounds = _bounds(logic, size_bound, atoms=tuple(atoms), max_nodes=max_nodes)
    if logic.kind == "syntax":
        return make_entry("triviality", logic.name, SKIPPED, start, bounds=bounds, reason="syntax-only logic")
    oracle = Oracle(logic, fs, size_bound)
    for phi in fs:
        for psi in fs:
            cm = oracle.counter([phi], psi)
            if cm is not None:
                wit = [formula_witness(premise=phi, conclusion=psi)]
                if not isinstance(cm, str):
                    wit.append(model_witness(cm))
                return make_entry("triviality", logic.name, REFUTED, start, bounds=bounds, witnesses=wit,
                                  reason=f"{render(phi)} does not entail {render(psi)}", details={"trivial": False})
    return make_entry("triviality", logic.name, exactness(logic), start, bounds=bounds, details={"trivial": True})


def _valuation_determined(logic: LogicSpec, size_bound) -> bool:
    if logic.kind == "matrix":
        return True
    return logic.kind == "kripke" and logic.engine.frame_class == "atom-only" and logic.bound(size_bound) == 1


def _model_sets(logic: LogicSpec, fs, atoms, size_bound, keyed: bool) -> dict:
    """Formula -> set of (model key) where it holds."""
    ctx = [Atom(a) for a in atoms]
    eng = logic.engine
    models = eng.space(ctx, logic.bound(size_bound))
    out = {}
    for f in fs:
        s = set()
        for i, m in enumerate(models):
            mask = eng.truth(m, f, None)
            if keyed:
                if mask & 1:
                    s.add(_valuation_key(m, ctx))
            else:
                for w in range(mask.bit_length()):
                    if mask >> w & 1:
                        s.add((i, w))
        out[f] = frozenset(s)
    return out


def _valuation_key(m, ctx) -> tuple:
    if hasattr(m, "semantics"):
        return tuple(m.valuation[a] for a in ctx)
    return tuple(m.valuation[a] & 1 for a in ctx)


def verify_ec_bounded(l1: LogicSpec, l2: LogicSpec, *, atoms: Sequence[str] = DEFAULT_ATOMS, max_nodes: int = 3,
                      counterpart_nodes: int | None = None, size_bound: int | None = None) -> CheckEntry:
    """Every ``l1`` formula within ``max_nodes`` has an ``l2`` formula within
    ``counterpart_nodes`` (default twice ``max_nodes``) with the same models."""
    start = time.perf_counter()
    subject = f"{l1.name} <=EC {l2.name}"
    counterpart_nodes = counterpart_nodes or 2 * max_nodes
    bounds = {"atoms": list(atoms), "max_nodes": max_nodes, "counterpart_nodes": counterpart_nodes}
    if _valuation_determined(l1, size_bound) and _valuation_determined(l2, size_bound):
        if l1.kind == "matrix" and l2.kind == "matrix" and l1.engine.semantics.values != l2.engine.semantics.values:
            raise VerificationError("engines incompatible: different truth-value sets")
        keyed = not (l1.kind == l2.kind == "matrix")
        if keyed and any(lg.kind == "matrix" and lg.engine.semantics.values != (0, 1) for lg in (l1, l2)):
            raise VerificationError("engines incompatible: only two-valued matrices share models with atom-only worlds")
    elif l1.kind == l2.kind == "kripke" and l1.engine.frame_class == l2.engine.frame_class:
        keyed = False
    else:
        raise VerificationError(f"engines incompatible: {l1.kind} and {l2.kind} do not share a model enumeration")
    f1 = source_formulas(l1, atoms, max_nodes)
    f2 = source_formulas(l2, atoms, counterpart_nodes)
    s1 = _model_sets(l1, f1, atoms, size_bound, keyed)
    s2 = _model_sets(l2, f2, atoms, size_bound, keyed)
    index = {}
    for g in f2:
        index.setdefault(s2[g], g)
    unmatched = [f for f in f1 if s1[f] not in index]
    matches = {render(f): render(index[s1[f]]) for f in f1 if s1[f] in index}
    details = {"unmatched": [render(f) for f in unmatched], "matched": len(matches)}
    if unmatched:
        return make_entry("ec-bounded", subject, REFUTED, start, bounds=bounds,
                          witnesses=[formula_witness(formula=unmatched[0])], details=details,
                          reason=f"{len(unmatched)} formula(s) without a counterpart")
    details["matches"] = matches
    return make_entry("ec-bounded", subject, exactness(l1, l2), start, bounds=bounds, details=details)


# --------------------------------------------------------------------------
# Bounded surjectivity
# --------------------------------------------------------------------------


def bounded_surjective(t: ClauseSystem, source: LogicSpec, target: LogicSpec, *, atoms: Sequence[str] = ("p",),
                       max_nodes: int = 3) -> tuple[bool, Formula | None]:
    """Whether every target formula within bounds is the image of a source formula within bounds."""
    images = set()
    for f in source_formulas(source, atoms, max_nodes):
        try:
            images.add(apply_translation(t, f))
        except TranslationError:
            continue
    for g in source_formulas(target, atoms, max_nodes):
        if g not in images:
            return False, g
    return True, None


__all__ = ["DEFAULT_ATOMS", "GvWitness", "ROLES", "bounded_surjective", "conditional_template", "default_pool",
           "search_general_dt", "source_formulas", "template_candidates", "verify_conservativity",
           "verify_dt_preservation", "verify_ec_bounded", "verify_gv_sublogic", "verify_pt_connective",
           "verify_standard_dt", "verify_theoremhood", "verify_triviality", "verify_truth_preservation"]
