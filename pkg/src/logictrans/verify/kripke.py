"""Kripke corpus statuses, image consistency and the standard translation."""

from __future__ import annotations

import itertools
import time
from typing import Sequence

from ..formula import Atom, Formula, atoms_of, enumerate_formulas, render
from ..semantics import REFUTED, VALID_BOUNDED, VALID_EXACT, LogicSpec, fol_evaluate, kripke_to_structure
from ..translation import ClauseSystem, apply_translation
from .oracle import Oracle
from .report import CheckEntry, formula_witness, make_entry, model_witness


class StatusCache:
    """Validity with first countermodel, one oracle per (logic, atom set)."""

    def __init__(self, size_bound: int | None = None):
        self.size_bound = size_bound
        self._oracles: dict = {}
        self._results: dict = {}

    def counter(self, logic: LogicSpec, f: Formula):
        key = (logic.name, f)
        if key not in self._results:
            atoms = frozenset(atoms_of([f]))
            o = self._oracles.get((logic.name, atoms))
            if o is None:
                o = self._oracles[logic.name, atoms] = Oracle(logic, [f], self.size_bound)
            self._results[key] = o.counter([], f)
        return self._results[key]

    def status(self, logic: LogicSpec, f: Formula) -> str:
        return "valid" if self.counter(logic, f) is None else "refuted"


def _worlds(model) -> int:
    return getattr(model, "n", 1)


def verify_corpus(corpus, logics: dict[str, LogicSpec], *, size_bound: int = 4, countermodel_worlds: int = 3,
                  cache: StatusCache | None = None) -> list[CheckEntry]:
    """One entry per (item, logic): the computed status matches the recorded one,
    and refutations have a countermodel within ``countermodel_worlds`` worlds."""
    cache = cache or StatusCache(size_bound)
    out = []
    for item in corpus:
        for name, expected in sorted(item.expected.items()):
            if name not in logics:
                continue
            logic = logics[name]
            start = time.perf_counter()
            subject = f"{name}:{item.label or render(item.formula)}"
            bounds = {"max_model_size": logic.bound(size_bound), "countermodel_worlds": countermodel_worlds}
            cm = cache.counter(logic, item.formula)
            got = "valid" if cm is None else "refuted"
            wit = [formula_witness(formula=item.formula, expected=expected, observed=got)]
            if cm is not None:
                wit.append(model_witness(cm))
            if got != expected:
                out.append(make_entry("corpus-status", subject, REFUTED, start, bounds=bounds, witnesses=wit,
                                      reason=f"expected {expected}, observed {got}"))
            elif cm is not None and _worlds(cm) > countermodel_worlds:
                out.append(make_entry("corpus-status", subject, REFUTED, start, bounds=bounds, witnesses=wit,
                                      reason=f"first countermodel has {_worlds(cm)} worlds"))
            else:
                details = {"countermodel_worlds": _worlds(cm)} if cm is not None else {}
                status = VALID_EXACT if logic.exact else VALID_BOUNDED
                out.append(make_entry("corpus-status", subject, status, start, bounds=bounds, witnesses=wit,
                                      details=details))
    return out


def verify_image_consistency(t: ClauseSystem, source: LogicSpec, target: LogicSpec, corpus, *,
                             size_bound: int = 4, cache: StatusCache | None = None) -> CheckEntry:
    """On every corpus formula of the source language, ``φ`` and ``t(φ)`` have the same status."""
    cache = cache or StatusCache(size_bound)
    start = time.perf_counter()
    checked = []
    for item in corpus:
        f = item.formula
        if not source.admits(f):
            continue
        g = apply_translation(t, f)
        s, u = cache.status(source, f), cache.status(target, g)
        checked.append(render(f))
        if s != u:
            return make_entry("image-consistency", t.name, REFUTED, start,
                              bounds={"max_model_size": size_bound},
                              witnesses=[formula_witness(formula=f, image=g, source_status=s, target_status=u)],
                              reason=f"{render(f)} is {s} but its image is {u}")
    status = VALID_EXACT if source.exact and target.exact else VALID_BOUNDED
    return make_entry("image-consistency", t.name, status, start, bounds={"max_model_size": size_bound},
                      details={"formulas": checked})


def _relabel(mask: int, perm) -> int:
    return sum(1 << perm[i] for i in range(len(perm)) if mask >> i & 1)


def _iso_key(m) -> tuple:
    """Canonical form of a Kripke model under renaming of worlds."""
    atoms = sorted(m.valuation, key=str)
    best = None
    for perm in itertools.permutations(range(m.n)):
        succ = [0] * m.n
        for i in range(m.n):
            succ[perm[i]] = _relabel(m.succ[i], perm)
        key = (tuple(succ), tuple(_relabel(m.valuation[a], perm) for a in atoms))
        if best is None or key < best:
            best = key
    return (m.n, best)


def iso_representatives(models) -> list:
    """First model of each isomorphism class, in enumeration order."""
    seen, out = set(), []
    for m in models:
        k = _iso_key(m)
        if k not in seen:
            seen.add(k)
            out.append(m)
    return out


def verify_correspondence(t: ClauseSystem, logic: LogicSpec, *, atoms: Sequence[str] = ("p",), max_nodes: int = 5,
                          max_worlds: int = 3, variable: str = "x") -> CheckEntry:
    """``(m, w) ⊩ φ`` iff the first-order image holds in ``m`` read as a structure, with ``x := w``.

    Both sides are invariant under renaming worlds, so one model per
    isomorphism class, checked at every world, covers all pointed models.
    """
    start = time.perf_counter()
    fs = list(enumerate_formulas(logic.signature, [Atom(a) for a in atoms], max_nodes))
    images = [apply_translation(t, f) for f in fs]
    eng = logic.engine
    bounds = {"atoms": list(atoms), "max_nodes": max_nodes, "max_model_size": max_worlds, "formulas": len(fs)}
    checked = 0
    reps = iso_representatives(eng.space([Atom(a) for a in atoms], max_worlds))
    bounds["iso_classes"] = len(reps)
    for m in reps:
        s = kripke_to_structure(m)
        kmemo, fmemo = {}, {}
        for f, g in zip(fs, images):
            forced = eng.truth(m, f, kmemo)
            for w in m.worlds:
                checked += 1
                if bool(forced >> w & 1) != fol_evaluate(s, g, {variable: w}, fmemo):
                    return make_entry("st-correspondence", t.name, REFUTED, start, bounds=bounds,
                                      witnesses=[formula_witness(formula=f, image=g), model_witness(m.at(w))],
                                      reason="forcing and first-order evaluation disagree")
    return make_entry("st-correspondence", t.name, VALID_EXACT, start, bounds=bounds,
                      details={"comparisons": checked})
