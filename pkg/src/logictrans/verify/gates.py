"""Expressiveness gates over stored check entries."""

from __future__ import annotations

import time

from ..semantics import REFUTED, VALID_BOUNDED, VALID_EXACT, LogicSpec, ModelMap
from ..translation import ClauseSystem, classify_shape
from .report import CheckEntry, make_entry


def _finitely_generated(t: ClauseSystem) -> tuple[bool, str | None]:
    if t.opaque is not None:
        return False, f"{t.name} is opaque ({t.opaque.kind}), hence not finitely generated"
    if not t.translators:
        return False, f"{t.name} has no translators"
    return True, None


def _combined(entries) -> str:
    return VALID_EXACT if all(e.status == VALID_EXACT for e in entries) else VALID_BOUNDED


def gate_expressiveness_g(t: ClauseSystem, mm: ModelMap | None, reports: dict) -> CheckEntry:
    """Model based, finitely generated and truth preserving.

    ``reports["truth_preservation"]`` must hold a truth-preservation entry.
    """
    start = time.perf_counter()
    subject = t.name if mm is None else f"{t.name} with {mm.name}"
    details = {"model_map": None if mm is None else mm.name}

    def fail(reason):
        return make_entry("gate-g", subject, REFUTED, start, reason=reason, details=details)

    if mm is None:
        return fail("no model map")
    if not mm.model_based:
        return fail(f"model map {mm.name} is not model based")
    ok, why = _finitely_generated(t)
    details["finitely_generated"] = ok
    if not ok:
        return fail(why)
    tp = reports.get("truth_preservation")
    if tp is None:
        return fail("truth preservation not checked")
    details["truth_preservation"] = tp.status
    if not tp.passed:
        return fail("truth preservation not verified")
    return make_entry("gate-g", subject, _combined([tp]), start, details=details)


def gate_expressiveness_gg(t: ClauseSystem, reports: dict, source: LogicSpec | None = None,
                           target: LogicSpec | None = None) -> CheckEntry:
    """Back-and-forth, general-recursive, no model-map dependency, and GR^C
    whenever the source has the standard deduction theorem.

    ``reports`` may hold ``theoremhood``, ``conservativity``, ``standard_dt``
    (of the source), ``source_triviality`` and ``target_triviality``.
    """
    start = time.perf_counter()
    subject = t.name
    shape = classify_shape(t)
    details = {"general_recursive": shape.general_recursive, "gr_conditional": shape.gr_conditional_compositional,
               "requires_model_map": t.requires_model_map}

    def fail(reason):
        return make_entry("gate-gg", subject, REFUTED, start, reason=reason, details=details)

    if source is not None and target is not None:
        if source.decidable == "no" and target.decidable == "yes":
            return fail(f"{source.name} is undecidable and {target.name} is decidable: "
                        "no computable back-and-forth translation exists")
    if t.opaque is not None:
        return fail(f"{t.name} is opaque ({t.opaque.kind}), not general-recursive")
    if not shape.general_recursive:
        return fail("not general-recursive")
    if t.requires_model_map:
        return fail("declares a model-map dependency")
    thm = reports.get("theoremhood")
    if thm is None:
        return fail("theoremhood not checked")
    details["theoremhood"] = thm.status
    if not thm.passed:
        return fail("not back-and-forth: theoremhood refuted" if thm.refuted else
                    f"theoremhood not verified ({thm.reason})")
    cons = reports.get("conservativity")
    used = [thm]
    if cons is not None:
        details["conservativity"] = cons.status
        if cons.refuted:
            return fail("not conservative")
        if cons.passed:
            used.append(cons)
    st, tt = reports.get("source_triviality"), reports.get("target_triviality")
    if st is not None and tt is not None:
        src_trivial = st.passed
        tgt_trivial = tt.passed
        details["source_trivial"], details["target_trivial"] = src_trivial, tgt_trivial
        if tgt_trivial and not src_trivial:
            return fail("non-trivial source into a trivial target")
    sdt = reports.get("standard_dt")
    if sdt is not None:
        details["source_standard_dt"] = sdt.status
        if sdt.passed and not shape.gr_conditional_compositional:
            return fail("source has the standard deduction theorem but the translation is not GR^C")
    return make_entry("gate-gg", subject, _combined(used), start, details=details)
