"""Logic descriptors, verdicts, and semantic consequence over any engine.

Every model-based engine exposes the same small interface:

``space(context, size_bound)``   models relevant to the context, in order
``points(model)``                bitmask of the model's points of evaluation
``truth(model, f, memo)``        bitmask of the points where ``f`` holds

so one loop serves matrices, bivaluations, relatedness models and Kripke
models alike. Consequence is local: a point verifying every premise must
verify the conclusion.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from ..formula import Formula, Signature, atoms_of, check, render
from .bivaluation import BivaluationEngine, BivaluationModel
from .explicit import ExplicitEngine
from .fol import FOStructure, fol_evaluate
from .kripke import KripkeEngine, KripkeModel
from .matrix import MatrixEngine, MatrixModel
from .relatedness import RelatednessEngine, RelatednessModel

VALID_EXACT = "valid-exact"
VALID_BOUNDED = "valid-bounded"
REFUTED = "refuted"
SKIPPED = "skipped"


@dataclass(frozen=True, eq=False)
class LogicSpec:
    name: str
    signature: Signature
    engine: Any
    decidable: str = "yes"
    consequence_mode: str = "full"
    conditional: str | None = "->"
    default_bound: int = 1
    metadata: Mapping[str, Any] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.engine.kind

    @property
    def exact(self) -> bool:
        return self.engine.exact

    def bound(self, size_bound: int | None) -> int:
        return self.default_bound if size_bound is None else size_bound

    def admits(self, f: Formula) -> bool:
        return self.signature.admits(f)

    def describe(self) -> dict:
        return {"name": self.name, "engine": self.kind, "signature": self.signature.name,
                "connectives": [list(c) for c in self.signature.connectives],
                "decidable": self.decidable, "consequence_mode": self.consequence_mode}


def model_json(model) -> dict | None:
    if model is None:
        return None
    return model.to_json()


@dataclass(eq=False)
class Verdict:
    status: str
    bounds: dict = field(default_factory=dict)
    witness_model: Any = None
    witness_formulas: dict = field(default_factory=dict)
    reason: str | None = None
    elapsed_ms: float = 0.0

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED

    @property
    def holds(self) -> bool:
        return self.status in (VALID_EXACT, VALID_BOUNDED)

    def to_json(self, timing: bool = True) -> dict:
        out = {"status": self.status, "bounds": dict(self.bounds)}
        if self.witness_model is not None:
            out["witness_model"] = model_json(self.witness_model)
        if self.witness_formulas:
            out["witness_formulas"] = dict(self.witness_formulas)
        if self.reason:
            out["reason"] = self.reason
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def valid_status(logic: LogicSpec) -> str:
    return VALID_EXACT if logic.exact else VALID_BOUNDED


def shares_space(logic: LogicSpec) -> bool:
    """Whether one model space over the union of atoms serves a batch of
    queries. Bivaluation domains depend on the exact closure, so no."""
    return logic.kind in ("matrix", "kripke", "relatedness")


def enumerate_models(logic: LogicSpec, context: Sequence[Formula], size_bound: int | None = None):
    if logic.kind == "explicit":
        raise ValueError(f"{logic.name} has no models; it is given by its consequence relation")
    yield from logic.engine.enumerate(list(context), logic.bound(size_bound))


def evaluate(model, f: Formula, assignment: Mapping[str, int] | None = None):
    """Truth value of ``f`` in ``model`` at its designated point."""
    if isinstance(model, MatrixModel):
        return model.value(f)
    if isinstance(model, KripkeModel):
        return model.forced(f)
    if isinstance(model, BivaluationModel):
        return model.value(f)
    if isinstance(model, RelatednessModel):
        return model.value(f)
    if isinstance(model, FOStructure):
        return fol_evaluate(model, f, assignment or {})
    raise TypeError(f"not a model: {model!r}")


def holds_in(model, f: Formula) -> bool:
    """Whether ``f`` is true (designated, forced) at the model's point."""
    if isinstance(model, MatrixModel):
        return model.designates(f)
    return bool(evaluate(model, f))


def _bounds(logic: LogicSpec, size_bound: int | None) -> dict:
    if logic.kind in ("kripke", "fo"):
        return {"max_model_size": logic.bound(size_bound)}
    return {}


def first_counter(logic: LogicSpec, premises: Sequence[Formula], conclusion: Formula,
                  size_bound: int | None = None, context: Sequence[Formula] | None = None):
    """First pointed model (canonical order) verifying the premises but not
    the conclusion, or ``None``."""
    eng = logic.engine
    ctx = list(context) if context is not None else [*premises, conclusion]
    for model in eng.space(ctx, logic.bound(size_bound)):
        memo: dict = {}
        mask = eng.points(model)
        for p in premises:
            mask &= eng.truth(model, p, memo)
            if not mask:
                break
        if not mask:
            continue
        bad = mask & ~eng.truth(model, conclusion, memo)
        if bad:
            return eng.pointed(model, (bad & -bad).bit_length() - 1)
    return None


def consequence(logic: LogicSpec, premises: Iterable[Formula], conclusion: Formula,
                size_bound: int | None = None) -> Verdict:
    """Semantic consequence ``premises ⊨ conclusion`` within the bounds."""
    start = time.perf_counter()
    premises = list(premises)
    for f in (*premises, conclusion):
        check(f, logic.signature)
    bounds = _bounds(logic, size_bound)
    if logic.kind == "explicit":
        ok = logic.engine.entails(premises, conclusion)
        v = Verdict(VALID_EXACT if ok else REFUTED, bounds)
    else:
        witness = first_counter(logic, premises, conclusion, size_bound)
        v = Verdict(valid_status(logic) if witness is None else REFUTED, bounds, witness)
    if v.refuted:
        v.witness_formulas = {"premises": [render(p) for p in premises], "conclusion": render(conclusion)}
    v.elapsed_ms = (time.perf_counter() - start) * 1000
    return v


def entails(logic: LogicSpec, premises: Iterable[Formula], conclusion: Formula, size_bound: int | None = None) -> bool:
    premises = list(premises)
    if logic.kind == "explicit":
        return logic.engine.entails(premises, conclusion)
    return first_counter(logic, premises, conclusion, size_bound) is None


def validity_table(logic: LogicSpec, formulas: Sequence[Formula], size_bound: int | None = None) -> dict:
    """Map each formula to ``None`` (valid within bounds) or its first
    countermodel. Engines with a shared space evaluate all formulas per model."""
    formulas = list(dict.fromkeys(formulas))
    if logic.kind == "explicit":
        return {f: (None if logic.engine.entails([], f) else "refuted") for f in formulas}
    if not shares_space(logic):
        return {f: first_counter(logic, [], f, size_bound) for f in formulas}
    eng = logic.engine
    result: dict = {f: None for f in formulas}
    pending = list(formulas)
    for model in eng.space(formulas, logic.bound(size_bound)):
        if not pending:
            break
        memo: dict = {}
        full = eng.points(model)
        still = []
        for f in pending:
            bad = full & ~eng.truth(model, f, memo)
            if bad:
                result[f] = eng.pointed(model, (bad & -bad).bit_length() - 1)
            else:
                still.append(f)
        pending = still
    return result


def consequence_table(logic: LogicSpec, premise_sets: Sequence[Sequence[Formula]], conclusions: Sequence[Formula],
                      size_bound: int | None = None) -> dict:
    """``(i, φ) -> countermodel | None`` for every premise set index ``i`` and conclusion."""
    sets = [list(g) for g in premise_sets]
    conclusions = list(dict.fromkeys(conclusions))
    if logic.kind == "explicit":
        return {(i, c): (None if logic.engine.entails(g, c) else "refuted") for i, g in enumerate(sets) for c in conclusions}
    if not shares_space(logic):
        return {(i, c): first_counter(logic, g, c, size_bound) for i, g in enumerate(sets) for c in conclusions}
    eng = logic.engine
    everything = list(dict.fromkeys([f for g in sets for f in g] + conclusions))
    result: dict = {(i, c): None for i in range(len(sets)) for c in conclusions}
    pending = set(result)
    order = [(i, c) for i in range(len(sets)) for c in conclusions]
    for model in eng.space(everything, logic.bound(size_bound)):
        if not pending:
            break
        memo: dict = {}
        full = eng.points(model)
        truth = {f: eng.truth(model, f, memo) for f in everything}
        gmask = []
        for g in sets:
            m = full
            for f in g:
                m &= truth[f]
            gmask.append(m)
        for key in order:
            if key not in pending:
                continue
            i, c = key
            bad = gmask[i] & ~truth[c]
            if bad:
                result[key] = eng.pointed(model, (bad & -bad).bit_length() - 1)
                pending.discard(key)
    return result
