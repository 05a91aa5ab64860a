"""Edges between logics and the derived expressiveness preorder."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from ..semantics import SKIPPED, EvaluationError, LogicSpec
from ..translation import ClauseSystem, TranslationError, compose_translations
from .checks import (bounded_surjective, verify_conservativity, verify_standard_dt, verify_theoremhood,
                     verify_triviality)
from .gates import gate_expressiveness_gg
from .report import CheckEntry, VerificationError, make_entry

PREORDER_LOGICS = ("CPL", "L3", "IPL", "S4", "R", "WPL", "Trivial", "atom-only", "CPL{not,->}")
PREORDER_EDGES = ("Tdef", "Tincl", "Tl", "Tc", "Tg", "TMoss", "TE", "Tprime", "Ttriv", "Tinj", "IdTrivial",
                  "IdAtoms", "IdTrivialSelf")
DEFAULT_BOUNDS = {"max_nodes": 3, "max_premises": 3, "dt_premises": 2}


@dataclass(frozen=True, eq=False)
class Edge:
    translation: ClauseSystem
    source: str
    target: str
    reports: dict
    gate: CheckEntry

    @property
    def passes(self) -> bool:
        return self.gate.passed

    def entries(self) -> list[CheckEntry]:
        return [*self.reports.values(), self.gate]


@dataclass(frozen=True, eq=False)
class Derived:
    source: str
    target: str
    provenance: str
    path: tuple[str, ...] = ()
    translation: ClauseSystem | None = None
    verification: CheckEntry | None = None

    def key(self) -> tuple:
        return (self.source, self.target, self.provenance, self.path,
                None if self.verification is None else self.verification.status)


@dataclass(eq=False)
class Registry:
    logics: dict[str, LogicSpec]
    edges: list[Edge] = field(default_factory=list)
    derived: dict[tuple[str, str], Derived] = field(default_factory=dict)
    shared: dict = field(default_factory=dict)

    def related(self, a: str, b: str) -> bool:
        return (a, b) in self.derived

    def relation(self) -> list[tuple]:
        return sorted(d.key() for d in self.derived.values())

    def edge(self, name: str) -> Edge:
        for e in self.edges:
            if e.translation.name == name:
                return e
        raise KeyError(name)

    def entries(self) -> list[CheckEntry]:
        out = []
        for key in sorted(self.shared):
            out.append(self.shared[key])
        for e in self.edges:
            out += e.entries()
        for key in sorted(self.derived):
            v = self.derived[key].verification
            if v is not None:
                out.append(v)
        return out


def _guarded(prop: str, subject: str, fn) -> CheckEntry:
    start = time.perf_counter()
    try:
        return fn()
    except (TranslationError, EvaluationError, VerificationError) as e:
        return make_entry(prop, subject, SKIPPED, start, reason=f"not checkable: {e}")


def logic_reports(logic: LogicSpec, cache: dict, bounds: dict) -> dict:
    """Standard DT and triviality of one logic, computed once per registry."""
    if logic.name in cache:
        return cache[logic.name]
    out = {"triviality": _guarded("triviality", logic.name, lambda: verify_triviality(logic))}
    if logic.conditional and logic.signature.arity(logic.conditional) == 2:
        out["standard_dt"] = _guarded("standard-dt", logic.name,
                                      lambda: verify_standard_dt(logic, max_premises=bounds["dt_premises"]))
    cache[logic.name] = out
    return out


def evaluate_edge(t: ClauseSystem, source: LogicSpec, target: LogicSpec, cache: dict | None = None,
                  bounds: dict | None = None) -> Edge:
    """Store the reports a gate needs and the gg verdict."""
    b = {**DEFAULT_BOUNDS, **(bounds or {})}
    cache = {} if cache is None else cache
    reports = {"theoremhood": _guarded("theoremhood", t.name,
                                       lambda: verify_theoremhood(t, source, target, max_nodes=b["max_nodes"]))}
    if not reports["theoremhood"].refuted:
        reports["conservativity"] = _guarded(
            "conservativity", t.name,
            lambda: verify_conservativity(t, source, target, max_premises=b["max_premises"]))
    src, tgt = logic_reports(source, cache, b), logic_reports(target, cache, b)
    gate_in = dict(reports, source_triviality=src["triviality"], target_triviality=tgt["triviality"])
    if "standard_dt" in src:
        gate_in["standard_dt"] = src["standard_dt"]
    gate = gate_expressiveness_gg(t, gate_in, source, target)
    return Edge(t, source.name, target.name, reports, gate)


def build_registry(catalog, logics=PREORDER_LOGICS, edges=PREORDER_EDGES, bounds: dict | None = None) -> Registry:
    specs = {name: catalog.logic(name) for name in logics}
    cache: dict = {}
    out = []
    for name in edges:
        t = catalog.translation(name)
        s, g = catalog.endpoints(t)
        if s.name not in specs or g.name not in specs:
            continue
        out.append(evaluate_edge(t, s, g, cache, bounds))
    shared = {}
    for name in sorted(cache):
        for prop, e in sorted(cache[name].items()):
            shared[name, prop] = e
    return Registry(specs, out, {}, shared)


def _compose_path(reg: Registry, path: list[Edge], bounds: dict) -> Derived:
    a, c = path[0].source, path[-1].target
    names = tuple(e.translation.name for e in path)
    acc = path[0].translation
    weakened = False
    try:
        for e in path[1:]:
            onto, _ = bounded_surjective(acc, reg.logics[a], reg.logics[e.source])
            weakened |= not onto
            acc = compose_translations(acc, e.translation, "surjective" if onto else "weakened")
    except TranslationError as err:
        v = make_entry("theoremhood", "∘".join(reversed(names)), SKIPPED, time.perf_counter(),
                       reason=f"composition not available: {err}")
        return Derived(a, c, "composed-weakened" if weakened else "composed-surjective", names, None, v)
    v = _guarded("theoremhood", acc.name, lambda: verify_theoremhood(
        acc, reg.logics[a], reg.logics[c], max_nodes=bounds["max_nodes"]))
    return Derived(a, c, "composed-weakened" if weakened else "composed-surjective", names, acc, v)


def build_preorder(reg: Registry, bounds: dict | None = None) -> Registry:
    """Reflexive-transitive closure over gg-passing edges.

    Paths are shortest in edge count, ties broken by the order of edges in
    the registry. Composed paths are fused and re-verified by theoremhood.
    """
    b = {**DEFAULT_BOUNDS, **(bounds or {})}
    passing = [e for e in reg.edges if e.passes]
    adj: dict[str, list[Edge]] = {}
    for e in passing:
        adj.setdefault(e.source, []).append(e)
    derived: dict[tuple[str, str], Derived] = {}
    for a in sorted(reg.logics):
        derived[a, a] = Derived(a, a, "reflexive")
        direct = {e.target: e for e in adj.get(a, []) if e.target != a}
        for tgt, e in direct.items():
            derived[a, tgt] = Derived(a, tgt, "direct", (e.translation.name,), e.translation, e.gate)
        seen = {a: []}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for e in adj.get(x, []):
                if e.target in seen:
                    continue
                seen[e.target] = seen[x] + [e]
                queue.append(e.target)
        for c in sorted(seen):
            if c == a or (a, c) in derived:
                continue
            derived[a, c] = _compose_path(reg, seen[c], b)
    return Registry(reg.logics, reg.edges, derived, reg.shared)


__all__ = ["DEFAULT_BOUNDS", "Derived", "Edge", "PREORDER_EDGES", "PREORDER_LOGICS", "Registry", "build_preorder",
           "build_registry", "evaluate_edge", "logic_reports"]
