"""Named verification jobs with expected outcomes.

A job takes a catalog and bounds and returns check entries together with
expectation records ``{check, expected, observed, met}``. Suites are
ordered lists of jobs; the CLI runs jobs in a worker pool and merges
results in submission order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .catalog import Catalog, CatalogError, build_counterexamples, kripke_corpus, load_catalog
from .translation import ClauseSystem, TranslationError, classify_shape, compose_translations
from .verify import (CheckEntry, build_preorder, build_registry, evaluate_edge, gate_expressiveness_g,
                     gate_expressiveness_gg, search_general_dt, verify_conservativity, verify_corpus,
                     verify_correspondence, verify_dt_preservation, verify_ec_bounded, verify_gv_sublogic,
                     verify_image_consistency, verify_pt_connective, verify_standard_dt, verify_theoremhood,
                     verify_triviality, verify_truth_preservation)
from .verify.kripke import StatusCache

BOUND_KEYS = ("max_nodes", "max_atoms", "max_model_size", "premise_pool_size", "template_bound")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    bounds: dict = field(default_factory=dict)
    catalog_paths: tuple[str, ...] = ()
    workers: int = 1
    timing: bool = True

    def __post_init__(self):
        for k, v in self.bounds.items():
            if k not in BOUND_KEYS:
                raise ConfigError(f"unknown bound {k!r}; known: {', '.join(BOUND_KEYS)}")
            if not isinstance(v, int) or v < 1:
                raise ConfigError(f"bound {k} must be a positive integer")
        if self.workers < 1:
            raise ConfigError("workers must be positive")


class Bounds:
    """Per-job defaults, overridden by user bounds."""

    def __init__(self, user: dict):
        self.user = dict(user)

    def get(self, key: str, default: int) -> int:
        return self.user.get(key, default)

    def atoms(self, default: int = 2) -> tuple[str, ...]:
        return ("p", "q", "r", "s")[: self.get("max_atoms", default)]


def expectation(check: str, expected, observed) -> dict:
    return {"check": check, "expected": expected, "observed": observed, "met": expected == observed}


def _pf(entry: CheckEntry) -> str:
    return "pass" if entry.passed else ("skipped" if entry.skipped else "fail")


def _want_gate(value) -> str:
    return "pass" if value in (True, "pass") else "fail"


JobResult = tuple[list[CheckEntry], list[dict]]


# --------------------------------------------------------------------------
# Jobs
# --------------------------------------------------------------------------


def job_theorems(cat: Catalog, b: Bounds) -> JobResult:
    """Conservativity of T^l, Epstein truth preservation, both Mossakowski biconditionals."""
    atoms = b.atoms()
    es, ex = [], []
    tl = cat.translation("Tl")
    e = verify_theoremhood(tl, cat.logic("CPL{not,->}"), cat.logic("L3"), atoms=atoms, max_nodes=b.get("max_nodes", 7))
    es.append(e)
    ex.append(expectation("Tl theoremhood", "valid-exact", e.status))
    full = compose_translations(cat.translation("Tdef"), tl, "surjective")
    e = verify_theoremhood(full, cat.logic("CPL"), cat.logic("L3"), atoms=atoms, max_nodes=b.get("max_nodes", 7))
    es.append(e)
    ex.append(expectation("Tl after Tdef theoremhood", "valid-exact", e.status))
    e = verify_truth_preservation(cat.translation("TE"), cat.model_map("f_E"), cat.logic("R"), cat.logic("CPL"),
                                  atoms=atoms, max_nodes=b.get("max_nodes", 6))
    es.append(e)
    ex.append(expectation("TE with f_E truth preservation", "valid-exact", e.status))
    e = verify_truth_preservation(cat.translation("TMoss"), cat.model_map("f"), cat.logic("CPL"), cat.logic("WPL"),
                                  atoms=atoms, max_nodes=b.get("max_nodes", 6))
    es.append(e)
    ex.append(expectation("TMoss with f truth preservation", "valid-exact", e.status))
    delta = next(c for c in build_counterexamples(cat) if c.name == "delta-sublogic").payload["witness"]
    e = verify_gv_sublogic(delta, cat.logic("WPL"), cat.logic("CPL"), atoms=atoms, max_nodes=b.get("max_nodes", 6))
    es.append(e)
    ex.append(expectation("Tprime with f_prime and delta", "valid-exact", e.status))
    return es, ex


def _gg_reports(t: ClauseSystem, cat: Catalog, b: Bounds) -> dict:
    source, target = cat.endpoints(t)
    out = {}
    try:
        out["theoremhood"] = verify_theoremhood(t, source, target, atoms=b.atoms(), max_nodes=b.get("max_nodes", 3),
                                                size_bound=b.user.get("max_model_size"))
    except TranslationError:
        pass
    return out


def job_counterexamples(cat: Catalog, b: Bounds) -> JobResult:
    """Over-generation witnesses and their gate outcomes."""
    es, ex = [], []
    size = b.get("max_model_size", 2)
    for ce in build_counterexamples(cat):
        payload, want = ce.payload, ce.expect
        w = payload.get("witness")
        t = w.translation if w is not None else payload["translation"]
        source, target = cat.endpoints(t)
        if w is not None:
            e = verify_gv_sublogic(w, source, target, atoms=b.atoms(), max_nodes=b.get("max_nodes", 4))
            es.append(e)
            ex.append(expectation(f"{ce.name}: gv", want["gv"], _pf(e)))
            if "injective" in want:
                got = "yes" if e.details.get("injective") else "no"
                ex.append(expectation(f"{ce.name}: injective", want["injective"], got))
        else:
            mm = payload["model_map"]
            e = verify_truth_preservation(t, mm, source, target, atoms=b.atoms(), max_nodes=b.get("max_nodes", 4),
                                          size_bound=size)
            es.append(e)
            ex.append(expectation(f"{ce.name}: truth preservation", want["truth_preservation"], _pf(e)))
            g = gate_expressiveness_g(t, mm, {"truth_preservation": e})
            es.append(g)
            ex.append(expectation(f"{ce.name}: gate g", want["gate_g"], _pf(g)))
        gg = gate_expressiveness_gg(t, _gg_reports(t, cat, b), source, target)
        es.append(gg)
        ex.append(expectation(f"{ce.name}: gate gg", want["gate_gg"], _pf(gg)))
    return es, ex


def job_dt(cat: Catalog, b: Bounds) -> JobResult:
    """Standard and general deduction theorems and their preservation."""
    es, ex = [], []
    atoms = b.atoms()
    want = {"CPL": "valid-exact", "L3": "refuted", "IPL": "valid-bounded", "S4": "valid-bounded", "R": "refuted",
            "WPL": "valid-exact"}
    sdt = {}
    for name, status in want.items():
        e = verify_standard_dt(cat.logic(name), atoms=atoms, max_nodes=b.get("max_nodes", 2),
                               size_bound=b.user.get("max_model_size"))
        sdt[name] = e
        es.append(e)
        ex.append(expectation(f"{name} standard DT", status, e.status))
    l3 = sdt["L3"]
    cm = next((w for w in l3.witnesses if w.get("role") == "countermodel"), None)
    got = cm["model"]["valuation"] if cm else None
    ex.append(expectation("L3 DT countermodel", {"p": "1/2", "q": "0"}, got))
    tb = b.get("template_bound", 7)
    for name, tpl in (("L3", "(-> #1 (-> #1 #2))"), ("CPL", "(-> #1 #2)"), ("atom-only", None)):
        e = search_general_dt(cat.logic(name), template_bound=tb, atoms=atoms, max_nodes=b.get("max_nodes", 2))
        es.append(e)
        ex.append(expectation(f"{name} general DT template", tpl, e.details.get("template")))
    for tn, status in (("Tl", "pass"), ("Tg", "pass"), ("TE", "skipped")):
        t = cat.translation(tn)
        source, target = cat.endpoints(t)
        reports = {"standard_dt": sdt.get(source.name) or verify_standard_dt(source, atoms=atoms)}
        reports["conservativity"] = verify_conservativity(t, source, target, atoms=atoms)
        e = verify_dt_preservation(t, source, target, reports, atoms=atoms, max_nodes=b.get("max_nodes", 2))
        es.append(e)
        ex.append(expectation(f"{tn} DT preservation", status, _pf(e)))
    return es, ex


def job_connectives(cat: Catalog, b: Bounds) -> JobResult:
    """Proof-theoretic connectives in the toy logics and in CPL."""
    es, ex = [], []
    for name, want in (("toy{p,top}", True), ("toy{p,q,top}", False)):
        e = verify_pt_connective(cat.logic(name), "implication", "relaxed-instancewise")
        es.append(e)
        ex.append(expectation(f"{name} implication present (relaxed)", want, e.details.get("present")))
    for role, tpl in (("conjunction", "(and #1 #2)"), ("disjunction", "(or #1 #2)"), ("implication", "(-> #1 #2)")):
        e = verify_pt_connective(cat.logic("CPL"), role, "strict-template",
                                 template_bound=b.get("template_bound", 4))
        es.append(e)
        ex.append(expectation(f"CPL strict {role}", tpl, e.details.get("template")))
    return es, ex


def job_kripke(cat: Catalog, b: Bounds) -> JobResult:
    """Corpus statuses at bound 4 (bound 3 for K) and status-consistent images."""
    es, ex = [], []
    corpus = kripke_corpus()
    size = b.get("max_model_size", 4)
    cache = StatusCache(size)
    main = {n: cat.logic(n) for n in ("CPL", "IPL", "S4", "Grz")}
    entries = verify_corpus(corpus, main, size_bound=size, cache=cache)
    entries += verify_corpus(corpus, {"K": cat.logic("K")}, size_bound=min(size, 3))
    es += entries
    bad = [e.subject for e in entries if not e.passed]
    ex.append(expectation("corpus statuses", [], bad))
    for tn in ("Tc", "Tg", "DemriGore"):
        t = cat.translation(tn)
        source, target = cat.endpoints(t)
        e = verify_image_consistency(t, source, target, corpus, size_bound=size, cache=cache)
        es.append(e)
        ex.append(expectation(f"{tn} image statuses", "pass", _pf(e)))
    return es, ex


def job_correspondence(cat: Catalog, b: Bounds) -> JobResult:
    """Forcing against first-order evaluation of the standard translation."""
    e = verify_correspondence(cat.translation("Tx"), cat.logic("K"), atoms=b.atoms(1),
                              max_nodes=b.get("max_nodes", 5), max_worlds=b.get("max_model_size", 3))
    return [e], [expectation("Tx correspondence", "valid-exact", e.status)]


def job_semantics(cat: Catalog, b: Bounds) -> JobResult:
    """Triviality and bounded expressive power."""
    es, ex = [], []
    for name, atoms, want in (("Trivial", ("p", "q"), True), ("CPL", ("p", "q"), False), ("WPL", ("p",), False)):
        e = verify_triviality(cat.logic(name), atoms=atoms)
        es.append(e)
        ex.append(expectation(f"{name} trivial", want, e.details.get("trivial")))
    for l1, l2, want in (("CPL{not,and}", "CPL{not,and,or}", "pass"), ("CPL{not,and,or}", "CPL{not,and}", "pass"),
                         ("atom-only", "CPL", "pass"), ("CPL", "atom-only", "fail"), ("CPL", "CPL", "pass")):
        e = verify_ec_bounded(cat.logic(l1), cat.logic(l2), max_nodes=b.get("max_nodes", 3))
        es.append(e)
        ex.append(expectation(f"{l1} <=EC {l2}", want, _pf(e)))
    return es, ex


def job_catalog(cat: Catalog, b: Bounds) -> JobResult:
    """Shape flags and gg verdicts recorded as ``expect`` lines in the catalog."""
    es, ex = [], []
    cache: dict = {}
    for name in sorted(cat.translations):
        t = cat.translation(name)
        want = dict(t.metadata.get("expect", {}))
        shape = classify_shape(t).to_json()
        for key, value in sorted(want.items()):
            if key in shape:
                ex.append(expectation(f"{name} {key}", str(value), str(shape[key])))
        if "gate_gg" in want:
            source, target = cat.endpoints(t)
            edge = evaluate_edge(t, source, target, cache, {"max_nodes": b.get("max_nodes", 3)})
            es += edge.entries()
            ex.append(expectation(f"{name} gate gg", _want_gate(want["gate_gg"]), _pf(edge.gate)))
    return es, ex


def job_preorder(cat: Catalog, b: Bounds) -> JobResult:
    """Registry, closure and idempotence."""
    bounds = {"max_nodes": b.get("max_nodes", 3)}
    reg = build_preorder(build_registry(cat, bounds=bounds), bounds)
    again = build_preorder(reg, bounds)
    es = reg.entries()
    ex = []
    d = reg.derived.get(("CPL", "S4"))
    ex.append(expectation("CPL to S4 provenance", "composed-weakened", d.provenance if d else None))
    ex.append(expectation("CPL to S4 re-verified", "pass", _pf(d.verification) if d and d.verification else None))
    d = reg.derived.get(("CPL", "L3"))
    ex.append(expectation("CPL to L3 derived", True, d is not None))
    trivial = {name for (name, prop), e in reg.shared.items() if prop == "triviality" and e.passed}
    into = sorted(f"{a}->{c}" for (a, c) in reg.derived if c in trivial and a not in trivial)
    ex.append(expectation("no non-trivial logic below a trivial one", [], into))
    ex.append(expectation("closure idempotent", True, again.relation() == reg.relation()))
    ex.append(expectation("reflexive", True, all((n, n) in reg.derived for n in reg.logics)))
    return es, ex


JOBS: dict[str, Callable[[Catalog, Bounds], JobResult]] = {
    "theorems": job_theorems,
    "counterexamples": job_counterexamples,
    "dt": job_dt,
    "connectives": job_connectives,
    "kripke": job_kripke,
    "correspondence": job_correspondence,
    "semantics": job_semantics,
    "catalog": job_catalog,
    "preorder": job_preorder,
}

SUITES: dict[str, tuple[str, ...]] = {name: (name,) for name in JOBS}
SUITES["all"] = tuple(JOBS)


# --------------------------------------------------------------------------
# Edge specs
# --------------------------------------------------------------------------

EDGE_RE = re.compile(r"^\s*(\S+)\s*->\s*(\S+)\s+via\s+(\S+)\s*$")


def parse_edge(spec: str) -> tuple[str, str, list[str]]:
    m = EDGE_RE.match(spec)
    if not m:
        raise ConfigError(f"edge spec must look like 'SRC->TGT via T[+T2...]', got {spec!r}")
    return m.group(1), m.group(2), m.group(3).split("+")


def _fragment_of(declared: str, requested: str) -> bool:
    return declared == requested or declared.startswith(requested + "{")


def resolve_edge(cat: Catalog, spec: str) -> tuple[ClauseSystem, object, object]:
    src, tgt, names = parse_edge(spec)
    try:
        ts = [cat.translation(n) for n in names]
        cat.logic(src), cat.logic(tgt)
    except CatalogError as e:
        raise ConfigError(str(e)) from None
    t = ts[0]
    for nxt in ts[1:]:
        try:
            t = compose_translations(t, nxt, "weakened")
        except TranslationError as e:
            raise ConfigError(f"cannot compose: {e}") from None
    if not _fragment_of(t.source, src) or t.target != tgt:
        raise ConfigError(f"{'+'.join(names)} translates {t.source} to {t.target}, not {src} to {tgt}")
    return t, cat.logic(t.source), cat.logic(t.target)


def job_edge(spec: str) -> Callable[[Catalog, Bounds], JobResult]:
    def run(cat: Catalog, b: Bounds) -> JobResult:
        t, source, target = resolve_edge(cat, spec)
        edge = evaluate_edge(t, source, target, {}, {"max_nodes": b.get("max_nodes", 3)})
        want = _want_gate(t.metadata.get("expect", {}).get("gate_gg", "pass"))
        return edge.entries(), [expectation(f"{spec}: gate gg", want, _pf(edge.gate))]
    return run


def get_job(name: str) -> Callable[[Catalog, Bounds], JobResult]:
    if name.startswith("edge:"):
        return job_edge(name[5:])
    if name not in JOBS:
        raise ConfigError(f"unknown job {name!r}")
    return JOBS[name]


def run_job(name: str, config: RunConfig) -> dict:
    """Run one job and return its plain JSON result (picklable across processes)."""
    cat = load_catalog(list(config.catalog_paths))
    entries, expectations = get_job(name)(cat, Bounds(config.bounds))
    return {"job": name, "entries": [e.to_json(config.timing) for e in entries], "expectations": expectations}


def parse_bound_args(items) -> dict:
    out = {}
    for item in items or ():
        for part in item.replace(",", " ").split():
            k, sep, v = part.partition("=")
            if not sep:
                raise ConfigError(f"bounds are k=v pairs, got {part!r}")
            try:
                out[k.strip()] = int(v)
            except ValueError:
                raise ConfigError(f"bound {k} must be an integer") from None
    return out


__all__ = ["BOUND_KEYS", "ConfigError", "JOBS", "RunConfig", "SUITES", "expectation", "get_job", "parse_bound_args",
           "parse_edge", "resolve_edge", "run_job"]
