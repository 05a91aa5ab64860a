import pytest

from logictrans.suites import (JOBS, SUITES, ConfigError, RunConfig, get_job, parse_bound_args, parse_edge,
                               resolve_edge, run_job)


def test_suites_cover_jobs():
    assert SUITES["all"] == tuple(JOBS)


@pytest.mark.parametrize("bounds", [{"max_nodes": 0}, {"bogus": 2}, {"max_nodes": "3"}])
def test_bad_bounds(bounds):
    with pytest.raises(ConfigError):
        RunConfig(bounds)


def test_bad_workers():
    with pytest.raises(ConfigError):
        RunConfig({}, workers=0)


def test_parse_bound_args():
    assert parse_bound_args(["max_nodes=4,max_atoms=1", "template_bound=3"]) == {
        "max_nodes": 4, "max_atoms": 1, "template_bound": 3}
    with pytest.raises(ConfigError):
        parse_bound_args(["max_nodes"])
    with pytest.raises(ConfigError):
        parse_bound_args(["max_nodes=x"])


def test_parse_edge():
    assert parse_edge("CPL->S4 via Tc+Tg") == ("CPL", "S4", ["Tc", "Tg"])
    with pytest.raises(ConfigError):
        parse_edge("CPL to L3")


def test_resolve_edge_fragment_and_composition(cat):
    t, s, g = resolve_edge(cat, "CPL->L3 via Tl")
    assert (s.name, g.name) == ("CPL{not,->}", "L3")
    t, s, g = resolve_edge(cat, "CPL->S4 via Tc+Tg")
    assert (s.name, g.name) == ("CPL", "S4")
    with pytest.raises(ConfigError):
        resolve_edge(cat, "CPL->L3 via Tg")
    with pytest.raises(ConfigError):
        resolve_edge(cat, "CPL->L3 via Nope")


def test_unknown_job():
    with pytest.raises(ConfigError):
        get_job("nope")


def test_run_job_is_plain_json():
    import json
    r = run_job("semantics", RunConfig({}, timing=False))
    assert r["job"] == "semantics"
    assert all(e["met"] for e in r["expectations"])
    json.dumps(r)
    assert all("elapsed_ms" not in e for e in r["entries"])


def test_edge_job_reports_theoremhood():
    r = run_job("edge:CPL->L3 via Tl", RunConfig({"max_nodes": 4}, timing=False))
    th = [e for e in r["entries"] if e["property"] == "theoremhood"]
    assert th[0]["verdict"] == "valid-exact"
    assert r["expectations"][0]["met"]
