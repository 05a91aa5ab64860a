import pytest

from logictrans import CatalogError, build_counterexamples, kripke_corpus, load_catalog
from logictrans.catalog import parse_corpus
from logictrans.formula import parse, render
from logictrans.suites import Bounds, job_catalog
from logictrans.translation import apply_translation

USER = """
logic CPL2
  like CPL
  signature CPL

translation Neg
source CPL
target CPL2
main T
translator T
  atom identity
  clause not -> (not #1)
  clause and -> (not (or (not #1) (not #2)))
  clause or -> (or #1 #2)
  clause -> -> (or (not #1) #2)
"""


def test_builtin_names(cat):
    for name in ("CPL", "L3", "IPL", "S4", "K", "Grz", "R", "WPL", "Trivial", "atom-only", "toy{p,top}",
                 "toy{p,q,top}"):
        assert cat.logic(name).name == name
    for name in ("Tl", "Tg", "Tc", "TE", "TMoss", "Tprime", "Tt", "DemriGore", "Tx"):
        assert cat.translation(name)


def test_unknown_names(cat):
    with pytest.raises(CatalogError):
        cat.logic("nope")
    with pytest.raises(CatalogError):
        cat.translation("nope")


def test_user_catalog_merges(tmp_path):
    p = tmp_path / "extra.txt"
    p.write_text(USER)
    c = load_catalog([p])
    g = apply_translation(c.translation("Neg"), parse("(and p q)"))
    assert render(g) == "(not (or (not p) (not q)))"
    assert c.logic("CPL2").engine is not None


def test_shipped_entries_cannot_be_redefined(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text(USER.replace("translation Neg", "translation Tl"))
    with pytest.raises(CatalogError, match="shipped"):
        load_catalog([p])


def test_unknown_endpoint_rejected(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text(USER.replace("target CPL2", "target Nowhere"))
    with pytest.raises(CatalogError):
        load_catalog([p])


def test_missing_file():
    with pytest.raises(CatalogError):
        load_catalog(["/nonexistent/catalog.txt"])


def test_counterexample_entries(cat):
    names = [c.name for c in build_counterexamples(cat)]
    assert names == ["trivial-sublogic", "trivial-sublogic-injective", "delta-sublogic", "kuijer-trivial",
                     "relatedness-into-classical"]
    assert all(c.expect["gate_gg"] == "fail" for c in build_counterexamples(cat))


def test_kripke_corpus_covers_required_items():
    corpus = kripke_corpus()
    assert len(corpus) >= 10
    texts = {render(i.formula): i.expected for i in corpus}
    assert texts["(or p (not p))"]["IPL"] == "refuted"
    assert texts["(-> (not (not p)) p)"]["IPL"] == "refuted"
    assert texts["(or (box p) (box (not p)))"]["S4"] == "refuted"


def test_corpus_parse_errors():
    with pytest.raises(CatalogError):
        parse_corpus("p | IPL maybe")
    with pytest.raises(CatalogError):
        parse_corpus("p | IPL")


def test_recorded_expectations_hold(cat):
    """Every ``expect`` line in the shipped catalog matches the computed shape and gate."""
    _, expectations = job_catalog(cat, Bounds({}))
    assert expectations
    assert [e for e in expectations if not e["met"]] == []
