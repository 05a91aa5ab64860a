import pytest

from logictrans import kripke_corpus
from logictrans.formula import parse
from logictrans.verify import StatusCache, verify_corpus, verify_correspondence, verify_image_consistency


@pytest.fixture(scope="module")
def cache():
    return StatusCache(3)


def test_corpus_statuses(cat, cache):
    logics = {n: cat.logic(n) for n in ("CPL", "IPL", "S4", "Grz")}
    entries = verify_corpus(kripke_corpus(), logics, size_bound=3, cache=cache)
    assert entries
    assert [e.subject for e in entries if not e.passed] == []


def test_corpus_mismatch_detected(cat):
    from logictrans.catalog import parse_corpus
    wrong = parse_corpus("(or p (not p)) | IPL valid")
    e = verify_corpus(wrong, {"IPL": cat.logic("IPL")}, size_bound=2)[0]
    assert e.refuted and "expected valid" in e.reason


@pytest.mark.parametrize("name", ["Tc", "Tg", "DemriGore"])
def test_images_status_consistent(cat, cache, name):
    t = cat.translation(name)
    e = verify_image_consistency(t, *cat.endpoints(t), kripke_corpus(), size_bound=3, cache=cache)
    assert e.passed


def test_status_cache_reuses_results(cat):
    c = StatusCache(2)
    f = parse("(-> (box p) p)")
    assert c.status(cat.logic("K"), f) == "refuted"
    assert c.counter(cat.logic("K"), f) is c.counter(cat.logic("K"), f)


def test_correspondence_small(cat):
    e = verify_correspondence(cat.translation("Tx"), cat.logic("K"), max_nodes=4, max_worlds=2)
    assert e.status == "valid-exact"
    assert e.details["comparisons"] > 0
