import pytest

from logictrans.verify import build_preorder, build_registry
from logictrans.verify.registry import PREORDER_LOGICS


@pytest.fixture(scope="module")
def reg(cat):
    return build_preorder(build_registry(cat))


def test_all_logics_present(reg):
    assert set(PREORDER_LOGICS) <= set(reg.logics)


def test_reflexive(reg):
    for name in reg.logics:
        assert reg.derived[name, name].provenance == "reflexive"


def test_cpl_to_s4_by_weakened_composition(reg):
    d = reg.derived["CPL", "S4"]
    assert d.provenance == "composed-weakened"
    assert d.path == ("Tc", "Tg")
    assert d.verification.passed


def test_cpl_to_l3_composed(reg):
    d = reg.derived["CPL", "L3"]
    assert d.path == ("Tdef", "Tl")
    assert d.provenance == "composed-surjective"


def test_no_nontrivial_logic_below_trivial(reg):
    trivial = {n for (n, prop), e in reg.shared.items() if prop == "triviality" and e.passed}
    assert trivial == {"Trivial"}
    assert [k for k in reg.derived if k[1] in trivial and k[0] not in trivial] == []


def test_model_map_edge_excluded(reg):
    assert not reg.related("R", "CPL")
    assert not reg.edge("TE").passes


def test_idempotent(reg):
    assert build_preorder(reg).relation() == reg.relation()


def test_transitive(reg):
    pairs = set(reg.derived)
    for a, b in pairs:
        for c, d in pairs:
            if b == c:
                assert (a, d) in pairs
