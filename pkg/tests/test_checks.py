import pytest
from hypothesis import given, settings

from logictrans import build_counterexamples
from logictrans.formula import parse, render
from logictrans.semantics import first_counter
from logictrans.translation import apply_translation
from logictrans.verify import (VerificationError, default_pool, search_general_dt, verify_conservativity,
                               verify_dt_preservation, verify_ec_bounded, verify_gv_sublogic, verify_pt_connective,
                               verify_standard_dt, verify_theoremhood, verify_triviality, verify_truth_preservation)

from conftest import formulas


def endpoints(cat, name):
    t = cat.translation(name)
    return (t, *cat.endpoints(t))


def test_truth_preservation_needs_model_map(cat):
    t, s, g = endpoints(cat, "Tg")
    with pytest.raises(VerificationError, match="model map"):
        verify_truth_preservation(t, None, s, g)


def test_truth_preservation_relatedness(cat):
    t, s, g = endpoints(cat, "TE")
    e = verify_truth_preservation(t, cat.model_map("f_E"), s, g, max_nodes=4)
    assert e.status == "valid-exact"


def test_truth_preservation_by_construction(cat):
    t, s, g = endpoints(cat, "Tt")
    e = verify_truth_preservation(t, cat.model_map("f_t"), s, g, size_bound=2, max_nodes=3)
    assert e.status == "valid-bounded"


def test_theoremhood_tl(cat):
    t, s, g = endpoints(cat, "Tl")
    assert verify_theoremhood(t, s, g, max_nodes=5).status == "valid-exact"


def test_theoremhood_constant_map_refuted(cat):
    t, s, g = endpoints(cat, "Tconst")
    e = verify_theoremhood(t, s, g)
    assert e.refuted
    assert "p is not valid" in e.reason


def test_godel_image_of_excluded_middle(cat):
    t, s, g = endpoints(cat, "Tg")
    f = parse("(or p (not p))")
    assert first_counter(s, [], f, 2).n == 2
    assert first_counter(g, [], apply_translation(t, f), 2).n == 2
    assert verify_theoremhood(t, s, g, max_nodes=3).status == "valid-bounded"


@pytest.mark.parametrize("name,status", [("Tl", "valid-exact"), ("Tincl", "valid-exact"), ("TMoss", "skipped")])
def test_conservativity(cat, name, status):
    t, s, g = endpoints(cat, name)
    assert verify_conservativity(t, s, g).status == status


def test_gv_witnesses(cat):
    for ce in build_counterexamples(cat)[:3]:
        w = ce.payload["witness"]
        s, g = cat.endpoints(w.translation)
        e = verify_gv_sublogic(w, s, g, max_nodes=3)
        assert e.status.startswith("valid"), ce.name
    injective = build_counterexamples(cat)[1]
    w = injective.payload["witness"]
    assert verify_gv_sublogic(w, *cat.endpoints(w.translation), max_nodes=3).details["injective"]


def test_gv_unsatisfiable_guard(cat):
    w = build_counterexamples(cat)[2].payload["witness"].with_theta((parse("(and p (not p))"),))
    e = verify_gv_sublogic(w, cat.logic("WPL"), cat.logic("CPL"), max_nodes=3)
    assert e.refuted and e.details["a"] == "fail"


def test_standard_dt(cat):
    assert verify_standard_dt(cat.logic("CPL")).status == "valid-exact"
    assert verify_standard_dt(cat.logic("IPL")).status == "valid-bounded"
    e = verify_standard_dt(cat.logic("L3"))
    assert e.refuted
    cm = next(w for w in e.witnesses if w.get("role") == "countermodel")
    assert cm["model"]["valuation"] == {"p": "1/2", "q": "0"}


def test_default_pool_has_contraction_premise(cat):
    assert parse("(-> p (-> p q))") in default_pool(cat.logic("L3"))


@pytest.mark.parametrize("logic,template", [("L3", "(-> #1 (-> #1 #2))"), ("CPL", "(-> #1 #2)"),
                                            ("atom-only", None)])
def test_general_dt_search(cat, logic, template):
    e = search_general_dt(cat.logic(logic), template_bound=7)
    assert e.details.get("template") == template


@pytest.mark.parametrize("name,status", [("Tl", "pass"), ("Tg", "pass"), ("TE", "skipped")])
def test_dt_preservation(cat, name, status):
    t, s, g = endpoints(cat, name)
    reports = {"standard_dt": verify_standard_dt(s), "conservativity": verify_conservativity(t, s, g)}
    e = verify_dt_preservation(t, s, g, reports)
    got = "pass" if e.passed else ("skipped" if e.skipped else "fail")
    assert got == status
    if name == "TE":
        assert "GR^C" in e.reason


def test_dt_preservation_image_template(cat):
    t, s, g = endpoints(cat, "Tg")
    reports = {"standard_dt": verify_standard_dt(s), "conservativity": verify_conservativity(t, s, g)}
    e = verify_dt_preservation(t, s, g, reports)
    assert e.details["alpha"] == "(box (-> #1 #2))"


@pytest.mark.parametrize("logic,present", [("toy{p,top}", True), ("toy{p,q,top}", True)])
def test_relaxed_implication_in_toys(cat, logic, present):
    """Both toys have a relaxed implication when any theorem may stand in; see the ledger."""
    e = verify_pt_connective(cat.logic(logic), "implication", "relaxed-instancewise")
    assert e.details["present"] is present


def test_strict_implication_absent_in_larger_toy(cat):
    e = verify_pt_connective(cat.logic("toy{p,q,top}"), "implication", "strict-template")
    assert e.details["present"] is False


@pytest.mark.parametrize("role,template", [("conjunction", "(and #1 #2)"), ("disjunction", "(or #1 #2)"),
                                           ("implication", "(-> #1 #2)"), ("negation", "(not #1)"),
                                           ("falsum", "(<-> #1 (not #1))")])
def test_cpl_strict_connectives(cat, role, template):
    e = verify_pt_connective(cat.logic("CPL"), role, "strict-template", template_bound=4)
    assert e.details["template"] == template


@pytest.mark.parametrize("logic,atoms,trivial", [("Trivial", ("p", "q"), True), ("CPL", ("p", "q"), False),
                                                 ("WPL", ("p",), False)])
def test_triviality(cat, logic, atoms, trivial):
    e = verify_triviality(cat.logic(logic), atoms=atoms)
    assert e.details["trivial"] is trivial


def test_triviality_witnesses(cat):
    assert verify_triviality(cat.logic("CPL")).witnesses[0] == {"premise": "p", "conclusion": "q"}
    assert verify_triviality(cat.logic("WPL"), atoms=("p",)).witnesses[0] == {"premise": "p",
                                                                               "conclusion": "(not p)"}


@pytest.mark.parametrize("a,b,ok", [("CPL{not,and}", "CPL{not,and,or}", True), ("CPL{not,and,or}", "CPL{not,and}", True),
                                    ("atom-only", "CPL", True), ("CPL", "atom-only", False), ("CPL", "CPL", True)])
def test_ec_bounded(cat, a, b, ok):
    e = verify_ec_bounded(cat.logic(a), cat.logic(b))
    assert e.passed is ok
    if not ok:
        assert "(and p q)" in e.details["unmatched"]


def test_ec_requires_shared_engine(cat):
    with pytest.raises(VerificationError):
        verify_ec_bounded(cat.logic("CPL"), cat.logic("L3"))


@settings(max_examples=40, deadline=None)
@given(formulas(atoms=("p", "q"), binary=("->",)))
def test_tl_preserves_and_reflects_validity(cat, f):
    from logictrans.semantics import entails
    t, s, g = endpoints(cat, "Tl")
    assert entails(s, [], f) == entails(g, [], apply_translation(t, f))
