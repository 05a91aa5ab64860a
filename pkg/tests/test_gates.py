import pytest

from logictrans.verify import (evaluate_edge, gate_expressiveness_g, gate_expressiveness_gg,
                               verify_truth_preservation)


def test_gate_g_passes_relatedness_map(cat):
    t = cat.translation("TE")
    mm = cat.model_map("f_E")
    tp = verify_truth_preservation(t, mm, *cat.endpoints(t), max_nodes=4)
    assert gate_expressiveness_g(t, mm, {"truth_preservation": tp}).passed


def test_gate_g_rejects_opaque(cat):
    t = cat.translation("Tt")
    mm = cat.model_map("f_t")
    tp = verify_truth_preservation(t, mm, *cat.endpoints(t), size_bound=2, max_nodes=3)
    assert tp.passed
    g = gate_expressiveness_g(t, mm, {"truth_preservation": tp})
    assert not g.passed and "finitely generated" in g.reason


def test_gate_g_without_map(cat):
    assert not gate_expressiveness_g(cat.translation("Tg"), None, {}).passed


@pytest.mark.parametrize("name,passes,reason", [
    ("Tl", True, None),
    ("Tg", True, None),
    ("TE", False, "model-map"),
    ("Tprime", False, "opaque"),
    ("Ttriv", False, "opaque"),
    ("IdTrivial", False, "theoremhood"),
])
def test_gate_gg(cat, name, passes, reason):
    t = cat.translation(name)
    edge = evaluate_edge(t, *cat.endpoints(t))
    assert edge.passes is passes
    if reason:
        assert reason in edge.gate.reason


def test_gate_gg_requires_theoremhood_report(cat):
    t = cat.translation("Tl")
    g = gate_expressiveness_gg(t, {}, *cat.endpoints(t))
    assert not g.passed
