import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from logictrans.formula import Apply, Atom, Const, parse
from logictrans.semantics import (REFUTED, VALID_BOUNDED, VALID_EXACT, consequence, entails, enumerate_models,
                                  evaluate, first_counter, holds_in, make_relatedness_model)

from conftest import formulas

HALF = Fraction(1, 2)


def luk(f, v):
    """Independent three-valued Lukasiewicz evaluation."""
    if isinstance(f, Atom):
        return v[f.name]
    if isinstance(f, Const):
        return Fraction(1) if f.value == "top" else Fraction(0)
    xs = [luk(a, v) for a in f.args]
    op = f.op
    if op == "not":
        return 1 - xs[0]
    if op == "and":
        return min(xs)
    if op == "or":
        return max(xs)
    if op == "->":
        return min(Fraction(1), 1 - xs[0] + xs[1])
    raise AssertionError(op)


def classical(f, v):
    return luk(f, {k: Fraction(int(x)) for k, x in v.items()}) == 1


def force(m, w, f):
    """Independent Kripke forcing; intuitionistic classes read -> and not over successors."""
    intu = m.frame_class in ("IPL", "MIN")
    succ = [u for u in m.worlds if m.succ[w] >> u & 1]
    if isinstance(f, Atom):
        return bool(m.valuation[f] >> w & 1)
    if isinstance(f, Const):
        return f.value == "top"
    op, a = f.op, f.args
    if op == "not":
        return all(not force(m, u, a[0]) for u in succ) if intu else not force(m, w, a[0])
    if op == "and":
        return force(m, w, a[0]) and force(m, w, a[1])
    if op == "or":
        return force(m, w, a[0]) or force(m, w, a[1])
    if op == "->":
        if intu:
            return all(not force(m, u, a[0]) or force(m, u, a[1]) for u in succ)
        return not force(m, w, a[0]) or force(m, w, a[1])
    if op == "box":
        return all(force(m, u, a[0]) for u in succ)
    if op == "dia":
        return any(force(m, u, a[0]) for u in succ)
    raise AssertionError(op)


@settings(max_examples=60)
@given(formulas(atoms=("p", "q"), consts=("top", "bot")))
def test_l3_matches_independent_tables(cat, f):
    logic = cat.logic("L3")
    for m in enumerate_models(logic, [f]):
        v = {a.name: x for a, x in m.valuation.items()}
        assert evaluate(m, f) == luk(f, v)


@settings(max_examples=60)
@given(formulas(atoms=("p", "q", "r")))
def test_cpl_matches_truth_tables(cat, f):
    expect = all(classical(f, dict(zip(("p", "q", "r"), bits))) for bits in itertools.product((0, 1), repeat=3))
    assert entails(cat.logic("CPL"), [], f) == expect


@pytest.mark.parametrize("logic", ["IPL", "S4", "K", "K4", "Grz"])
@settings(max_examples=25, deadline=None)
@given(f=formulas(atoms=("p",), unary=("not", "box"), max_leaves=4))
def test_kripke_forcing_matches_independent(cat, logic, f):
    spec = cat.logic(logic)
    if not spec.admits(f):
        return
    for m in enumerate_models(spec, [f], 2):
        assert holds_in(m, f) == force(m, m.point, f)


def relatedness_value(m, f):
    if isinstance(f, Atom):
        return m.valuation[f]
    op, a = f.op, f.args
    if op == "not":
        return not relatedness_value(m, a[0])
    if op == "and":
        return relatedness_value(m, a[0]) and relatedness_value(m, a[1])
    if op == "->":
        return (not relatedness_value(m, a[0]) or relatedness_value(m, a[1])) and m.lifted(a[0], a[1])
    raise AssertionError(op)


@settings(max_examples=40)
@given(formulas(atoms=("p", "q"), binary=("and", "->")))
def test_relatedness_matches_definition(cat, f):
    for m in enumerate_models(cat.logic("R"), [f]):
        assert m.value(f) == relatedness_value(m, f)


def test_relatedness_conditional_needs_shared_subject():
    f = parse("(-> p q)")
    assert not make_relatedness_model({"p": False, "q": True}).value(f)
    assert make_relatedness_model({"p": False, "q": True}, [("p", "q")]).value(f)


@pytest.mark.parametrize("logic,text,status", [
    ("CPL", "(or p (not p))", VALID_EXACT),
    ("L3", "(or p (not p))", REFUTED),
    ("L3", "(-> p (-> q p))", VALID_EXACT),
    ("IPL", "(or p (not p))", REFUTED),
    ("IPL", "(-> p (not (not p)))", VALID_BOUNDED),
    ("S4", "(-> (box p) (box (box p)))", VALID_BOUNDED),
    ("K", "(-> (box p) p)", REFUTED),
    ("Trivial", "p", VALID_EXACT),
])
def test_known_validities(cat, logic, text, status):
    assert consequence(cat.logic(logic), [], parse(text)).status == status


def test_l3_deduction_countermodel_is_canonical(cat):
    """p->(p->q), p |= q holds but p->(p->q) |= p->q fails at p=1/2, q=0."""
    logic = cat.logic("L3")
    pq = parse("(-> p (-> p q))")
    assert entails(logic, [pq, parse("p")], parse("q"))
    m = first_counter(logic, [pq], parse("(-> p q)"))
    assert m.to_json()["valuation"] == {"p": "1/2", "q": "0"}


def test_ipl_excluded_middle_countermodel_has_two_worlds(cat):
    m = first_counter(cat.logic("IPL"), [], parse("(or p (not p))"), 3)
    assert m.n == 2


@given(formulas(atoms=("p", "q")))
def test_consequence_is_reflexive_and_monotone(cat, f):
    logic = cat.logic("L3")
    assert entails(logic, [f], f)
    assert entails(logic, [f, parse("q")], f)
