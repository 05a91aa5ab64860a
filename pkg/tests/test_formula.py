import pytest
from hypothesis import given

from logictrans.formula import (Atom, FormulaError, Template, atoms, canonical_order, connective_count,
                                count_formulas, enumerate_formulas, indexed_atom, is_subformula_closed, parse,
                                placeholder, render, subformula_closure, substitute)

from conftest import formulas


@pytest.mark.parametrize("text", ["p", "top", "(not p)", "(-> p (not q))", "(box (not (box p)))",
                                  "(and (-> p q) d{p,q})", "(<-> p p)"])
def test_render_inverts_parse(text):
    assert render(parse(text)) == text


@given(formulas(unary=("not", "box"), binary=("and", "or", "->", "<->"), consts=("top", "bot")))
def test_roundtrip_property(f):
    assert parse(render(f)) == f


@pytest.mark.parametrize("bad", ["", "(not p", "(and p)", "p q", "()", "(not p))"])
def test_parse_errors(bad, cat):
    with pytest.raises(FormulaError):
        parse(bad, cat.logic("CPL").signature)


def test_signature_rejects_foreign_connective(cat):
    with pytest.raises(FormulaError):
        parse("(box p)", cat.logic("CPL").signature)


def test_indexed_atom_operands():
    a = indexed_atom("d", [parse("p"), parse("(not q)")])
    assert [render(x) for x in a.operands] == ["p", "(not q)"]
    assert parse(render(a)) == a


def test_atoms_and_size():
    f = parse("(-> p (and q p))")
    assert atoms(f) == {Atom("p"), Atom("q")}
    assert f.size == 5
    assert connective_count(f) == 2


@given(formulas())
def test_subformula_closure_is_closed(f):
    closure = subformula_closure([f])
    assert is_subformula_closed(closure)
    assert f in closure


def test_substitute_template():
    t = Template(parse("(-> #1 (-> #1 #2))"))
    assert render(substitute(t, [parse("p"), parse("(not q)")])) == "(-> p (-> p (not q)))"
    assert placeholder(2) == Atom("#2")


@pytest.mark.parametrize("name,leaves,nodes", [("CPL", 2, 5), ("CPL{not,->}", 2, 7), ("S4", 1, 4), ("L3", 3, 4)])
def test_enumeration_matches_independent_count(cat, name, leaves, nodes):
    sig = cat.logic(name).signature
    atom_list = ["p", "q", "r"][:leaves]
    fs = list(enumerate_formulas(sig, atom_list, nodes))
    assert len(fs) == len(set(fs)) == count_formulas(sig, leaves, nodes)
    assert all(f.size <= nodes for f in fs)
    sizes = [f.size for f in fs]
    assert sizes == sorted(sizes)


def test_canonical_order_is_stable():
    fs = [parse("(not p)"), parse("q"), parse("p")]
    assert [render(f) for f in canonical_order(fs)] == ["p", "q", "(not p)"]
