import pytest
from hypothesis import given, settings

from logictrans.formula import atoms, parse, render
from logictrans.translation import (TranslationError, apply_translation, classify_shape, compose_translations,
                                    parse_clause_systems, render_clause_system)

from conftest import formulas


@pytest.mark.parametrize("name,text,image", [
    ("Tg", "(not p)", "(box (not (box p)))"),
    ("Tl", "(not p)", "(-> p (not p))"),
    ("Tl", "(-> p q)", "(-> p (-> p q))"),
    ("TE", "(-> p q)", "(and (-> p q) d{p,q})"),
    ("Tc", "(-> p (not q))", "(-> (not (not p)) (not (not (not q))))"),
    ("Tx", "(box p)", "(forall y (-> (R x y) (P y)))"),
    ("Tprime", "(-> p q)", "p{(-> p q)}"),
])
def test_known_images(cat, name, text, image):
    assert render(apply_translation(cat.translation(name), parse(text))) == image


def test_missing_clause_raises(cat):
    with pytest.raises(TranslationError):
        apply_translation(cat.translation("Tl"), parse("(and p q)"))


@pytest.mark.parametrize("name,named,absent", [
    ("Tg", {"compositional", "GR^C"}, {"definitional-shape"}),
    ("Tl", {"compositional", "GR^C", "definitional-shape"}, set()),
    ("Tprime", {"opaque"}, {"compositional", "general-recursive"}),
    ("DemriGore", {"general-recursive"}, {"compositional"}),
    ("Tx", {"GR (extended)"}, {"compositional"}),
    ("Glivenko", {"opaque"}, {"compositional"}),
])
def test_shape_classes(cat, name, named, absent):
    classes = set(classify_shape(cat.translation(name)).named_classes())
    assert named <= classes
    assert not absent & classes


def test_demri_gore_has_two_translators(cat):
    s = classify_shape(cat.translation("DemriGore"))
    assert s.translator_count == 2 and not s.single_translator


@pytest.mark.parametrize("name", ["Tl", "Tg", "Tc", "DemriGore", "TE", "TMoss", "Tx", "Tm1"])
def test_text_format_roundtrip(cat, name):
    t = cat.translation(name)
    text = render_clause_system(t)
    again = parse_clause_systems(text, "<test>")[0]
    assert render_clause_system(again) == text


@settings(max_examples=80)
@given(formulas(atoms=("p", "q"), binary=("and", "or", "->")))
def test_fused_composition_matches_sequential(cat, f):
    tdef, tl = cat.translation("Tdef"), cat.translation("Tl")
    fused = compose_translations(tdef, tl, "surjective")
    assert apply_translation(fused, f) == apply_translation(tl, apply_translation(tdef, f))


def test_composition_records_mode(cat):
    fused = compose_translations(cat.translation("Tc"), cat.translation("Tg"), "weakened")
    assert fused.metadata["composition"]["back_scope"] == "intersected range"
    assert (fused.source, fused.target) == ("CPL", "S4")


def test_composition_rejects_mismatch(cat):
    with pytest.raises(TranslationError):
        compose_translations(cat.translation("Tg"), cat.translation("Tl"))
    with pytest.raises(TranslationError):
        compose_translations(cat.translation("Tprime"), cat.translation("Tc"))


@given(formulas(atoms=("p", "q"), unary=("not",), binary=("->",)))
def test_tl_is_atom_preserving_and_grows(cat, f):
    g = apply_translation(cat.translation("Tl"), f)
    assert atoms(g) == atoms(f)
    assert g.size >= f.size
