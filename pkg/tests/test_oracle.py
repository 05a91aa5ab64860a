import pytest
from hypothesis import given, settings, strategies as st

from logictrans.formula import parse
from logictrans.semantics import first_counter
from logictrans.verify import Oracle
from logictrans.verify.framegrid import FrameGrid
from logictrans.verify.kripke import iso_representatives

from conftest import formulas

MODAL = formulas(atoms=("p", "q"), unary=("not", "box"), binary=("and", "or", "->"), consts=("bot",), max_leaves=4)
PLAIN = formulas(atoms=("p", "q"), binary=("and", "or", "->"), max_leaves=4)


def same(a, b):
    return (a is None and b is None) or (a is not None and b is not None and a.to_json() == b.to_json())


@pytest.mark.parametrize("logic,strategy,bound", [
    ("K", MODAL, 2), ("K4", MODAL, 3), ("S4", MODAL, 3), ("Grz", MODAL, 3),
    ("IPL", PLAIN, 3), ("MIN", PLAIN, 3), ("CPL", PLAIN, None), ("L3", PLAIN, None), ("WPL", PLAIN, None),
])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_oracle_agrees_with_reference(cat, logic, strategy, bound, data):
    spec = cat.logic(logic)
    prem = data.draw(st.lists(strategy, max_size=2))
    concl = data.draw(strategy)
    if not all(spec.admits(f) for f in (*prem, concl)):
        return
    o = Oracle(spec, [*prem, concl], bound)
    assert same(o.counter(prem, concl), first_counter(spec, prem, concl, bound))


def test_framegrid_counts_pointed_models(cat):
    """The full mask has one bit per pointed model of the engine."""
    spec = cat.logic("S4")
    p = parse("p")
    grid = FrameGrid("S4", [p], 3)
    pointed = sum(m.n for m in spec.engine.space([p], 3))
    assert grid.full.bit_count() == pointed


def test_framegrid_first_is_canonical(cat):
    spec = cat.logic("IPL")
    f = parse("(or p (not p))")
    grid = FrameGrid("IPL", [parse("p")], 3)
    m = grid.first(grid.full & ~grid.mask(f))
    assert m.to_json() == first_counter(spec, [], f, 3).to_json()


def test_iso_representatives_cover_all_classes(cat):
    spec = cat.logic("K")
    models = list(spec.engine.space([parse("p")], 2))
    reps = iso_representatives(models)
    assert len(reps) < len(models)
    f = parse("(-> (box p) (box (box p)))")
    assert ({m.forced(f) for m in reps for m in [m.at(w) for w in m.worlds]}
            == {m.at(w).forced(f) for m in models for w in m.worlds})
