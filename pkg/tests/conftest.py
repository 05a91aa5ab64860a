import pytest
from hypothesis import strategies as st

from logictrans import load_catalog
from logictrans.formula import Apply, Atom, Const


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def cat():
    return load_catalog()


def formulas(atoms=("p", "q"), unary=("not",), binary=("and", "or", "->"), consts=(), max_leaves=6):
    leaves = [Atom(a) for a in atoms] + [Const(c) for c in consts]
    base = st.sampled_from(leaves)

    def extend(inner):
        parts = []
        if unary:
            parts.append(st.builds(lambda op, a: Apply(op, (a,)), st.sampled_from(unary), inner))
        if binary:
            parts.append(st.builds(lambda op, a, b: Apply(op, (a, b)), st.sampled_from(binary), inner, inner))
        return st.one_of(*parts)

    return st.recursive(base, extend, max_leaves=max_leaves)
