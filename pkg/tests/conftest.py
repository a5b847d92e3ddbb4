import itertools
from pathlib import Path

import pytest
from hypothesis import strategies as st

from ror2cnf.core import Formula, make_clause

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_bytes(name):
    return (FIXTURES / name).read_bytes()


def truth_table_sat(f):
    # independent of the implication graph: enumerate every assignment
    vs = sorted(f.variables)
    for bits in itertools.product((False, True), repeat=len(vs)):
        a = dict(zip(vs, bits))
        if all(any(a[abs(l)] == (l > 0) for l in c) for c in f.clauses):
            return True
    return False


def truth_table_mu(f):
    if truth_table_sat(f):
        return False
    ids = list(f.ids)
    return all(truth_table_sat(f.subformula([j for j in ids if j != i])) for i in ids)


@st.composite
def clauses(draw, n):
    k = draw(st.sampled_from((1, 2, 2, 2))) if n > 1 else 1
    vs = draw(st.lists(st.integers(1, n), min_size=k, max_size=k, unique=True))
    return make_clause([v * draw(st.sampled_from((1, -1))) for v in vs])


@st.composite
def formulas(draw, max_vars=5, max_clauses=8, min_clauses=1):
    n = draw(st.integers(1, max_vars))
    cs = draw(st.lists(clauses(n), min_size=min_clauses, max_size=max_clauses))
    return Formula(tuple(cs))


@pytest.fixture
def crossed_pairs():
    return Formula.from_lists([[1, 2], [3, 4], [-1, -3], [-1, -4], [-2, -3], [-2, -4]])


@pytest.fixture
def full_square():
    return Formula.from_lists([[1, 2], [1, -2], [-1, 2], [-1, -2]])


@pytest.fixture
def diamond():
    return Formula.from_lists(
        [[1, 2], [-1, 3], [-1, 4], [-2, 3], [-2, 4], [-3, 5], [-3, 6], [-4, -5], [-4, -6]]
    )


@pytest.fixture
def seven():
    # 1 = x, 2 = a, 3 = b, 4 = c
    return Formula.from_lists([[1, 2], [-2, 3], [-2, 4], [-4, 3], [-3, 1], [-3, -1], [-1, 2]])
