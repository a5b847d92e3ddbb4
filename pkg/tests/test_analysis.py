import pytest
from hypothesis import given, settings, strategies as st

from ror2cnf.analysis import (
    gen_mu1,
    is_minimal_unsat,
    mu1_var_ror,
    mu_class,
    mu_unit_ror,
    reconstruct,
    split_over,
    split_tree,
    unit_shape,
)
from ror2cnf.core import Formula, deficiency
from ror2cnf.errors import PreconditionViolated, ProvenanceLost
from ror2cnf.resolution import READ_ONCE, VAR_ONCE, check

from conftest import formulas, truth_table_mu

CONTRADICTION = Formula.from_lists([[1], [-1]])
# (x), (-x v k), (-k v s), (-s v r), (-k v p), (-p v -r) with x..p = 1..5
Y_SHAPE = Formula.from_lists([[1], [-1, 2], [-2, 3], [-3, 4], [-2, 5], [-5, -4]])


@pytest.fixture
def seven_core(seven):
    return seven.subformula([1, 2, 5, 6, 7])


def test_mu_basics(seven):
    assert is_minimal_unsat(CONTRADICTION)
    assert mu_class(CONTRADICTION) == 1
    assert not is_minimal_unsat(seven)
    assert mu_class(Formula.from_lists([[1, 2]])) is None


def test_seven_core_class(seven_core):
    # 5 clauses over x, a, b: deficiency 2, and minimal (checked by truth table)
    assert truth_table_mu(seven_core)
    assert mu_class(seven_core) == 2


def test_crossed_pairs_is_mu2(crossed_pairs):
    assert mu_class(crossed_pairs) == 2


def test_unit_shapes(seven_core):
    chain = unit_shape(Formula.from_lists([[1], [-1, -2], [2]]))
    assert chain.kind == "two-unit-chain" and chain.chain == (1, 2, 3)
    y = unit_shape(Y_SHAPE)
    assert y.kind == "one-unit-y"
    assert y.stem == (1, 2)
    assert set(y.branch1 + y.branch2) == {3, 4, 5, 6}
    assert unit_shape(seven_core).kind == "no-unit"
    with pytest.raises(PreconditionViolated):
        unit_shape(Formula.from_lists([[1], [2]]))


def test_mu_unit_ror_lengths():
    chain = Formula.from_lists([[1], [-1, -2], [2]])
    assert len(mu_unit_ror(chain)) == 2
    d = mu_unit_ror(Y_SHAPE)
    # six clauses, read once: five steps
    assert len(d) == 5
    assert check(Y_SHAPE, d, READ_ONCE).valid
    assert len(mu_unit_ror(CONTRADICTION)) == 1


def test_split_seven_core_over_b(seven_core):
    pair = split_over(seven_core, 3)
    assert pair.f_x.ids == (1, 2, 7)
    assert pair.f_x.clauses == ((1, 2), (-2,), (-1, 2))
    assert pair.f_negx.ids == (5, 6)
    assert pair.f_negx.clauses == ((1,), (-1,))
    assert pair.disjunctive


def test_split_not_disjunctive(seven_core):
    pair = split_over(seven_core, 1)
    assert pair.shared == frozenset({2})
    assert not pair.disjunctive


def test_split_preconditions(seven):
    with pytest.raises(PreconditionViolated):
        split_over(CONTRADICTION, 1)
    with pytest.raises(PreconditionViolated):
        split_over(seven, 1)


def test_split_tree_seven_core(seven_core):
    t = split_tree(seven_core)
    # variables are tried in ascending order; a (=2) already splits disjunctively
    assert t.var == 2
    assert t.neg.var == 3
    assert all(leaf.nvars <= 1 for leaf in t.leaves())


def test_split_tree_absent(crossed_pairs):
    assert split_tree(crossed_pairs) is None
    assert split_tree(CONTRADICTION).is_leaf


def test_reconstruct(seven_core):
    pair = split_over(seven_core, 3)
    assert reconstruct(pair.f_negx, -3).clauses == ((1, -3), (-1, -3))
    assert reconstruct(CONTRADICTION, 5) == CONTRADICTION
    with pytest.raises(ProvenanceLost):
        reconstruct(pair.f_negx, 3)


def test_mu1_var_ror_small():
    assert len(mu1_var_ror(CONTRADICTION)) == 1
    f = Formula.from_lists([[1], [-1, 2], [-2]])
    d = mu1_var_ror(f)
    assert len(d) == 2
    assert check(f, d, VAR_ONCE).pivot_counts == {1: 1, 2: 1}
    with pytest.raises(PreconditionViolated):
        mu1_var_ror(Formula.from_lists([[1, 2], [1, -2], [-1, 2], [-1, -2]]), verify=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 9), st.integers(0, 10**6))
def test_generated_formulas_are_mu1(n, seed):
    f = gen_mu1(n, seed)
    assert f.nvars == n
    assert deficiency(f) == 1
    assert truth_table_mu(f)


def test_generator_is_deterministic():
    assert gen_mu1(30, 5) == gen_mu1(30, 5)
    assert gen_mu1(30, 5) != gen_mu1(30, 6)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(0, 10**6))
def test_mu1_refutations_var_once_and_read_once(n, seed):
    f = gen_mu1(n, seed)
    d = mu1_var_ror(f)
    assert check(f, d, VAR_ONCE).valid
    assert check(f, d, READ_ONCE).valid
    assert len(d) == len(f) - 1


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10**6))
def test_mu1_splits(n, seed):
    f = gen_mu1(n, seed)
    assert split_tree(f) is not None
    for x in sorted(f.variables):
        pair = split_over(f, x)
        for side, lit in ((pair.f_x, x), (pair.f_negx, -x)):
            assert mu_class(side) == 1
            assert check(side, mu_unit_ror(side), READ_ONCE).valid
            assert set(reconstruct(side, lit)) <= set(f)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_disjunctive_split_is_order_independent(n, seed):
    f = gen_mu1(n, seed)
    for x in sorted(f.variables):
        pair = split_over(f, x)
        if pair.disjunctive:
            again = split_over(f, x, order=sorted(f.ids, reverse=True))
            assert (again.f_x.ids, again.f_negx.ids) == (pair.f_x.ids, pair.f_negx.ids)


@settings(max_examples=150, deadline=None)
@given(formulas(max_vars=4, max_clauses=7))
def test_mu_agrees_with_truth_table(f):
    assert is_minimal_unsat(f) == truth_table_mu(f)
