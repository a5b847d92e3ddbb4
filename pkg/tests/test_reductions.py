import pytest
from hypothesis import given, settings, strategies as st

from ror2cnf.core import Formula
from ror2cnf.decision import decide_ror, decide_var_ror
from ror2cnf.errors import FormatSyntaxError, NotFromReduction, SelfLoop, TooLarge, VerticesNotDistinct
from ror2cnf.resolution import READ_ONCE, check
from ror2cnf.reductions import (
    EDGE,
    VERTEX,
    CyclePair,
    Digraph,
    brute_force_cycle,
    brute_force_dpp,
    cycle_to_2cnf,
    dpp_to_cdpp,
    gen_random_2cnf,
    gen_random_digraph,
    is_valid_cycle_pair,
    parse_digraph,
    refutation_to_cycle,
    write_digraph,
)

from conftest import fixture_bytes

# s = 1, t = 2
SQUARE = Digraph(4, ((1, 3), (3, 2), (2, 4), (4, 1)), (1,), (2,))
SHARED_MIDDLE = Digraph(3, ((1, 3), (3, 2), (2, 3), (3, 1)), (1,), (2,))
# every route s ~> t and t ~> s passes through the edge 5 -> 4
FUNNEL = Digraph(5, ((1, 5), (2, 5), (3, 1), (3, 4), (4, 1), (4, 2), (5, 4)), (1,), (2,))


def test_dpp_to_cdpp_isolated():
    g = Digraph(4)
    h, s, t = dpp_to_cdpp(g, 1, 2, 3, 4)
    assert (s, t) == (5, 6)
    assert h.edges == ((5, 1), (4, 5), (2, 6), (6, 3))


def test_dpp_to_cdpp_with_pair_edges():
    g = Digraph(4, ((1, 2), (3, 4)))
    h, s, t = dpp_to_cdpp(g, 1, 2, 3, 4)
    pair = brute_force_cycle(h, s, t, VERTEX)
    assert pair is not None and is_valid_cycle_pair(h, s, t, pair)
    with pytest.raises(VerticesNotDistinct):
        dpp_to_cdpp(g, 1, 1, 3, 4)


def test_encoding_rules():
    f, prov = cycle_to_2cnf(SQUARE, 1, 2)
    # x0 -> x3, x3 -> -x0, -x0 -> x4, x4 -> x0 with x3 = 2, x4 = 3
    assert f.clauses == ((-1, 2), (-1, -2), (1, 3), (1, -3))
    assert prov.occ_of == {(1, 3): 1, (3, 2): 2, (2, 4): 3, (4, 1): 4}


def test_encoding_direct_edges():
    f, _ = cycle_to_2cnf(Digraph(2, ((1, 2), (2, 1))), 1, 2)
    assert f.clauses == ((-1,), (1,))
    with pytest.raises(SelfLoop):
        cycle_to_2cnf(Digraph(3, ((3, 3),)), 1, 2)


def test_brute_force_cycle_examples():
    assert brute_force_cycle(SQUARE, 1, 2, VERTEX) == CyclePair((1, 3, 2), (2, 4, 1), VERTEX)
    assert brute_force_cycle(SHARED_MIDDLE, 1, 2, VERTEX) is None
    assert brute_force_cycle(SHARED_MIDDLE, 1, 2, EDGE) == CyclePair((1, 3, 2), (2, 3, 1), EDGE)
    one_way = Digraph(3, ((1, 3), (3, 2)))
    assert brute_force_cycle(one_way, 1, 2, VERTEX) is None
    assert brute_force_cycle(one_way, 1, 2, EDGE) is None
    with pytest.raises(TooLarge):
        brute_force_cycle(Digraph(11), 1, 2)


def test_refutation_to_cycle_square():
    f, prov = cycle_to_2cnf(SQUARE, 1, 2)
    v = decide_var_ror(f)
    pair = refutation_to_cycle(v.certificate, prov, VERTEX)
    assert pair == brute_force_cycle(SQUARE, 1, 2, VERTEX)


def test_refutation_to_cycle_direct_edges():
    g = Digraph(2, ((1, 2), (2, 1)))
    f, prov = cycle_to_2cnf(g, 1, 2)
    v = decide_ror(f)
    assert len(v.certificate) == 1
    assert refutation_to_cycle(v.certificate, prov, EDGE) == CyclePair((1, 2), (2, 1), EDGE)


def test_refutation_to_cycle_unrelated():
    _, prov = cycle_to_2cnf(Digraph(2, ((1, 2),)), 1, 2)
    r = decide_ror(Formula.from_lists([[2], [1], [-1]])).certificate
    with pytest.raises(NotFromReduction):
        refutation_to_cycle(r, prov, EDGE)


def test_edge_encoding_overapproximates():
    # a read-once refutation exists although no edge-disjoint cycle does:
    # resolving on x0 merges the two routes into 5 before they share 5 -> 4
    f, prov = cycle_to_2cnf(FUNNEL, 1, 2)
    assert brute_force_cycle(FUNNEL, 1, 2, EDGE) is None
    v = decide_ror(f)
    assert v.is_yes and check(f, v.certificate, READ_ONCE).valid
    assert [s.pivot for s in v.certificate.steps].count(1) == 2
    with pytest.raises(NotFromReduction):
        refutation_to_cycle(v.certificate, prov, EDGE)


def test_generators():
    assert gen_random_digraph(2, 0, 1).edges == ()
    assert len(gen_random_digraph(5, 1, 1).edges) == 20
    assert gen_random_digraph(6, 0.4, 9) == gen_random_digraph(6, 0.4, 9)
    assert gen_random_2cnf(5, 9, 3) == gen_random_2cnf(5, 9, 3)
    with pytest.raises(ValueError):
        gen_random_digraph(1, 0.5, 0)
    with pytest.raises(ValueError):
        gen_random_digraph(3, 1.5, 0)


def test_digraph_text_format():
    g = parse_digraph(fixture_bytes("square_cycle.graph"))
    assert g == SQUARE
    assert parse_digraph(write_digraph(g)) == g
    for bad in ("e 1 2\n", "d 2\ne 1\n", "d 2\ne 1 3\n", "d 2\nq 1\n", "d x\n"):
        with pytest.raises(FormatSyntaxError):
            parse_digraph(bad)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.sampled_from((0.2, 0.35, 0.5)), st.integers(0, 10**6))
def test_vertex_reduction_agrees(n, p, seed):
    g = gen_random_digraph(n, p, seed)
    f, prov = cycle_to_2cnf(g, 1, 2)
    v = decide_var_ror(f)
    assert v.is_yes == (brute_force_cycle(g, 1, 2, VERTEX) is not None)
    if v.is_yes:
        assert is_valid_cycle_pair(g, 1, 2, refutation_to_cycle(v.certificate, prov, VERTEX))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.sampled_from((0.2, 0.35, 0.5)), st.integers(0, 10**6))
def test_edge_cycle_implies_read_once(n, p, seed):
    # the direction that always holds: an edge-disjoint cycle yields a refutation
    g = gen_random_digraph(n, p, seed)
    f, _ = cycle_to_2cnf(g, 1, 2)
    if brute_force_cycle(g, 1, 2, EDGE) is not None:
        assert decide_ror(f).is_yes


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_dpp_transform_agrees(seed):
    g = gen_random_digraph(6, 0.3, seed)
    h, s, t = dpp_to_cdpp(g, 1, 2, 3, 4)
    assert (brute_force_dpp(g, 1, 2, 3, 4) is not None) == (brute_force_cycle(h, s, t, VERTEX) is not None)
