import pytest

from pmcoh.laurent import eval_int, tait_polynomial, two_factor_polynomial
from pmcoh.oracles import (
    AbstractGraph,
    SizeGuardError,
    count_tait_colorings,
    count_two_factors_through,
    cycles_off_matching,
    enumerate_perfect_matchings,
    is_even_matching,
    star_of_loops,
    two_factors_through,
)
from pmcoh.planar_map import generate_family


def graph(family, m=1):
    d = generate_family(family, m)
    return d, AbstractGraph.from_diagram(d)


def test_matching_counts():
    assert len(enumerate_perfect_matchings(graph("theta")[1])) == 3
    assert len(enumerate_perfect_matchings(graph("dumbbell")[1])) == 1
    assert enumerate_perfect_matchings(star_of_loops()) == []
    d, g = graph("prism-L", 3)
    found = enumerate_perfect_matchings(g)
    assert len(found) == 4 and d.matching in found


def test_matchings_are_deterministic_and_distinct():
    _, g = graph("prism-L", 4)
    first = enumerate_perfect_matchings(g)
    assert first == enumerate_perfect_matchings(g)
    assert len(set(first)) == len(first) == 9


@pytest.mark.parametrize("m", range(1, 6))
def test_theta_ladders_have_two_factors(m):
    d, g = graph("theta", m)
    assert count_two_factors_through(g, d.matching) == 2


def test_two_factor_counts():
    d, g = graph("prism-L", 3)
    assert count_two_factors_through(g, d.matching) == 0
    d, g = graph("prism-L", 4)
    assert count_two_factors_through(g, d.matching) == 4
    for m in range(1, 5):
        d, g = graph("dumbbell", m)
        assert count_two_factors_through(g, d.matching) == 0


def test_two_factors_contain_matching_and_are_2_regular():
    d, g = graph("prism-L", 4)
    for f in two_factors_through(g, d.matching):
        assert d.matching <= f
        assert all(sum((g.edges[e][0] == v) + (g.edges[e][1] == v) for e in f) == 2 for v in range(g.n_vertices))


def test_bad_matching_rejected():
    _, g = graph("K4")
    with pytest.raises(ValueError):
        count_two_factors_through(g, {0})


def test_tait_counts():
    assert count_tait_colorings(graph("theta")[1]) == 6
    assert count_tait_colorings(graph("dumbbell")[1]) == 0
    assert count_tait_colorings(graph("K4")[1]) == 6
    assert count_tait_colorings(graph("prism-L", 3)[1]) == 6
    with pytest.raises(ValueError):
        count_tait_colorings(AbstractGraph(2, ((0, 1),)))


def test_even_matchings():
    d, g = graph("prism-L", 3)
    assert not is_even_matching(g, d.matching)
    d, g = graph("prism-C", 3)
    assert is_even_matching(g, d.matching)
    d, g = graph("theta")
    assert is_even_matching(g, d.matching)
    assert [len(c) for c in cycles_off_matching(g, d.matching)] == [2]


def test_size_guard():
    big = AbstractGraph(2, tuple((0, 1) for _ in range(25)))
    with pytest.raises(SizeGuardError):
        enumerate_perfect_matchings(big)


@pytest.mark.parametrize(
    "family, ms",
    [("theta", range(1, 5)), ("dumbbell", range(1, 5)), ("prism-L", range(2, 6)), ("prism-C", [3]), ("K4", [1])],
)
def test_polynomials_agree_with_oracles(family, ms):
    for m in ms:
        d, g = graph(family, m)
        for matching in enumerate_perfect_matchings(g):
            value = eval_int(two_factor_polynomial(d.with_matching(matching)), 1)
            assert value == count_two_factors_through(g, matching)
            if not is_even_matching(g, matching):
                assert value == 0
        assert eval_int(tait_polynomial(d), 1) == count_tait_colorings(g)
