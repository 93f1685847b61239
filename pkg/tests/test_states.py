import random

import pytest
from hypothesis import given, settings, strategies as st

from pmcoh.planar_map import FlipSpec, bridges, flip, generate_family, join_on_matching_edges
from pmcoh.random_diagrams import random_diagram
from pmcoh.states import (
    CROSS,
    MERGE,
    SPLIT,
    bridge_via_states,
    circle_profile,
    classify_edge,
    hypercube,
    resolve,
)

DK = {MERGE: -1, SPLIT: 1, CROSS: 0}


def test_theta_states():
    theta = generate_family("theta")
    assert resolve(theta, 0).k == 2
    assert resolve(theta, 1).k == 1
    assert circle_profile(theta) == {0: 2, 1: 1}


def test_k4_states():
    k4 = generate_family("K4")
    assert circle_profile(k4) == {0b00: 1, 0b01: 1, 0b10: 1, 0b11: 2}


def test_prism_ladder_profile_by_weight():
    p3 = generate_family("prism-L", 3)
    profile = circle_profile(p3)
    by_weight = {}
    for alpha, k in profile.items():
        by_weight.setdefault(bin(alpha).count("1"), []).append(k)
    assert by_weight == {0: [3], 1: [2, 2, 2], 2: [1, 1, 1], 3: [1]}


def test_circles_partition_non_matching_darts():
    d = generate_family("prism-C", 3)
    darts = {x for e in range(d.n_edges) if e not in d.matching for x in (2 * e, 2 * e + 1)}
    for alpha in range(8):
        s = resolve(d, alpha)
        assert set().union(*s.circles) == darts
        assert sum(len(c) for c in s.circles) == len(darts)
        assert [min(c) for c in s.circles] == sorted(min(c) for c in s.circles)


def test_resolve_rejects_bad_index():
    with pytest.raises(ValueError):
        resolve(generate_family("theta"), 2)


def test_theta_edge_is_merge():
    theta = generate_family("theta")
    (edge,) = hypercube(theta).edges
    assert edge.kind == MERGE and edge.touched == (0, 1) and edge.images == (0,)


def test_k4_edge_kinds():
    cube = hypercube(generate_family("K4"))
    kinds = {(e.source, e.target): e.kind for e in cube.edges}
    assert kinds == {(0, 1): CROSS, (0, 2): CROSS, (1, 3): SPLIT, (2, 3): SPLIT}


def test_prism_ladder_top_edges_are_cross():
    cube = hypercube(generate_family("prism-L", 3))
    top = [e for e in cube.edges if e.target == 0b111]
    assert len(top) == 3 and all(e.kind == CROSS for e in top)


def test_theta3_first_edge_merges_four_to_three():
    d = generate_family("theta", 3)
    s, s2 = resolve(d, 0), resolve(d, 1)
    assert (s.k, s2.k) == (4, 3)
    assert classify_edge(d, s, s2).kind == MERGE


def test_classify_edge_needs_single_upward_bit():
    d = generate_family("K4")
    with pytest.raises(ValueError):
        classify_edge(d, resolve(d, 0), resolve(d, 3))
    with pytest.raises(ValueError):
        classify_edge(d, resolve(d, 1), resolve(d, 0))


def test_hypercube_edge_count():
    for m in range(1, 5):
        assert len(hypercube(generate_family("theta", m)).edges) == m * 2 ** (m - 1)


def test_bridge_via_states_examples():
    dumbbell = generate_family("dumbbell")
    assert bridge_via_states(dumbbell, dumbbell.matching_edges[0])
    theta = generate_family("theta")
    assert not bridge_via_states(theta, theta.matching_edges[0])
    with pytest.raises(ValueError):
        bridge_via_states(theta, 1)


@pytest.mark.parametrize(
    "family, ms", [("theta", range(1, 5)), ("dumbbell", range(1, 5)), ("prism-L", range(2, 5)), ("K4", [1])]
)
def test_bridge_via_states_matches_dfs(family, ms):
    for m in ms:
        d = generate_family(family, m)
        dfs = bridges(d)
        for e in d.matching_edges:
            assert bridge_via_states(d, e) == (e in dfs)


def test_two_flip_keeps_circle_counts():
    p3, t2 = generate_family("prism-L", 3), generate_family("theta", 2)
    j = join_on_matching_edges(p3, p3.matching_edges[1], t2, t2.matching_edges[0])
    flipped = flip(j, FlipSpec(range(p3.n_vertices, j.n_vertices)))
    assert circle_profile(j) == circle_profile(flipped)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_edge_kind_matches_circle_change(seed):
    d = random_diagram(random.Random(seed))
    cube = hypercube(d)
    for e in cube.edges:
        src, dst = cube.states[e.source], cube.states[e.target]
        assert dst.k - src.k == DK[e.kind]
        # untouched circles keep their darts exactly and map injectively
        assert len(set(e.circle_map.values())) == len(e.circle_map)
        for c, t in e.circle_map.items():
            assert src.circles[c] == dst.circles[t]
        assert len(e.circle_map) == src.k - len(e.touched)
