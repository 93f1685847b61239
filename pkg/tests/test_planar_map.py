import pytest
from hypothesis import given, settings, strategies as st
import random

from pmcoh.planar_map import (
    EMPTY,
    MATCHING_LOOP,
    MATCHING_NOT_PERFECT,
    NON_PLANAR,
    NON_TRIVALENT,
    DiagramSyntaxError,
    DiagramValidationError,
    FamilyError,
    FlipError,
    FlipSpec,
    PlanarDiagram,
    StructureError,
    UndeclaredReferenceError,
    add_lollipop,
    bridges,
    disjoint_union,
    faces,
    flip,
    format_diagram,
    generate_family,
    join_on_matching_edges,
    parse_diagram,
    validate,
)
from pmcoh.random_diagrams import random_diagram


def read(data_dir, name):
    return (data_dir / name).read_text()


def test_parse_theta_file(data_dir):
    d = parse_diagram(read(data_dir, "theta.graph"))
    assert (d.n_vertices, d.n_edges, d.n_matching) == (2, 3, 1)
    assert d.edge_names == ("e1", "e2", "e3")
    assert len(faces(d)) == 3


def test_unmatched_vertex_rejected(data_dir):
    with pytest.raises(DiagramValidationError) as info:
        parse_diagram(read(data_dir, "unmatched_vertex.graph"))
    assert info.value.kinds == (MATCHING_NOT_PERFECT,)
    assert "matching not perfect" in str(info.value)


def test_k5_rejected_as_nonplanar(data_dir):
    with pytest.raises(DiagramValidationError) as info:
        parse_diagram(read(data_dir, "k5.graph"))
    assert NON_PLANAR in info.value.kinds
    assert NON_TRIVALENT in info.value.kinds


@pytest.mark.parametrize("name", ["k33.graph", "theta_torus.graph"])
def test_trivalent_nonplanar_rotations_rejected(data_dir, name):
    with pytest.raises(DiagramValidationError) as info:
        parse_diagram(read(data_dir, name))
    assert info.value.kinds == (NON_PLANAR,)


def test_matching_loop_rejected(data_dir):
    with pytest.raises(DiagramValidationError) as info:
        parse_diagram(read(data_dir, "matching_loop.graph"))
    assert MATCHING_LOOP in info.value.kinds
    assert "a loop cannot be an edge in a matching" in str(info.value)


def test_dumbbell_with_loops_is_valid(data_dir):
    d = parse_diagram(read(data_dir, "dumbbell.graph"))
    report = validate(d)
    assert report.ok and report.component_euler == [2]
    assert bridges(d) == {d.edge_id("bar")}


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("vertex a: e.0 e.1 f.0\nvertex b: f.1 g.0 g.1\nmatchin: f\n", 3, 1),
        ("vertex a: e.0 e.2 f.0\n", 1, 15),
        ("vertex a: e.0 e.1 f.0\nvertex a: f.1 g.0 g.1\n", 2, 8),
        ("vertex a: e.0 e.1 f.0\nvertex b: f.1 e.0 g.0\n", 2, 15),
        ("vertex a:\n", 1, 10),
    ],
)
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(DiagramSyntaxError) as info:
        parse_diagram(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_undeclared_references():
    with pytest.raises(UndeclaredReferenceError):
        parse_diagram("vertex a: e.0 e.1 f.0\nvertex b: f.1 g.0 g.1\nmatching: h\n")
    with pytest.raises(UndeclaredReferenceError):
        parse_diagram("vertex a: e.0 e.1 f.0\nvertex b: x.0 g.0 g.1\nmatching: f\n")


def test_comments_and_blank_lines_ignored():
    d = parse_diagram("# header\n\nvertex a: e.0 e.1 f.0  # loop\nvertex b: f.1 g.0 g.1\n  matching: f\n")
    assert d.n_vertices == 2 and validate(d).ok


def test_structure_checks():
    with pytest.raises(StructureError):
        PlanarDiagram(((0, 1, 3),), frozenset())
    with pytest.raises(StructureError):
        PlanarDiagram(((0, 1, 2),), frozenset())


@pytest.mark.parametrize("family, m", [("theta", 1), ("dumbbell", 1), ("prism-L", 3), ("K4", 1), ("prism-C", 3)])
def test_format_round_trip(family, m):
    d = generate_family(family, m)
    assert parse_diagram(format_diagram(d)) == d


def test_family_sizes():
    theta = generate_family("theta", 1)
    assert (theta.n_vertices, theta.n_edges, theta.n_matching) == (2, 3, 1)
    p3 = generate_family("prism-L", 3)
    assert (p3.n_vertices, p3.n_edges, p3.n_matching) == (6, 9, 3)
    assert {p3.edge_names[e] for e in p3.matching} == {"r1", "r2", "r3"}
    k4 = generate_family("K4")
    assert (k4.n_vertices, k4.n_edges, k4.n_matching) == (4, 6, 2)
    assert len(faces(k4)) == 4
    for m in range(1, 7):
        t = generate_family("theta", m)
        assert (t.n_vertices, t.n_edges, t.n_matching) == (2 * m, 3 * m, m)


def test_generator_ids_are_stable():
    # frozen dart layout of the tetrahedron drawing
    k4 = generate_family("K4")
    assert k4.edge_names == ("s1", "s2", "s3", "t1", "t3", "t2")
    assert k4.rotations == ((0, 2, 4), (6, 1, 9), (10, 3, 7), (8, 5, 11))
    assert k4.matching_edges == (0, 5)


@pytest.mark.parametrize("family, m", [("theta", 0), ("prism-L", 1), ("prism-C", 4), ("K4", 2), ("cube", 1)])
def test_unsupported_families(family, m):
    with pytest.raises(FamilyError):
        generate_family(family, m)


def test_disjoint_union_faces_per_component():
    theta = generate_family("theta")
    u = disjoint_union(theta, theta)
    report = validate(u)
    assert report.component_faces == [3, 3] and report.component_euler == [2, 2]
    assert disjoint_union(theta, EMPTY) == theta


def test_bridges():
    assert bridges(generate_family("theta")) == frozenset()
    for m in range(1, 5):
        d = generate_family("dumbbell", m)
        assert bridges(d) == d.matching
    assert bridges(generate_family("prism-L", 4)) == frozenset()


def test_lollipop_grows_matching():
    theta = generate_family("theta")
    free = [e for e in range(theta.n_edges) if e not in theta.matching]
    once = add_lollipop(theta, free[0])
    assert (once.n_vertices, once.n_edges, once.n_matching) == (4, 6, 2)
    twice = add_lollipop(once, free[1])
    assert twice.n_matching == 3
    with pytest.raises(ValueError):
        add_lollipop(theta, theta.matching_edges[0])


def test_flip_one_component_is_mirror():
    theta = generate_family("theta")
    u = disjoint_union(theta, theta)
    flipped = flip(u, FlipSpec([2, 3]))
    assert flipped.rotations[:2] == u.rotations[:2]
    assert flipped.rotations[2:] == disjoint_union(theta, theta.mirror()).rotations[2:]


def test_flip_rules():
    dumbbell = generate_family("dumbbell")
    assert FlipSpec([1]).kind(dumbbell) == "1-flip"
    flip(dumbbell, FlipSpec([1]))
    theta = generate_family("theta", 1)
    with pytest.raises(FlipError):  # one matching edge and two others cut
        flip(theta, FlipSpec([1]))
    p3 = generate_family("prism-L", 3)
    with pytest.raises(FlipError):  # three cut edges
        flip(p3, FlipSpec([0, 1, 2]))
    k4 = generate_family("K4")
    with pytest.raises(FlipError):
        flip(k4, FlipSpec([1]))


def test_rail_two_flip_on_theta_ladders():
    for m in (2, 3):
        d = generate_family("theta", m)
        spec = FlipSpec.from_names(d, ["u1", "v1"])
        assert spec.kind(d) == "2-flip"
        assert validate(flip(d, spec)).ok


def test_join_produces_matched_two_cut():
    p3, t2 = generate_family("prism-L", 3), generate_family("theta", 2)
    j = join_on_matching_edges(p3, p3.matching_edges[0], t2, t2.matching_edges[0])
    spec = FlipSpec(range(p3.n_vertices, j.n_vertices))
    assert spec.kind(j) == "2-flip-M"
    assert validate(flip(j, spec)).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_diagram_properties(seed):
    rng = random.Random(seed)
    d = random_diagram(rng)
    report = validate(d)
    assert report.ok and all(x == 2 for x in report.component_euler)
    assert bridges(d) <= d.matching
    # flips are involutions and keep the rules of the cut
    for _ in range(5):
        inside = rng.sample(range(d.n_vertices), rng.randint(1, d.n_vertices))
        spec = FlipSpec(inside)
        try:
            once = flip(d, spec)
        except FlipError:
            continue
        cuts = spec.cut_edges(d)
        if len(cuts) == 2:
            assert (cuts[0] in d.matching) == (cuts[1] in d.matching)
        assert flip(once, spec) == d
    free = [e for e in range(d.n_edges) if e not in d.matching]
    grown = add_lollipop(d, rng.choice(free))
    assert validate(grown).ok and grown.n_matching == d.n_matching + 1
