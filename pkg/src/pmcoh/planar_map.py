"""Perfect matching drawings stored as trivalent combinatorial maps.

A drawing is a rotation system: every vertex lists its darts in
counterclockwise order.  Edge ``e`` owns darts ``2e`` and ``2e + 1`` (written
``e.0`` and ``e.1`` in graph files), so the edge involution is ``d ^ 1``.
Flip moves reverse the rotation at every vertex inside the flipping disk.

Dart ids produced by the family generators depend only on the vertex
listing order documented in each generator, so fixtures are byte-stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "DiagramError",
    "DiagramSyntaxError",
    "UndeclaredReferenceError",
    "DiagramValidationError",
    "StructureError",
    "FlipError",
    "FamilyError",
    "PlanarDiagram",
    "ValidationReport",
    "FlipSpec",
    "FAMILIES",
    "parse_diagram",
    "format_diagram",
    "validate",
    "faces",
    "generate_family",
    "flip",
    "add_lollipop",
    "disjoint_union",
    "join_on_matching_edges",
    "bridges",
    "components",
]

NON_TRIVALENT = "non-trivalent"
MATCHING_NOT_PERFECT = "matching not perfect"
MATCHING_LOOP = "matching loop"
NON_PLANAR = "non-planar"


class DiagramError(ValueError):
    """Base class for every diagram input or construction failure."""


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UndeclaredReferenceError(DiagramError):
    """A graph file names an edge or vertex that was never declared."""


class StructureError(DiagramError):
    """Dart ids or rotations do not form a well-formed map."""


class DiagramValidationError(DiagramError):
    def __init__(self, report: "ValidationReport"):
        self.report = report
        self.kinds = tuple(sorted({kind for kind, _ in report.failures}))
        super().__init__("; ".join(msg for _, msg in report.failures))


class FlipError(DiagramError):
    pass


class FamilyError(DiagramError):
    pass


@dataclass(frozen=True)
class PlanarDiagram:
    """Rotation system with a marked set of matching edges.

    ``rotations[v]`` holds the darts at vertex ``v`` in counterclockwise
    order.  Only structural well-formedness is checked on construction; use
    :func:`validate` for trivalence, the perfect matching and planarity.
    """

    rotations: tuple[tuple[int, ...], ...]
    matching: frozenset[int]
    vertex_names: tuple[str, ...] = ()
    edge_names: tuple[str, ...] = ()
    _dart_vertex: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _dart_pos: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rotations = tuple(tuple(int(x) for x in rot) for rot in self.rotations)
        object.__setattr__(self, "rotations", rotations)
        object.__setattr__(self, "matching", frozenset(int(e) for e in self.matching))
        darts = [x for rot in rotations for x in rot]
        n_darts = len(darts)
        if n_darts % 2:
            raise StructureError("odd number of darts; every edge owns exactly two")
        if sorted(darts) != list(range(n_darts)):
            raise StructureError("dart ids must be 0..2|E|-1, each used exactly once")
        n_edges = n_darts // 2
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names", tuple(f"v{i}" for i in range(len(rotations))))
        if not self.edge_names:
            object.__setattr__(self, "edge_names", tuple(f"e{i}" for i in range(n_edges)))
        object.__setattr__(self, "vertex_names", tuple(self.vertex_names))
        object.__setattr__(self, "edge_names", tuple(self.edge_names))
        if len(self.vertex_names) != len(rotations) or len(set(self.vertex_names)) != len(rotations):
            raise StructureError("vertex names must be unique, one per vertex")
        if len(self.edge_names) != n_edges or len(set(self.edge_names)) != n_edges:
            raise StructureError("edge names must be unique, one per edge")
        bad = [e for e in self.matching if not 0 <= e < n_edges]
        if bad:
            raise StructureError(f"matching refers to unknown edge ids {sorted(bad)}")
        dart_vertex = [0] * n_darts
        dart_pos = [0] * n_darts
        for v, rot in enumerate(rotations):
            for i, x in enumerate(rot):
                dart_vertex[x] = v
                dart_pos[x] = i
        object.__setattr__(self, "_dart_vertex", tuple(dart_vertex))
        object.__setattr__(self, "_dart_pos", tuple(dart_pos))

    # basic counts
    @property
    def n_vertices(self) -> int:
        return len(self.rotations)

    @property
    def n_darts(self) -> int:
        return len(self._dart_vertex)

    @property
    def n_edges(self) -> int:
        return self.n_darts // 2

    @property
    def n_matching(self) -> int:
        return len(self.matching)

    @property
    def matching_edges(self) -> tuple[int, ...]:
        """Matching edges in ascending id order; position = state bit."""
        return tuple(sorted(self.matching))

    # dart navigation
    def vertex_of(self, dart: int) -> int:
        return self._dart_vertex[dart]

    @staticmethod
    def edge_of(dart: int) -> int:
        return dart >> 1

    @staticmethod
    def partner(dart: int) -> int:
        return dart ^ 1

    def succ(self, dart: int) -> int:
        """Next dart counterclockwise around the same vertex."""
        rot = self.rotations[self._dart_vertex[dart]]
        return rot[(self._dart_pos[dart] + 1) % len(rot)]

    def pred(self, dart: int) -> int:
        rot = self.rotations[self._dart_vertex[dart]]
        return rot[(self._dart_pos[dart] - 1) % len(rot)]

    def endpoints(self, e: int) -> tuple[int, int]:
        return self._dart_vertex[2 * e], self._dart_vertex[2 * e + 1]

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def vertex_id(self, name: str) -> int:
        try:
            return self.vertex_names.index(name)
        except ValueError:
            raise UndeclaredReferenceError(f"unknown vertex {name!r}") from None

    def edge_id(self, name: str) -> int:
        try:
            return self.edge_names.index(name)
        except ValueError:
            raise UndeclaredReferenceError(f"unknown edge {name!r}") from None

    # derived diagrams
    def with_matching(self, matching: Iterable[int]) -> "PlanarDiagram":
        return PlanarDiagram(self.rotations, frozenset(matching), self.vertex_names, self.edge_names)

    def mirror(self) -> "PlanarDiagram":
        """Reverse every rotation (a reflection of the whole sphere)."""
        rots = tuple(_reverse_rotation(rot) for rot in self.rotations)
        return PlanarDiagram(rots, self.matching, self.vertex_names, self.edge_names)

    def __str__(self) -> str:
        return format_diagram(self)


def _reverse_rotation(rot: tuple[int, ...]) -> tuple[int, ...]:
    # keep the first dart in place so reversing twice is the identity
    if not rot:
        return rot
    return (rot[0],) + tuple(reversed(rot[1:]))


EMPTY = PlanarDiagram((), frozenset())


# ---------------------------------------------------------------------------
# graph files

_NAME = r"[^\s:.#]+"
_VERTEX_RE = re.compile(rf"vertex\s+(?P<name>{_NAME})\s*:(?P<rest>.*)$")
_MATCHING_RE = re.compile(r"matching\s*:(?P<rest>.*)$")
_DART_RE = re.compile(rf"(?P<edge>{_NAME})\.(?P<end>[01])$")
_TOKEN_RE = re.compile(r"\S+")


def parse_diagram(text: str, check: bool = True) -> PlanarDiagram:
    """Parse a graph file and (by default) validate the result.

    Edge ids follow the order in which edges first appear on vertex lines.
    """
    vertex_names: list[str] = []
    rotations_named: list[list[tuple[str, int]]] = []
    edge_ids: dict[str, int] = {}
    seen_darts: dict[tuple[str, int], tuple[int, int]] = {}
    matching_names: Optional[list[tuple[str, int, int]]] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        m = _VERTEX_RE.match(stripped)
        if m:
            name = m.group("name")
            if name in vertex_names:
                raise DiagramSyntaxError(f"vertex {name!r} declared twice", lineno, indent + m.start("name") + 1)
            vertex_names.append(name)
            darts = []
            offset = indent + m.start("rest")
            for tok in _TOKEN_RE.finditer(m.group("rest")):
                col = offset + tok.start() + 1
                dm = _DART_RE.match(tok.group())
                if dm is None:
                    raise DiagramSyntaxError(f"expected <edge>.<0|1>, got {tok.group()!r}", lineno, col)
                key = (dm.group("edge"), int(dm.group("end")))
                if key in seen_darts:
                    raise DiagramSyntaxError(f"dart {tok.group()} listed twice", lineno, col)
                seen_darts[key] = (lineno, col)
                edge_ids.setdefault(key[0], len(edge_ids))
                darts.append(key)
            if not darts:
                raise DiagramSyntaxError("vertex has no darts", lineno, len(line) + 1)
            rotations_named.append(darts)
            continue
        m = _MATCHING_RE.match(stripped)
        if m:
            if matching_names is not None:
                raise DiagramSyntaxError("matching declared twice", lineno, indent + 1)
            offset = indent + m.start("rest")
            matching_names = [
                (tok.group(), lineno, offset + tok.start() + 1) for tok in _TOKEN_RE.finditer(m.group("rest"))
            ]
            continue
        word = stripped.split()[0]
        raise DiagramSyntaxError(f"unexpected {word!r}; expected 'vertex' or 'matching'", lineno, indent + 1)

    for (edge, end), (lineno, col) in seen_darts.items():
        if (edge, 1 - end) not in seen_darts:
            raise UndeclaredReferenceError(
                f"line {lineno}, column {col}: edge {edge!r} has dart .{end} but no dart .{1 - end}"
            )
    matching: set[int] = set()
    for name, lineno, col in matching_names or []:
        if name not in edge_ids:
            raise UndeclaredReferenceError(f"line {lineno}, column {col}: matching names undeclared edge {name!r}")
        matching.add(edge_ids[name])
    edge_names = [None] * len(edge_ids)
    for name, idx in edge_ids.items():
        edge_names[idx] = name
    rotations = tuple(tuple(2 * edge_ids[e] + end for e, end in rot) for rot in rotations_named)
    d = PlanarDiagram(rotations, frozenset(matching), tuple(vertex_names), tuple(edge_names))
    if check:
        report = validate(d)
        if not report.ok:
            raise DiagramValidationError(report)
    return d


def format_diagram(d: PlanarDiagram) -> str:
    lines = []
    for v, rot in enumerate(d.rotations):
        darts = " ".join(f"{d.edge_names[x >> 1]}.{x & 1}" for x in rot)
        lines.append(f"vertex {d.vertex_names[v]}: {darts}")
    lines.append("matching: " + " ".join(d.edge_names[e] for e in d.matching_edges))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    trivalent: bool
    perfect_matching: bool
    planar: bool
    component_faces: list[int]
    component_euler: list[int]
    failures: list[tuple[str, str]]

    @property
    def ok(self) -> bool:
        return not self.failures


def components(d: PlanarDiagram) -> list[list[int]]:
    """Vertex sets of connected components, ordered by smallest vertex."""
    parent = list(range(d.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(d.n_edges):
        a, b = (find(x) for x in d.endpoints(e))
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(d.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return [groups[r] for r in sorted(groups)]


def faces(d: PlanarDiagram) -> list[tuple[int, ...]]:
    """Orbits of the face permutation ``d -> succ(partner(d))``.

    Each orbit starts at its smallest dart; orbits are sorted by that dart.
    """
    seen = [False] * d.n_darts
    out = []
    for start in range(d.n_darts):
        if seen[start]:
            continue
        orbit = []
        x = start
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = d.succ(x ^ 1)
        out.append(tuple(orbit))
    return out


def validate(d: PlanarDiagram) -> ValidationReport:
    failures: list[tuple[str, str]] = []
    trivalent = True
    for v, rot in enumerate(d.rotations):
        if len(rot) != 3:
            trivalent = False
            failures.append((NON_TRIVALENT, f"vertex {d.vertex_names[v]} has degree {len(rot)}, expected 3"))

    perfect = True
    covered = [0] * d.n_vertices
    for e in d.matching_edges:
        u, v = d.endpoints(e)
        if u == v:
            perfect = False
            failures.append((MATCHING_LOOP, f"a loop cannot be an edge in a matching ({d.edge_names[e]})"))
        covered[u] += 1
        if v != u:
            covered[v] += 1
    for v, c in enumerate(covered):
        if c != 1:
            perfect = False
            how = "not covered" if c == 0 else f"covered {c} times"
            failures.append((MATCHING_NOT_PERFECT, f"matching not perfect: vertex {d.vertex_names[v]} {how}"))

    comp_of = [0] * d.n_vertices
    comps = components(d)
    for i, vs in enumerate(comps):
        for v in vs:
            comp_of[v] = i
    n_v = [len(vs) for vs in comps]
    n_e = [0] * len(comps)
    n_f = [0] * len(comps)
    for e in range(d.n_edges):
        n_e[comp_of[d.vertex_of(2 * e)]] += 1
    for orbit in faces(d):
        n_f[comp_of[d.vertex_of(orbit[0])]] += 1
    euler = [n_v[i] - n_e[i] + n_f[i] for i in range(len(comps))]
    planar = all(x == 2 for x in euler)
    if not planar:
        bad = [i for i, x in enumerate(euler) if x != 2]
        failures.append((NON_PLANAR, f"non-planar rotation system: V-E+F = {[euler[i] for i in bad]} on components {bad}"))
    return ValidationReport(trivalent, perfect, planar, n_f, euler, failures)


def _checked(d: PlanarDiagram) -> PlanarDiagram:
    report = validate(d)
    if not report.ok:
        raise DiagramValidationError(report)
    return d


# ---------------------------------------------------------------------------
# construction helpers


def _assemble(vertices: Sequence[tuple[str, Sequence[tuple[str, int]]]], matching: Iterable[str]) -> PlanarDiagram:
    """Build from ``(vertex, [(edge, end), ...])`` listings; edges numbered by first use."""
    edge_ids: dict[str, int] = {}
    for _, darts in vertices:
        for e, _end in darts:
            edge_ids.setdefault(e, len(edge_ids))
    names = sorted(edge_ids, key=edge_ids.get)
    rotations = tuple(tuple(2 * edge_ids[e] + end for e, end in darts) for _, darts in vertices)
    m = frozenset(edge_ids[e] for e in matching)
    return PlanarDiagram(rotations, m, tuple(v for v, _ in vertices), tuple(names))


def _theta(m: int) -> PlanarDiagram:
    # closed ladder: top row u1..um, bottom row v1..vm, matching rungs r_i,
    # rails t_i / b_i, end edges L (u1-v1, left) and R (um-vm, right)
    verts = []
    for i in range(1, m + 1):
        east = ("R", 0) if i == m else (f"t{i}", 0)
        west = ("L", 0) if i == 1 else (f"t{i - 1}", 1)
        verts.append((f"u{i}", [east, west, (f"r{i}", 0)]))
    for i in range(1, m + 1):
        east = ("R", 1) if i == m else (f"b{i}", 0)
        west = ("L", 1) if i == 1 else (f"b{i - 1}", 1)
        verts.append((f"v{i}", [east, (f"r{i}", 1), west]))
    return _assemble(verts, [f"r{i}" for i in range(1, m + 1)])


def _dumbbell(m: int) -> PlanarDiagram:
    # loop - bar - digon - bar - ... - bar - loop; bars are the matching
    verts = [("a1", [("e1", 0), ("l0", 0), ("l0", 1)])]
    for i in range(1, m + 1):
        if i < m:
            verts.append((f"b{i}", [(f"p{i}", 0), (f"e{i}", 1), (f"q{i}", 0)]))
            verts.append((f"a{i + 1}", [(f"e{i + 1}", 0), (f"p{i}", 1), (f"q{i}", 1)]))
        else:
            verts.append((f"b{i}", [(f"l{m}", 0), (f"e{i}", 1), (f"l{m}", 1)]))
    return _assemble(verts, [f"e{i}" for i in range(1, m + 1)])


def _prism_vertices(m: int) -> list[tuple[str, list[tuple[str, int]]]]:
    # outer cycle u_i (edges o_i = u_i u_{i+1}), inner cycle v_i (n_i), rungs r_i
    verts = []
    for i in range(1, m + 1):
        prev = m if i == 1 else i - 1
        verts.append((f"u{i}", [(f"o{i}", 0), (f"r{i}", 0), (f"o{prev}", 1)]))
    for i in range(1, m + 1):
        prev = m if i == 1 else i - 1
        verts.append((f"v{i}", [(f"r{i}", 1), (f"n{i}", 0), (f"n{prev}", 1)]))
    return verts


def _k4() -> PlanarDiagram:
    # centre c, outer triangle w1 w2 w3 counterclockwise
    verts = [
        ("c", [("s1", 0), ("s2", 0), ("s3", 0)]),
        ("w1", [("t1", 0), ("s1", 1), ("t3", 1)]),
        ("w2", [("t2", 0), ("s2", 1), ("t1", 1)]),
        ("w3", [("t3", 0), ("s3", 1), ("t2", 1)]),
    ]
    return _assemble(verts, ["s1", "t2"])


FAMILIES = ("theta", "dumbbell", "prism-L", "prism-C", "K4")


def generate_family(family: str, m: int = 1) -> PlanarDiagram:
    """Canonical drawing of a named family member.

    theta    closed ladder with ``m`` matching rungs (theta itself at m=1)
    dumbbell loop, then ``m`` matching bars separated by digons, then loop
    prism-L  ``m``-prism (m >= 2) with the rungs as matching
    prism-C  3-prism with the candle matching {r1, o2, n2}
    K4       tetrahedron with matching {s1, t2}
    """
    if not isinstance(m, int) or isinstance(m, bool):
        raise FamilyError(f"m must be an integer, got {m!r}")
    if family == "theta" and m >= 1:
        d = _theta(m)
    elif family == "dumbbell" and m >= 1:
        d = _dumbbell(m)
    elif family == "prism-L" and m >= 2:
        d = _assemble(_prism_vertices(m), [f"r{i}" for i in range(1, m + 1)])
    elif family == "prism-C" and m == 3:
        d = _assemble(_prism_vertices(3), ["r1", "o2", "n2"])
    elif family == "K4" and m == 1:
        d = _k4()
    else:
        raise FamilyError(f"unsupported family/size combination ({family!r}, m={m})")
    return _checked(d)


# ---------------------------------------------------------------------------
# flips


@dataclass(frozen=True)
class FlipSpec:
    """Vertices inside the flipping disk."""

    inside: frozenset[int]

    def __init__(self, inside: Iterable[int]):
        object.__setattr__(self, "inside", frozenset(int(v) for v in inside))

    @classmethod
    def from_names(cls, d: PlanarDiagram, names: Iterable[str]) -> "FlipSpec":
        return cls(d.vertex_id(n) for n in names)

    def cut_edges(self, d: PlanarDiagram) -> tuple[int, ...]:
        out = []
        for e in range(d.n_edges):
            u, v = d.endpoints(e)
            if (u in self.inside) != (v in self.inside):
                out.append(e)
        return tuple(out)

    def kind(self, d: PlanarDiagram) -> str:
        """``"0-flip"``, ``"1-flip"``, ``"2-flip-M"`` (both cut edges matched) or ``"2-flip"``."""
        cuts = self.cut_edges(d)
        if len(cuts) == 2:
            return "2-flip-M" if all(e in d.matching for e in cuts) else "2-flip"
        return f"{len(cuts)}-flip"

    def check(self, d: PlanarDiagram) -> tuple[int, ...]:
        unknown = [v for v in self.inside if not 0 <= v < d.n_vertices]
        if unknown:
            raise FlipError(f"unknown vertex ids {sorted(unknown)}")
        cuts = self.cut_edges(d)
        if len(cuts) > 2:
            names = [d.edge_names[e] for e in cuts]
            raise FlipError(f"flipping disk cuts {len(cuts)} edges {names}; at most 2 allowed")
        if len(cuts) == 1 and cuts[0] not in d.matching:
            raise FlipError(f"1-flip across {d.edge_names[cuts[0]]}, which is not a matching edge (bridges lie in M)")
        if len(cuts) == 2:
            inm = [e in d.matching for e in cuts]
            if inm[0] != inm[1]:
                raise FlipError("2-flip cut edges must be both in the matching or both outside it")
        return cuts


def flip(d: PlanarDiagram, spec: FlipSpec) -> PlanarDiagram:
    """Reflect the flipping disk: reverse the rotation at every inside vertex."""
    spec.check(d)
    rots = tuple(_reverse_rotation(rot) if v in spec.inside else rot for v, rot in enumerate(d.rotations))
    out = PlanarDiagram(rots, d.matching, d.vertex_names, d.edge_names)
    report = validate(out)
    if not report.ok:
        raise FlipError(f"flip result is invalid: {'; '.join(msg for _, msg in report.failures)}")
    return out


# ---------------------------------------------------------------------------
# constructions


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    k = 2
    while name in taken:
        name = f"{base}_{k}"
        k += 1
    taken.add(name)
    return name


def add_lollipop(d: PlanarDiagram, e: int) -> PlanarDiagram:
    """Subdivide non-matching edge ``e`` by ``v`` and hang a stem + loop off it.

    The first half of ``e`` keeps its id; the new edges (second half, stem,
    loop) get the next three ids, and the stem joins the matching.
    """
    if not 0 <= e < d.n_edges:
        raise DiagramError(f"unknown edge id {e}")
    if e in d.matching:
        raise DiagramError(f"cannot add a lollipop on matching edge {d.edge_names[e]}")
    E = d.n_edges
    half, stem, loop = E, E + 1, E + 2
    q = 2 * e + 1
    b = d.vertex_of(q)
    rots = [list(r) for r in d.rotations]
    # dart e.1 moves to the new vertex v; second half takes its slot at b
    rots[b][rots[b].index(q)] = 2 * half + 1
    rots.append([q, 2 * stem, 2 * half])
    rots.append([2 * stem + 1, 2 * loop, 2 * loop + 1])
    vnames = set(d.vertex_names)
    enames = set(d.edge_names)
    base = d.edge_names[e]
    new_v = [_fresh(f"{base}_v", vnames), _fresh(f"{base}_w", vnames)]
    new_e = [_fresh(f"{base}_h", enames), _fresh(f"{base}_s", enames), _fresh(f"{base}_l", enames)]
    out = PlanarDiagram(
        tuple(tuple(r) for r in rots),
        d.matching | {stem},
        d.vertex_names + tuple(new_v),
        d.edge_names + tuple(new_e),
    )
    return _checked(out)


def disjoint_union(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    """Place ``d2`` beside ``d1``; ``d2``'s ids shift past ``d1``'s, clashing names get a suffix."""
    shift = d1.n_darts
    rots = d1.rotations + tuple(tuple(x + shift for x in r) for r in d2.rotations)
    vnames = set(d1.vertex_names)
    enames = set(d1.edge_names)
    v2 = tuple(_fresh(n, vnames) for n in d2.vertex_names)
    e2 = tuple(_fresh(n, enames) for n in d2.edge_names)
    matching = d1.matching | {e + d1.n_edges for e in d2.matching}
    return PlanarDiagram(rots, matching, d1.vertex_names + v2, d1.edge_names + e2)


def join_on_matching_edges(d1: PlanarDiagram, e1: int, d2: PlanarDiagram, e2: int) -> PlanarDiagram:
    """Cut matching edge ``e1`` of ``d1`` and ``e2`` of ``d2`` and cross-connect the halves.

    The two resulting edges are both matching edges and form a 2-edge cut, so
    flipping the ``d2`` side is a 2-flip with both cut edges in the matching.
    """
    if e1 not in d1.matching or e2 not in d2.matching:
        raise DiagramError("both joined edges must be matching edges")
    for candidate in (d2, d2.mirror()):
        u = disjoint_union(d1, candidate)
        f = e2 + d1.n_edges
        q, r, s = 2 * e1 + 1, 2 * f, 2 * f + 1
        for other in (r, s):
            rots = [list(rot) for rot in u.rotations]
            vq, vo = u.vertex_of(q), u.vertex_of(other)
            iq, io = rots[vq].index(q), rots[vo].index(other)
            rots[vq][iq], rots[vo][io] = other, q
            out = PlanarDiagram(tuple(tuple(x) for x in rots), u.matching, u.vertex_names, u.edge_names)
            if validate(out).ok:
                return out
    raise DiagramError("could not join the diagrams in the plane")


def bridges(d: PlanarDiagram) -> frozenset[int]:
    """Cut edges of the underlying multigraph (low-link DFS; loops never qualify)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(d.n_vertices)]
    for e in range(d.n_edges):
        u, v = d.endpoints(e)
        if u != v:
            adj[u].append((v, e))
            adj[v].append((u, e))
    disc = [-1] * d.n_vertices
    low = [0] * d.n_vertices
    out = set()
    t = 0
    for root in range(d.n_vertices):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for w, e in it:
                if e == via:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    out.add(via)
    return frozenset(out)
