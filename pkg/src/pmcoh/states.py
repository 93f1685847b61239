"""Smoothings, states and the hypercube of resolutions.

Bit ``i`` of a state index ``alpha`` is the smoothing of the ``i``-th
matching edge in ascending edge-id order.  A state's circles are sets of
non-matching darts, listed by ascending smallest dart.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .planar_map import PlanarDiagram

__all__ = [
    "MERGE",
    "SPLIT",
    "CROSS",
    "State",
    "HypercubeEdge",
    "Hypercube",
    "ConventionError",
    "smoothing_arcs",
    "resolve",
    "circle_profile",
    "classify_edge",
    "hypercube",
    "bridge_via_states",
]

MERGE = "merge"
SPLIT = "split"
CROSS = "cross"


class ConventionError(RuntimeError):
    """A hypercube edge violates the merge/split/cross circle-count rule."""


def _corner_darts(d: PlanarDiagram, e: int) -> tuple[int, int, int, int]:
    """``(a_u, b_u, a_v, b_v)``: neighbours of the two darts of matching edge ``e``."""
    du, dv = 2 * e, 2 * e + 1
    return d.succ(du), d.pred(du), d.succ(dv), d.pred(dv)


def smoothing_arcs(d: PlanarDiagram, e: int, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The two arcs replacing matching edge ``e`` under a 0- or 1-smoothing."""
    a_u, b_u, a_v, b_v = _corner_darts(d, e)
    if bit:
        return (a_u, a_v), (b_u, b_v)
    return (a_u, b_v), (b_u, a_v)


@dataclass(frozen=True)
class State:
    alpha: int
    n: int
    circles: tuple[frozenset[int], ...]
    circle_of: dict[int, int]

    @property
    def k(self) -> int:
        return len(self.circles)

    @property
    def weight(self) -> int:
        return bin(self.alpha).count("1")

    def bits(self) -> str:
        """Bit ``i`` printed at position ``i`` (matching-edge order)."""
        return "".join(str((self.alpha >> i) & 1) for i in range(self.n))


def resolve(d: PlanarDiagram, alpha: int) -> State:
    n = d.n_matching
    if not 0 <= alpha < (1 << n):
        raise ValueError(f"state index {alpha} out of range for {n} matching edges")
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for e in range(d.n_edges):
        if e not in d.matching:
            parent[2 * e] = 2 * e
            parent[2 * e + 1] = 2 * e + 1
    for e in range(d.n_edges):
        if e not in d.matching:
            union(2 * e, 2 * e + 1)
    for i, e in enumerate(d.matching_edges):
        for x, y in smoothing_arcs(d, e, (alpha >> i) & 1):
            union(x, y)

    groups: dict[int, list[int]] = {}
    for x in sorted(parent):
        groups.setdefault(find(x), []).append(x)
    circles = tuple(frozenset(g) for g in sorted(groups.values(), key=min))
    circle_of = {x: idx for idx, c in enumerate(circles) for x in c}
    return State(alpha, n, circles, circle_of)


def circle_profile(d: PlanarDiagram) -> dict[int, int]:
    """``alpha -> k_alpha`` for all ``2^n`` states."""
    return {alpha: resolve(d, alpha).k for alpha in range(1 << d.n_matching)}


@dataclass(frozen=True)
class HypercubeEdge:
    """Edge ``source -> target`` of the hypercube, flipping bit ``bit`` from 0 to 1.

    ``touched`` holds the affected source circles and ``images`` the target
    circles they become: merge ``(c1, c2) -> (c,)``, split ``(c,) -> (c1, c2)``,
    cross ``(c,) -> (c,)``.  ``circle_map`` sends every untouched source
    circle to the target circle with the same darts.
    """

    source: int
    target: int
    bit: int
    kind: str
    touched: tuple[int, ...]
    images: tuple[int, ...]
    circle_map: dict[int, int]


def classify_edge(d: PlanarDiagram, s: State, s2: State) -> HypercubeEdge:
    diff = s.alpha ^ s2.alpha
    if diff == 0 or diff & (diff - 1) or s.alpha & diff:
        raise ValueError("states must differ in exactly one bit, flipped from 0 to 1")
    bit = diff.bit_length() - 1
    e = d.matching_edges[bit]
    a_u, b_u, _, _ = _corner_darts(d, e)
    c_a, c_b = s.circle_of[a_u], s.circle_of[b_u]
    dk = s2.k - s.k
    if c_a != c_b:
        if dk != -1:
            raise ConventionError(f"arcs on two circles but circle count changes by {dk}")
        kind = MERGE
        touched = (min(c_a, c_b), max(c_a, c_b))
        images = (s2.circle_of[a_u],)
    elif dk == 1:
        kind = SPLIT
        touched = (c_a,)
        t1, t2 = s2.circle_of[a_u], s2.circle_of[b_u]
        if t1 == t2:
            raise ConventionError("split edge leaves both arcs on one circle")
        images = (min(t1, t2), max(t1, t2))
    elif dk == 0:
        kind = CROSS
        touched = (c_a,)
        images = (s2.circle_of[a_u],)
    else:
        raise ConventionError(f"arcs on one circle but circle count changes by {dk}")
    circle_map = {}
    for idx, circle in enumerate(s.circles):
        if idx in touched:
            continue
        image = s2.circle_of[min(circle)]
        if s2.circles[image] != circle:
            raise ConventionError(f"untouched circle {idx} changes its darts")
        circle_map[idx] = image
    return HypercubeEdge(s.alpha, s2.alpha, bit, kind, touched, images, circle_map)


@dataclass(frozen=True)
class Hypercube:
    diagram: PlanarDiagram
    states: tuple[State, ...]
    edges: tuple[HypercubeEdge, ...]

    @property
    def n(self) -> int:
        return self.diagram.n_matching

    def edges_from(self, alpha: int) -> list[HypercubeEdge]:
        return [e for e in self.edges if e.source == alpha]


def hypercube(d: PlanarDiagram, states: Optional[tuple[State, ...]] = None) -> Hypercube:
    n = d.n_matching
    if states is None:
        states = tuple(resolve(d, alpha) for alpha in range(1 << n))
    edges = []
    for alpha in range(1 << n):
        for bit in range(n):
            if not alpha >> bit & 1:
                edges.append(classify_edge(d, states[alpha], states[alpha | 1 << bit]))
    return Hypercube(d, states, tuple(edges))


def bridge_via_states(d: PlanarDiagram, e: int) -> bool:
    """True iff toggling matching edge ``e`` never changes the circle count."""
    if e not in d.matching:
        raise ValueError(f"edge {d.edge_names[e]} is not a matching edge")
    bit = d.matching_edges.index(e)
    profile = circle_profile(d)
    return all(profile[a] == profile[a | 1 << bit] for a in profile if not a >> bit & 1)
