"""Brute-force ground truth on abstract multigraphs.

Nothing here looks at rotations or smoothings: the counts come from plain
exhaustive search over edges, so they check the polynomial machinery
independently of any drawing convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "MAX_EDGES",
    "SizeGuardError",
    "AbstractGraph",
    "is_perfect_matching",
    "enumerate_perfect_matchings",
    "count_two_factors_through",
    "two_factors_through",
    "count_tait_colorings",
    "cycles_off_matching",
    "is_even_matching",
    "star_of_loops",
]

MAX_EDGES = 24


class SizeGuardError(ValueError):
    """The graph is too large for exhaustive search."""


@dataclass(frozen=True)
class AbstractGraph:
    """Multigraph with distinguishable edges; ``edges[e] = (u, v)`` (``u == v`` for a loop)."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_diagram(cls, d) -> "AbstractGraph":
        return cls(d.n_vertices, tuple(d.endpoints(e) for e in range(d.n_edges)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def incident(self, v: int) -> list[int]:
        return [e for e, (a, b) in enumerate(self.edges) if v in (a, b)]

    def guard(self) -> None:
        if self.n_edges > MAX_EDGES:
            raise SizeGuardError(f"{self.n_edges} edges exceeds the exhaustive-search limit of {MAX_EDGES}")


def star_of_loops() -> AbstractGraph:
    """A centre joined to three vertices that each carry a loop: trivalent, no perfect matching."""
    return AbstractGraph(4, ((0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)))


def is_perfect_matching(g: AbstractGraph, matching: Iterable[int]) -> bool:
    covered = [0] * g.n_vertices
    for e in matching:
        u, v = g.edges[e]
        if u == v:
            return False
        covered[u] += 1
        covered[v] += 1
    return all(c == 1 for c in covered)


def _require_matching(g: AbstractGraph, matching: Iterable[int]) -> frozenset[int]:
    m = frozenset(matching)
    if not is_perfect_matching(g, m):
        raise ValueError("not a perfect matching of the graph")
    return m


def enumerate_perfect_matchings(g: AbstractGraph) -> list[frozenset[int]]:
    """Every perfect matching, found by matching the lowest free vertex first.

    Order is deterministic: lexicographic in the ascending edge choices.
    """
    g.guard()
    incident = [sorted(e for e in g.incident(v) if g.edges[e][0] != g.edges[e][1]) for v in range(g.n_vertices)]
    out: list[frozenset[int]] = []
    used = [False] * g.n_vertices
    chosen: list[int] = []

    def search() -> None:
        try:
            v = used.index(False)
        except ValueError:
            out.append(frozenset(chosen))
            return
        used[v] = True
        for e in incident[v]:
            a, b = g.edges[e]
            w = b if a == v else a
            if not used[w]:
                used[w] = True
                chosen.append(e)
                search()
                chosen.pop()
                used[w] = False
        used[v] = False

    search()
    return out


def two_factors_through(g: AbstractGraph, matching: Iterable[int]) -> list[frozenset[int]]:
    """All 2-regular spanning subgraphs containing ``matching`` (tries every subset of the rest)."""
    g.guard()
    m = _require_matching(g, matching)
    rest = [e for e in range(g.n_edges) if e not in m]
    found = []
    for mask in range(1 << len(rest)):
        degree = [1] * g.n_vertices
        picked = [rest[i] for i in range(len(rest)) if mask >> i & 1]
        for e in picked:
            u, v = g.edges[e]
            degree[u] += 1
            degree[v] += 1
        if all(x == 2 for x in degree):
            found.append(m | frozenset(picked))
    return found


def count_two_factors_through(g: AbstractGraph, matching: Iterable[int]) -> int:
    return len(two_factors_through(g, matching))


def count_tait_colorings(g: AbstractGraph) -> int:
    """Proper 3-edge-colourings, counted by backtracking over edges in id order."""
    g.guard()
    for v in range(g.n_vertices):
        if g.degree(v) != 3:
            raise ValueError(f"vertex {v} has degree {g.degree(v)}; Tait colourings need a trivalent graph")
    if any(u == v for u, v in g.edges):
        return 0
    colours_at: list[list[int]] = [[] for _ in range(g.n_vertices)]

    def search(e: int) -> int:
        if e == g.n_edges:
            return 1
        u, v = g.edges[e]
        total = 0
        for c in range(3):
            if c in colours_at[u] or c in colours_at[v]:
                continue
            colours_at[u].append(c)
            colours_at[v].append(c)
            total += search(e + 1)
            colours_at[u].pop()
            colours_at[v].pop()
        return total

    return search(0)


def cycles_off_matching(g: AbstractGraph, matching: Iterable[int]) -> list[list[int]]:
    """Edge lists of the cycles of ``G - M`` (a disjoint cycle cover of a trivalent graph)."""
    m = _require_matching(g, matching)
    rest = [e for e in range(g.n_edges) if e not in m]
    adj: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for e in rest:
        u, v = g.edges[e]
        adj[u].append(e)
        if v != u:
            adj[v].append(e)
    seen_edges: set[int] = set()
    cycles = []
    for e0 in rest:
        if e0 in seen_edges:
            continue
        # collect the component containing e0
        stack, comp = [e0], []
        seen_edges.add(e0)
        while stack:
            e = stack.pop()
            comp.append(e)
            for w in g.edges[e]:
                for f in adj[w]:
                    if f not in seen_edges:
                        seen_edges.add(f)
                        stack.append(f)
        cycles.append(sorted(comp))
    return cycles


def is_even_matching(g: AbstractGraph, matching: Sequence[int]) -> bool:
    return all(len(c) % 2 == 0 for c in cycles_off_matching(g, matching))
