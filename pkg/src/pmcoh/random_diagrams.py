"""Seeded random perfect matching drawings for property tests.

Diagrams grow from theta, the dumbbell or K4 by lollipops, chords (a new
matching edge joining midpoints of two non-matching edges) and disjoint
unions, and are then shuffled by random accepted flips.  Every step is
re-validated, so the output is always a valid drawing.
"""

from __future__ import annotations

import random
from typing import Optional

from .planar_map import (
    FlipError,
    FlipSpec,
    PlanarDiagram,
    add_lollipop,
    disjoint_union,
    flip,
    generate_family,
    validate,
)

__all__ = ["add_chord", "random_diagram", "random_diagrams"]


def _subdivide(rots: list[list[int]], e: int, new_edge: int, chord_dart: int, reverse: bool) -> list[int]:
    """Put a new vertex on edge ``e``; returns its rotation (appended to ``rots``)."""
    q = 2 * e + 1
    for rot in rots:
        if q in rot:
            rot[rot.index(q)] = 2 * new_edge + 1
            break
    rot = [q, 2 * new_edge, chord_dart]
    if reverse:
        rot = [q, chord_dart, 2 * new_edge]
    rots.append(rot)
    return rot


def add_chord(d: PlanarDiagram, e: int, f: int, rng: Optional[random.Random] = None) -> Optional[PlanarDiagram]:
    """Join midpoints of non-matching edges ``e`` and ``f`` by a new matching edge.

    Returns ``None`` when no orientation of the two new vertices is planar
    (the edges share no face).
    """
    if e == f or e in d.matching or f in d.matching:
        raise ValueError("need two distinct non-matching edges")
    E = d.n_edges
    he, hf, chord = E, E + 1, E + 2
    combos = [(a, b) for a in (False, True) for b in (False, True)]
    if rng is not None:
        rng.shuffle(combos)
    names = list(d.edge_names) + [f"{d.edge_names[e]}_h", f"{d.edge_names[f]}_h", f"c{E}"]
    vnames = list(d.vertex_names) + [f"p{d.n_vertices}", f"p{d.n_vertices + 1}"]
    for rev_e, rev_f in combos:
        rots = [list(r) for r in d.rotations]
        _subdivide(rots, e, he, 2 * chord, rev_e)
        _subdivide(rots, f, hf, 2 * chord + 1, rev_f)
        try:
            out = PlanarDiagram(tuple(tuple(r) for r in rots), d.matching | {chord}, tuple(vnames), tuple(names))
        except ValueError:
            return None
        if validate(out).ok:
            return out
    return None


def _random_flip(d: PlanarDiagram, rng: random.Random) -> PlanarDiagram:
    for _ in range(20):
        size = rng.randint(1, max(1, d.n_vertices - 1))
        inside = rng.sample(range(d.n_vertices), size)
        try:
            return flip(d, FlipSpec(inside))
        except FlipError:
            continue
    return d


def random_diagram(rng: random.Random, max_matching: int = 6, steps: int = 8) -> PlanarDiagram:
    seed_family = rng.choice(["theta", "dumbbell", "K4"])
    d = generate_family(seed_family, 1)
    for _ in range(steps):
        room = max_matching - d.n_matching
        if room <= 0:
            break
        op = rng.choice(["lollipop", "chord", "chord", "union", "flip"])
        free = [e for e in range(d.n_edges) if e not in d.matching]
        if op == "lollipop" and free:
            d = add_lollipop(d, rng.choice(free))
        elif op == "chord" and len(free) >= 2:
            e, f = rng.sample(free, 2)
            grown = add_chord(d, e, f, rng)
            if grown is not None:
                d = grown
        elif op == "union":
            extra = generate_family(rng.choice(["theta", "dumbbell"]), 1)
            if d.n_matching + extra.n_matching <= max_matching:
                d = disjoint_union(d, extra)
        else:
            d = _random_flip(d, rng)
    return _random_flip(d, rng)


def random_diagrams(seed: int, count: int, max_matching: int = 6) -> list[PlanarDiagram]:
    rng = random.Random(seed)
    return [random_diagram(rng, max_matching) for _ in range(count)]
