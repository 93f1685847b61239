"""Bigraded GF(2) cochain complex of a perfect matching drawing.

A generator of ``C^{i,j}`` is a state ``alpha`` with ``|alpha| = i`` together
with the subset of its circles labelled ``x`` (the rest are labelled ``1``).
Its quantum degree is ``j = k - 2p + |alpha|``.  Subsets double as monomials
of the exterior algebra on the circles, which is how the flip chain map
``S = star R star`` is expressed.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from . import gf2
from .laurent import LaurentPoly
from .planar_map import FlipError, FlipSpec, PlanarDiagram, disjoint_union, flip, add_lollipop
from .states import CROSS, MERGE, Hypercube, HypercubeEdge, State, hypercube, resolve, smoothing_arcs

__all__ = [
    "Monomial",
    "ExteriorElement",
    "ChainComplex",
    "CohomologyTable",
    "FlipContext",
    "DSquaredError",
    "chain_complex",
    "verify_d_squared",
    "cohomology",
    "cohomology_of",
    "graded_euler",
    "hodge_star",
    "floor_div",
    "r_map",
    "s_map",
    "s_closed_form",
    "flip_contexts",
    "verify_flip_chain_map",
    "verify_lollipop",
    "verify_disjoint_union",
    "convolve",
    "worker_count",
]


class DSquaredError(ArithmeticError):
    pass


def worker_count() -> int:
    """Thread cap from ``PMCOH_THREADS`` (default 1)."""
    raw = os.environ.get("PMCOH_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _popcount(x: int) -> int:
    return bin(x).count("1")


class Monomial(NamedTuple):
    """Basis element: state ``alpha`` (``k`` circles) with circles in ``subset`` labelled x."""

    alpha: int
    subset: int
    k: int

    @property
    def p(self) -> int:
        return _popcount(self.subset)

    @property
    def i(self) -> int:
        return _popcount(self.alpha)

    @property
    def j(self) -> int:
        return self.k - 2 * self.p + self.i


@dataclass(frozen=True)
class ExteriorElement:
    """GF(2) sum of monomials in one state's exterior algebra."""

    alpha: int
    k: int
    terms: frozenset

    @classmethod
    def of(cls, alpha: int, k: int, subsets: Iterable[int]) -> "ExteriorElement":
        acc: set[int] = set()
        for s in subsets:
            acc ^= {s}
        return cls(alpha, k, frozenset(acc))

    @classmethod
    def from_monomial(cls, m: Monomial) -> "ExteriorElement":
        return cls(m.alpha, m.k, frozenset({m.subset}))

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        if (self.alpha, self.k) != (other.alpha, other.k):
            raise ValueError("cannot add elements of different states")
        return ExteriorElement(self.alpha, self.k, self.terms ^ other.terms)

    def monomials(self) -> list[Monomial]:
        return [Monomial(self.alpha, s, self.k) for s in sorted(self.terms)]


def _as_element(x: Union[Monomial, ExteriorElement, Iterable[Monomial]]) -> ExteriorElement:
    if isinstance(x, ExteriorElement):
        return x
    if isinstance(x, Monomial):
        return ExteriorElement.from_monomial(x)
    items = list(x)
    if not items:
        raise ValueError("empty sum has no state; pass an ExteriorElement instead")
    keys = {(m.alpha, m.k) for m in items}
    if len(keys) != 1:
        raise ValueError("all summands must share one state")
    (alpha, k), = keys
    return ExteriorElement.of(alpha, k, (m.subset for m in items))


def hodge_star(x: Union[Monomial, ExteriorElement, Iterable[Monomial]]) -> ExteriorElement:
    """Complement every circle subset (the mod 2 'Hodge star')."""
    e = _as_element(x)
    full = (1 << e.k) - 1
    return ExteriorElement(e.alpha, e.k, frozenset(full ^ s for s in e.terms))


def floor_div(subset: int, a: int) -> Optional[int]:
    """``[w / x_a]``: the subset without ``a`` if ``x_a`` divides ``w``, else ``None`` (zero)."""
    return subset & ~(1 << a) if subset >> a & 1 else None


def _times_linear(terms: frozenset, form: int) -> frozenset:
    """Multiply a GF(2) sum of monomials by the linear form ``sum_{a in form} x_a``."""
    acc: set[int] = set()
    for s in terms:
        rest = form & ~s
        while rest:
            low = rest & -rest
            acc ^= {s | low}
            rest ^= low
    return frozenset(acc)


# ---------------------------------------------------------------------------
# chain complex


def _edge_images(edge: HypercubeEdge, subset: int) -> list[int]:
    base = 0
    for c, t in edge.circle_map.items():
        if subset >> c & 1:
            base |= 1 << t
    if edge.kind == CROSS:
        return []
    if edge.kind == MERGE:
        c1, c2 = edge.touched
        x1, x2 = subset >> c1 & 1, subset >> c2 & 1
        if x1 and x2:
            return []
        (t,) = edge.images
        return [base | (1 << t if x1 or x2 else 0)]
    (c,) = edge.touched
    t1, t2 = edge.images
    if subset >> c & 1:
        return [base | 1 << t1 | 1 << t2]
    return [base | 1 << t1, base | 1 << t2]


@dataclass
class ChainComplex:
    cube: Hypercube
    bases: dict[tuple[int, int], tuple[Monomial, ...]]
    position: dict[Monomial, int]
    differentials: dict[tuple[int, int], list[int]]

    @property
    def diagram(self) -> PlanarDiagram:
        return self.cube.diagram

    def dim(self, i: int, j: int) -> int:
        return len(self.bases.get((i, j), ()))

    def bigradings(self) -> list[tuple[int, int]]:
        return sorted(self.bases)

    def vector(self, monomials: Iterable[Monomial]) -> int:
        v = 0
        for m in monomials:
            v ^= 1 << self.position[m]
        return v

    def differential_of(self, m: Monomial) -> list[Monomial]:
        """``d(m)`` as a list of target monomials (GF(2) sum, duplicates cancelled)."""
        bits = self.differentials[(m.i, m.j)][self.position[m]]
        target = self.bases.get((m.i + 1, m.j), ())
        return [target[t] for t in range(len(target)) if bits >> t & 1]


def chain_complex(h: Union[Hypercube, PlanarDiagram]) -> ChainComplex:
    cube = h if isinstance(h, Hypercube) else hypercube(h)
    groups: dict[tuple[int, int], list[Monomial]] = {}
    for st in cube.states:
        i = st.weight
        for subset in range(1 << st.k):
            m = Monomial(st.alpha, subset, st.k)
            groups.setdefault((i, m.j), []).append(m)
    bases = {key: tuple(sorted(ms)) for key, ms in sorted(groups.items())}
    position = {m: idx for ms in bases.values() for idx, m in enumerate(ms)}
    k_of = {st.alpha: st.k for st in cube.states}

    out_edges: dict[int, list[HypercubeEdge]] = {}
    for edge in cube.edges:
        out_edges.setdefault(edge.source, []).append(edge)

    differentials: dict[tuple[int, int], list[int]] = {}
    for (i, j), ms in bases.items():
        column = []
        for m in ms:
            v = 0
            for edge in out_edges.get(m.alpha, ()):
                kt = k_of[edge.target]
                for s in _edge_images(edge, m.subset):
                    v ^= 1 << position[Monomial(edge.target, s, kt)]
            column.append(v)
        differentials[(i, j)] = column
    return ChainComplex(cube, bases, position, differentials)


def verify_d_squared(c: ChainComplex) -> bool:
    for (i, j), first in c.differentials.items():
        second = c.differentials.get((i + 1, j))
        if second is None:
            continue
        if not gf2.is_zero(gf2.compose(second, first)):
            return False
    return True


# ---------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True)
class CohomologyTable:
    """Nonzero ``dim H^{i,j}`` values."""

    dims: dict

    def __init__(self, dims: dict):
        object.__setattr__(self, "dims", {k: v for k, v in sorted(dims.items()) if v})

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.dims.get(key, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohomologyTable):
            return NotImplemented
        return self.dims == other.dims

    def __hash__(self) -> int:
        return hash(tuple(self.dims.items()))

    def items(self) -> list[tuple[tuple[int, int], int]]:
        return list(self.dims.items())

    def poincare(self) -> dict:
        return dict(self.dims)

    def euler(self) -> LaurentPoly:
        return LaurentPoly((j, (-1) ** i * d) for (i, j), d in self.dims.items())

    def to_text(self) -> str:
        if not self.dims:
            return "j\\i\n"
        i_lo = min(i for i, _ in self.dims)
        i_hi = max(i for i, _ in self.dims)
        j_lo = min(j for _, j in self.dims)
        j_hi = max(j for _, j in self.dims)
        cols = list(range(i_lo, i_hi + 1))
        rows = [["j\\i"] + [str(i) for i in cols]]
        for j in range(j_hi, j_lo - 1, -1):
            rows.append([str(j)] + [str(self[(i, j)]) if self[(i, j)] else "." for i in cols])
        widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
        return "\n".join(" ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip() for r in rows) + "\n"

    def to_tsv(self) -> str:
        lines = ["i\tj\tdim"]
        lines += [f"{i}\t{j}\t{d}" for (i, j), d in self.dims.items()]
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "schemaVersion": 1,
            "cohomology": [{"i": i, "j": j, "dim": d} for (i, j), d in self.dims.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True) + "\n"


def cohomology(c: ChainComplex, check: bool = True) -> CohomologyTable:
    """``dim H^{i,j} = dim C^{i,j} - rank d^{i,j} - rank d^{i-1,j}``."""
    if check and not verify_d_squared(c):
        raise DSquaredError("the differential does not square to zero")
    keys = sorted(c.differentials)
    workers = worker_count()
    if workers > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ranks = dict(zip(keys, pool.map(lambda key: gf2.rank(c.differentials[key]), keys)))
    else:
        ranks = {key: gf2.rank(c.differentials[key]) for key in keys}
    dims = {}
    for (i, j), basis in c.bases.items():
        dims[(i, j)] = len(basis) - ranks[(i, j)] - ranks.get((i - 1, j), 0)
    return CohomologyTable(dims)


def cohomology_of(d: PlanarDiagram) -> CohomologyTable:
    return cohomology(chain_complex(d))


def graded_euler(c: ChainComplex) -> LaurentPoly:
    """``sum (-1)^i dim C^{i,j} q^j`` from the chain groups."""
    return LaurentPoly((j, (-1) ** i * len(b)) for (i, j), b in c.bases.items())


def convolve(t1: CohomologyTable, t2: CohomologyTable) -> CohomologyTable:
    """Kunneth product of two tables: bidegrees add, dimensions multiply."""
    out: dict[tuple[int, int], int] = {}
    for (i1, j1), a in t1.items():
        for (i2, j2), b in t2.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + a * b
    return CohomologyTable(out)


# ---------------------------------------------------------------------------
# 2-flip chain map


@dataclass(frozen=True)
class FlipContext:
    """How the circles of one state pass through a flipping disk.

    ``case`` follows the four configurations of boundary circles when both
    cut edges are matching edges: 1 (one
    circle, each smoothing's arcs joined inside), 2 (one circle running from
    one smoothing to the other), 3 (two circles, one per smoothing), 4 (two
    circles, each running from one smoothing to the other).  ``c1``/``c2``
    are set only in case 4.  Case 0 marks a flip whose cut edges are not
    matching edges, so no circle crosses the disk boundary at a smoothing.
    ``correspondence[c]`` is the index of the
    flipped state's circle matching circle ``c``.
    """

    alpha: int
    k: int
    case: int
    c1: Optional[int]
    c2: Optional[int]
    inside: tuple[int, ...]
    outside: tuple[int, ...]
    correspondence: tuple[int, ...]

    @classmethod
    def abstract(cls, k: int, d: int) -> "FlipContext":
        """Case 4 with circles ``0, 1`` as c1, c2 and ``2..d-1`` inside; identity correspondence."""
        if not 2 <= d <= k:
            raise ValueError("need 2 <= d <= k")
        return cls(0, k, 4, 0, 1, tuple(range(2, d)), tuple(range(d, k)), tuple(range(k)))

    @property
    def inside_mask(self) -> int:
        m = 0
        for a in self.inside:
            m |= 1 << a
        return m


def _relabel(subset: int, corr: tuple[int, ...]) -> int:
    out = 0
    for c, t in enumerate(corr):
        if subset >> c & 1:
            out |= 1 << t
    return out


def _check_ctx(ctx: FlipContext, x: Union[Monomial, ExteriorElement]) -> ExteriorElement:
    e = _as_element(x)
    if (e.alpha, e.k) != (ctx.alpha, ctx.k):
        raise ValueError("flip context does not belong to this state")
    return e


def _r_terms(ctx: FlipContext, terms: frozenset) -> frozenset:
    """``R`` in source circle labels (before relabelling)."""
    if ctx.case != 4 or not ctx.inside:
        return terms
    inside = ctx.inside_mask
    acc: set[int] = set()
    for s in terms:
        # peel x1 and x2 off, then multiply by their images
        rest = s & ~(1 << ctx.c1) & ~(1 << ctx.c2)
        partial = frozenset({rest})
        for c in (ctx.c1, ctx.c2):
            if s >> c & 1:
                partial = _times_linear(partial, (1 << c) | inside)
        acc ^= set(partial)
    return frozenset(acc)


def r_map(ctx: FlipContext, x: Union[Monomial, ExteriorElement]) -> ExteriorElement:
    e = _check_ctx(ctx, x)
    terms = _r_terms(ctx, e.terms)
    return ExteriorElement.of(ctx.alpha, ctx.k, (_relabel(s, ctx.correspondence) for s in terms))


def s_map(ctx: FlipContext, x: Union[Monomial, ExteriorElement]) -> ExteriorElement:
    """``S = star R star`` in case 4 and the circle relabelling otherwise."""
    e = _check_ctx(ctx, x)
    if ctx.case != 4:
        return ExteriorElement.of(ctx.alpha, ctx.k, (_relabel(s, ctx.correspondence) for s in e.terms))
    return hodge_star(r_map(ctx, hodge_star(e)))


def s_closed_form(ctx: FlipContext, subset: int) -> ExteriorElement:
    """The four-case closed formula for ``S(w)`` (case 4 only), in source labels."""
    if ctx.case != 4:
        raise ValueError("closed forms apply to case 4 contexts only")
    has1, has2 = subset >> ctx.c1 & 1, subset >> ctx.c2 & 1
    floors = [f for f in (floor_div(subset, a) for a in ctx.inside) if f is not None]
    terms = [subset]
    for c, present in ((ctx.c1, has1), (ctx.c2, has2)):
        if present:
            continue
        # x_c * [w / x_a]; the product vanishes if x_c already divides the floor
        terms.extend(f | 1 << c for f in floors if not f >> c & 1)
    return ExteriorElement.of(ctx.alpha, ctx.k, (_relabel(s, ctx.correspondence) for s in terms))


def _boundary_arcs(d: PlanarDiagram, e: int, bit: int, state: State) -> tuple[int, int]:
    """Circle index of each of the two smoothing arcs at matching edge ``e``."""
    (x1, _), (x2, _) = smoothing_arcs(d, e, bit)
    return state.circle_of[x1], state.circle_of[x2]


def flip_contexts(d: PlanarDiagram, spec: FlipSpec, flipped: Optional[PlanarDiagram] = None) -> list[FlipContext]:
    """One context per state of a 2-flip (both cut edges in M, or neither)."""
    cuts = spec.check(d)
    if len(cuts) != 2:
        raise FlipError(f"flip contexts need a 2-flip, got {len(cuts)} cut edges")
    if flipped is None:
        flipped = flip(d, spec)
    inside_darts = {x for v in spec.inside for x in d.rotations[v]}
    if cuts[0] not in d.matching:
        # no smoothing straddles the disk: every circle keeps its darts
        out = []
        for alpha in range(1 << d.n_matching):
            st, st2 = resolve(d, alpha), resolve(flipped, alpha)
            corr = tuple(st2.circle_of[min(c)] for c in st.circles)
            inside = tuple(c for c, circle in enumerate(st.circles) if circle <= inside_darts)
            rest = tuple(c for c in range(st.k) if c not in inside)
            out.append(FlipContext(alpha, st.k, 0, None, None, inside, rest, corr))
        return out
    e1, e2 = cuts
    b1, b2 = d.matching_edges.index(e1), d.matching_edges.index(e2)
    contexts = []
    for alpha in range(1 << d.n_matching):
        st, st2 = resolve(d, alpha), resolve(flipped, alpha)
        arcs1 = _boundary_arcs(d, e1, alpha >> b1 & 1, st)
        arcs2 = _boundary_arcs(d, e2, alpha >> b2 & 1, st)
        boundary = sorted(set(arcs1) | set(arcs2))
        if len(boundary) == 1:
            case = 2 if arcs1[0] == arcs1[1] and _crosses(d, st, e1, e2, alpha, b1, b2, inside_darts) else 1
        elif set(arcs1) == set(arcs2):
            case = 4
        else:
            case = 3
        corr = []
        for circle in st.circles:
            outside = [x for x in circle if x not in inside_darts]
            probe = min(outside) if outside else min(circle)
            corr.append(st2.circle_of[probe])
        inside = tuple(c for c, circle in enumerate(st.circles) if circle <= inside_darts)
        outside = tuple(c for c in range(st.k) if c not in boundary and c not in inside)
        c1 = c2 = None
        if case == 4:
            c1, c2 = boundary
        contexts.append(FlipContext(alpha, st.k, case, c1, c2, inside, outside, tuple(corr)))
    return contexts


def _crosses(d, st, e1, e2, alpha, b1, b2, inside_darts) -> bool:
    """For a single boundary circle: does its inside part run between the two smoothings?"""
    # walk the circle inside the disk from an inside end of e1's first arc
    (x, y), _ = smoothing_arcs(d, e1, alpha >> b1 & 1)
    start = x if x in inside_darts else y
    ends2 = set()
    for arc in smoothing_arcs(d, e2, alpha >> b2 & 1):
        ends2 |= {z for z in arc if z in inside_darts}
    arc_of = {}
    for i, e in enumerate(d.matching_edges):
        for u, v in smoothing_arcs(d, e, alpha >> i & 1):
            arc_of[u], arc_of[v] = v, u
    cur = start
    while True:
        nxt = cur ^ 1
        if nxt in ends2:
            return True
        if nxt not in arc_of:  # pragma: no cover - every dart lies on an arc
            return False
        cur = arc_of[nxt]
        if cur not in inside_darts:
            return False


def verify_flip_chain_map(d: PlanarDiagram, spec: FlipSpec) -> bool:
    """Check ``S o d = d~ o S`` on every generator and that ``S`` is invertible."""
    if not spec.inside:
        return True
    contexts = flip_contexts(d, spec)
    flipped = flip(d, spec)
    c = chain_complex(d)
    ct = chain_complex(flipped)
    if set(c.bases) != set(ct.bases):
        return False
    s_matrix: dict[tuple[int, int], list[int]] = {}
    for key, basis in c.bases.items():
        cols = []
        for m in basis:
            img = s_map(contexts[m.alpha], m)
            cols.append(ct.vector(img.monomials()))
        s_matrix[key] = cols
    for key, basis in c.bases.items():
        if gf2.rank(s_matrix[key]) != len(basis) or len(ct.bases[key]) != len(basis):
            return False
        i, j = key
        nxt = (i + 1, j)
        if nxt not in c.bases:
            continue
        lhs = gf2.compose(s_matrix[nxt], c.differentials[key])
        rhs = gf2.compose(ct.differentials[key], s_matrix[key])
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# structural identities


def verify_lollipop(d: PlanarDiagram, e: int) -> bool:
    """``H^{i,j}(G') = H^{i,j}(G) + H^{i-1,j-1}(G)`` for the lollipop on edge ``e``."""
    if e in d.matching:
        raise ValueError(f"edge {d.edge_names[e]} is a matching edge")
    before = cohomology_of(d)
    after = cohomology_of(add_lollipop(d, e))
    expected: dict[tuple[int, int], int] = dict(before.dims)
    for (i, j), n in before.items():
        expected[(i + 1, j + 1)] = expected.get((i + 1, j + 1), 0) + n
    return after == CohomologyTable(expected)


def verify_disjoint_union(d1: PlanarDiagram, d2: PlanarDiagram) -> bool:
    union = cohomology_of(disjoint_union(d1, d2))
    return union == convolve(cohomology_of(d1), cohomology_of(d2))
