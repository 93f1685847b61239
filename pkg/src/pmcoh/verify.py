"""Verification suites run by ``pmcoh verify``.

Each suite takes a diagram and returns :class:`CheckResult` rows.  Rows
marked informational report conjectured cohomology tables; they never make a
run fail.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb

from .homology import (
    CohomologyTable,
    FlipContext,
    chain_complex,
    cohomology,
    cohomology_of,
    graded_euler,
    hodge_star,
    s_closed_form,
    s_map,
    verify_d_squared,
    verify_disjoint_union,
    verify_flip_chain_map,
    verify_lollipop,
    ExteriorElement,
)
from .laurent import eval_int, two_factor_polynomial
from .oracles import (
    MAX_EDGES,
    AbstractGraph,
    count_tait_colorings,
    count_two_factors_through,
    enumerate_perfect_matchings,
    is_even_matching,
)
from .planar_map import (
    FlipError,
    FlipSpec,
    PlanarDiagram,
    bridges,
    components,
    flip,
    generate_family,
)
from .laurent import tait_polynomial
from .states import bridge_via_states

SUITES = ("dsq", "euler", "flips", "oracles", "lollipop", "union", "smap", "all")

# exhaustive flip enumeration up to this many vertices, seeded sampling beyond
_EXHAUSTIVE_FLIP_VERTICES = 12
_SAMPLED_FLIPS = 256


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""
    informational: bool = False


def suite_dsq(d: PlanarDiagram) -> list[CheckResult]:
    return [CheckResult("dsq", "d^2 = 0", verify_d_squared(chain_complex(d)))]


def suite_euler(d: PlanarDiagram) -> list[CheckResult]:
    chi = graded_euler(chain_complex(d))
    poly = two_factor_polynomial(d)
    return [CheckResult("euler", "graded Euler characteristic = 2-factor polynomial", chi == poly, f"{chi} vs {poly}")]


def _side_of_bridge(d: PlanarDiagram, e: int) -> frozenset[int]:
    """Vertices reachable from the second endpoint of ``e`` without crossing ``e``."""
    start = d.endpoints(e)[1]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for x in d.rotations[v]:
            if x >> 1 == e:
                continue
            w = d.vertex_of(x ^ 1)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def candidate_flips(d: PlanarDiagram) -> list[FlipSpec]:
    """Accepted flips: every component, both sides of every bridge, and valid vertex subsets."""
    specs: dict[frozenset[int], FlipSpec] = {}
    for comp in components(d):
        specs.setdefault(frozenset(comp), FlipSpec(comp))
    for e in sorted(bridges(d)):
        side = _side_of_bridge(d, e)
        specs.setdefault(side, FlipSpec(side))
    n = d.n_vertices
    if n <= _EXHAUSTIVE_FLIP_VERTICES:
        subsets = (frozenset(s) for r in range(1, n) for s in itertools.combinations(range(n), r))
    else:
        rng = random.Random(n)
        subsets = (frozenset(rng.sample(range(n), rng.randint(1, n - 1))) for _ in range(_SAMPLED_FLIPS))
    for s in subsets:
        if s in specs:
            continue
        spec = FlipSpec(s)
        try:
            spec.check(d)
        except FlipError:
            continue
        specs[s] = spec
    return [specs[k] for k in sorted(specs, key=lambda s: (len(s), sorted(s)))]


def suite_flips(d: PlanarDiagram) -> list[CheckResult]:
    base = cohomology_of(d)
    out = []
    for spec in candidate_flips(d):
        label = f"{spec.kind(d)} inside={{{','.join(d.vertex_names[v] for v in sorted(spec.inside))}}}"
        try:
            flipped = flip(d, spec)
        except FlipError as exc:
            out.append(CheckResult("flips", label, True, f"rejected: {exc}", informational=True))
            continue
        same = cohomology_of(flipped) == base
        out.append(CheckResult("flips", label + " cohomology unchanged", same))
        if spec.kind(d).startswith("2-flip"):
            out.append(CheckResult("flips", label + " S is a chain isomorphism", verify_flip_chain_map(d, spec)))
    return out


def suite_oracles(d: PlanarDiagram) -> list[CheckResult]:
    g = AbstractGraph.from_diagram(d)
    if g.n_edges > MAX_EDGES:
        return [CheckResult("oracles", "size guard", True, f"skipped: {g.n_edges} edges > {MAX_EDGES}", True)]
    out = []
    poly = two_factor_polynomial(d)
    value = eval_int(poly, 1)
    count = count_two_factors_through(g, d.matching)
    out.append(CheckResult("oracles", "bracket(1) = #2-factors through M", value == count, f"{value} vs {count}"))
    if not is_even_matching(g, d.matching):
        out.append(CheckResult("oracles", "odd matching => bracket(1) = 0", value == 0, str(value)))
    if bridges(d):
        out.append(CheckResult("oracles", "bridge => bracket(1) = 0", value == 0, str(value)))
    tait = eval_int(tait_polynomial(d), 1)
    colourings = count_tait_colorings(g)
    out.append(CheckResult("oracles", "T(1) = #Tait colourings", tait == colourings, f"{tait} vs {colourings}"))
    dfs = bridges(d)
    agree = all(bridge_via_states(d, e) == (e in dfs) for e in d.matching_edges)
    out.append(CheckResult("oracles", "state bridge test = DFS bridges", agree and dfs <= d.matching))
    return out


def suite_lollipop(d: PlanarDiagram, limit: int = 6) -> list[CheckResult]:
    free = [e for e in range(d.n_edges) if e not in d.matching][:limit]
    return [
        CheckResult("lollipop", f"lollipop on {d.edge_names[e]}", verify_lollipop(d, e)) for e in free
    ]


def suite_union(d: PlanarDiagram) -> list[CheckResult]:
    theta = generate_family("theta", 1)
    out = [CheckResult("union", "Kunneth with theta", verify_disjoint_union(d, theta))]
    if d.n_matching <= 3:
        out.append(CheckResult("union", "Kunneth with itself", verify_disjoint_union(d, d)))
    return out


def star_involution_holds(max_k: int = 6) -> bool:
    for k in range(max_k + 1):
        for s in range(1 << k):
            e = ExteriorElement(0, k, frozenset({s}))
            if hodge_star(hodge_star(e)) != e:
                return False
        # sums too: a few structured ones per k
        for width in range(1, min(4, 1 << k) + 1):
            e = ExteriorElement.of(0, k, range(width))
            if hodge_star(hodge_star(e)) != e:
                return False
    return True


def s_closed_forms_hold(max_k: int = 6, max_d: int = 4) -> bool:
    for k in range(2, max_k + 1):
        for dd in range(2, min(max_d, k) + 1):
            ctx = FlipContext.abstract(k, dd)
            for s in range(1 << k):
                e = ExteriorElement(0, k, frozenset({s}))
                if s_map(ctx, e) != s_closed_form(ctx, s):
                    return False
    return True


def suite_smap(d: PlanarDiagram) -> list[CheckResult]:
    out = [
        CheckResult("smap", "star^2 = Id (k <= 6)", star_involution_holds()),
        CheckResult("smap", "S closed forms (k <= 6, d <= 4)", s_closed_forms_hold()),
    ]
    for spec in candidate_flips(d):
        if spec.kind(d).startswith("2-flip"):
            names = ",".join(d.vertex_names[v] for v in sorted(spec.inside))
            out.append(CheckResult("smap", f"S chain map inside={{{names}}}", verify_flip_chain_map(d, spec)))
    return out


# ---------------------------------------------------------------------------
# informational conjecture reports


def theta_conjecture_table(m: int) -> CohomologyTable:
    return CohomologyTable({(0, 1 - m): 1, (0, -1 - m): 1})


def prism_conjecture_table(m: int) -> CohomologyTable:
    dims = {}
    for i in range(0, m - 1):
        dims[(i, 2 * i - m)] = 1
        dims[(i, 2 * i - m + 2)] = 1
    if m % 2:
        dims.update({(m - 1, m - 2): 1, (m - 1, m): 1, (m, m - 1): 1, (m, m + 1): 1})
    else:
        dims.update({(m, m): 1, (m, m + 2): 1})
    return CohomologyTable(dims)


def dumbbell_table(m: int) -> CohomologyTable:
    dims = {}
    for i in range(m + 1):
        dims[(i, i - 1)] = comb(m, i)
        dims[(i, i + 1)] = comb(m, i)
    return CohomologyTable(dims)


def conjecture_reports(max_m: int = 6) -> list[CheckResult]:
    out = []
    for m in range(1, max_m + 1):
        got = cohomology_of(generate_family("theta", m))
        out.append(CheckResult("conjectures", f"theta_{m} cohomology", got == theta_conjecture_table(m), "", True))
    for m in range(2, max_m + 1):
        got = cohomology_of(generate_family("prism-L", m))
        out.append(CheckResult("conjectures", f"prism P_{m} ladder cohomology", got == prism_conjecture_table(m), "", True))
    for fam, m in [("theta", 1), ("K4", 1), ("prism-L", 3), ("prism-L", 4), ("prism-L", 5), ("prism-L", 6)]:
        d = generate_family(fam, m)
        g = AbstractGraph.from_diagram(d)
        ok = True
        for matching in enumerate_perfect_matchings(g):
            if is_even_matching(g, matching):
                ok = ok and eval_int(two_factor_polynomial(d.with_matching(matching)), 1) > 0
        out.append(CheckResult("conjectures", f"even matchings of {fam} m={m} have bracket(1) > 0", ok, "", True))
    return out


_SUITE_FUNCS = {
    "dsq": suite_dsq,
    "euler": suite_euler,
    "flips": suite_flips,
    "oracles": suite_oracles,
    "lollipop": suite_lollipop,
    "union": suite_union,
    "smap": suite_smap,
}


def run_suite(name: str, d: PlanarDiagram, conjectures: bool = True) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    if name != "all":
        return _SUITE_FUNCS[name](d)
    out = []
    for key in SUITES[:-1]:
        out.extend(_SUITE_FUNCS[key](d))
    if conjectures:
        out.extend(conjecture_reports())
    return out
