"""Cohomology and polynomial invariants of planar trivalent graphs with perfect matchings."""

from .homology import (
    ChainComplex,
    CohomologyTable,
    chain_complex,
    cohomology,
    cohomology_of,
    graded_euler,
    verify_d_squared,
    verify_flip_chain_map,
)
from .laurent import (
    LaurentPoly,
    eval_int,
    format_poly,
    four_color_polynomial,
    generalized_bracket,
    parse_poly,
    tait_polynomial,
    two_factor_polynomial,
)
from .planar_map import (
    FlipSpec,
    PlanarDiagram,
    add_lollipop,
    bridges,
    disjoint_union,
    flip,
    format_diagram,
    generate_family,
    parse_diagram,
    validate,
)
from .states import circle_profile, hypercube, resolve

__version__ = "0.1.0"
