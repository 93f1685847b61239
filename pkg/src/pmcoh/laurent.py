"""Exact integer Laurent polynomials in one variable and the bracket state sums.

Coefficients are Python ints, so arithmetic never wraps.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Union

if TYPE_CHECKING:
    from .planar_map import PlanarDiagram


class LaurentPoly:
    """Immutable element of Z[z, z^-1].

    Stored as a sorted tuple of ``(exponent, coefficient)`` pairs with no
    zero coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[int, int], Iterable[tuple[int, int]], None] = None):
        acc: dict[int, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, coeff in items:
                if isinstance(exp, bool) or isinstance(coeff, bool):
                    raise TypeError("exponents and coefficients must be ints")
                exp, coeff = int(exp), int(coeff)
                acc[exp] = acc.get(exp, 0) + coeff
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def z(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def coerce(cls, value: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls.constant(value)
        raise TypeError(f"cannot convert {value!r} to LaurentPoly")

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def as_dict(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exp: int) -> int:
        for e, c in self._terms:
            if e == exp:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[0][0]

    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[-1][0]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return LaurentPoly(self._terms + other._terms)

    __radd__ = __add__

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly((e, c * k) for e, k in self._terms)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by z^k."""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 0:
            # only monomials are units in Z[z, z^-1]
            if len(self._terms) == 1 and self._terms[0][1] in (1, -1):
                e, c = self._terms[0]
                return LaurentPoly({e * n: c ** (-n)})
            raise ValueError("negative power of a non-unit Laurent polynomial")
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient by a divisor whose leading coefficient is +-1.

        Raises ``ValueError`` when the division leaves a remainder.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        lead_e, lead_c = divisor.terms[-1]
        if lead_c not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        # shift both into Z[z] with the divisor's constant term nonzero
        low = divisor.min_degree()
        dv = divisor.shift(-low)
        top = dv.max_degree()
        rem = self.shift(-self.min_degree())
        quot: dict[int, int] = {}
        while rem and rem.max_degree() >= top:
            e, c = rem.terms[-1]
            q = c * lead_c
            quot[e - top] = q
            rem = rem - dv.shift(e - top).scale(q)
        if rem:
            raise ValueError(f"{self} is not divisible by {divisor}")
        return LaurentPoly(quot).shift(self.min_degree() - low)

    def eval_int(self, t: int) -> int:
        return eval_int(self, t)

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms]

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"


def eval_int(p: LaurentPoly, t: int) -> int:
    """Exact value of ``p`` at the nonzero integer ``t``.

    Negative exponents need ``t`` in {1, -1} or exact divisibility; the sum is
    computed as a single fraction with denominator ``t**(-min_exp)``.
    """
    if t == 0:
        raise ZeroDivisionError("cannot evaluate a Laurent polynomial at 0")
    if p.is_zero():
        return 0
    low = min(0, p.min_degree())
    numer = sum(c * t ** (e - low) for e, c in p.terms)
    denom = t ** (-low)
    q, r = divmod(numer, denom)
    if r:
        raise ValueError(f"{p} at {t} is not an integer")
    return q


def _format_term(exp: int, coeff: int, first: bool) -> str:
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    if exp == 0:
        body = str(mag)
    else:
        var = "z" if exp == 1 else f"z^{exp}"
        body = var if mag == 1 else f"{mag}{var}"
    if first:
        return body if sign == "+" else f"-{body}"
    return f" {sign} {body}"


def format_poly(p: LaurentPoly, var: str = "z") -> str:
    """Canonical text form, ascending exponents: ``z^-3 - z^2 + z^3 - z^4``."""
    if p.is_zero():
        return "0"
    out = "".join(_format_term(e, c, i == 0) for i, (e, c) in enumerate(p.terms))
    if var != "z":
        out = out.replace("z", var)
    return out


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coeff>\d+)?\s*\*?\s*
        (?P<var>[zq](?:\s*\^\s*(?P<exp>[+-]?\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse the canonical text form (also accepts ``q`` and ``3*z^-1``)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    if s == "0":
        return LaurentPoly()
    pos = 0
    acc: dict[int, int] = {}
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        if m.group("coeff") is None and m.group("var") is None:
            raise ValueError(f"dangling sign in {text!r} at offset {pos}")
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        if m.group("sign") == "-":
            coeff = -coeff
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        else:
            exp = 0
        acc[exp] = acc.get(exp, 0) + coeff
        pos = m.end()
        first = False
    return LaurentPoly(acc)


Z = LaurentPoly.z()
ONE = LaurentPoly.constant(1)
CIRCLE_TWO_FACTOR = LaurentPoly({-1: 1, 1: 1})
CIRCLE_FOUR_COLOR = LaurentPoly({-1: 1, 0: 1, 1: 1})


def state_sum(n: int, profile: Mapping[int, int], a: LaurentPoly, b: LaurentPoly, c: LaurentPoly) -> LaurentPoly:
    """Sum of A^(n-|alpha|) B^|alpha| C^k_alpha over a circle profile."""
    a, b, c = LaurentPoly.coerce(a), LaurentPoly.coerce(b), LaurentPoly.coerce(c)
    # group states by (|alpha|, k) so each power is formed once
    buckets: dict[tuple[int, int], int] = {}
    for alpha, k in profile.items():
        key = (bin(alpha).count("1"), k)
        buckets[key] = buckets.get(key, 0) + 1
    total = LaurentPoly()
    for (w, k), count in sorted(buckets.items()):
        total = total + (a ** (n - w) * b ** w * c ** k).scale(count)
    return total


def generalized_bracket(
    d: "PlanarDiagram",
    a: Union[LaurentPoly, int],
    b: Union[LaurentPoly, int],
    c: Union[LaurentPoly, int],
    normalize: bool = False,
) -> LaurentPoly:
    """State sum of ``d`` with bracket coefficients ``(a, b, c)``.

    With ``normalize`` the result is divided by ``c`` (exact because every
    state of a nonempty diagram has at least one circle).
    """
    from .states import circle_profile

    a, b, c = LaurentPoly.coerce(a), LaurentPoly.coerce(b), LaurentPoly.coerce(c)
    result = state_sum(d.n_matching, circle_profile(d), a, b, c)
    if normalize:
        if d.n_vertices == 0:
            raise ValueError("cannot normalize the bracket of the empty diagram")
        return result.exact_div(c)
    return result


def two_factor_polynomial(d: "PlanarDiagram") -> LaurentPoly:
    return generalized_bracket(d, ONE, -Z, CIRCLE_TWO_FACTOR)


def four_color_polynomial(d: "PlanarDiagram") -> LaurentPoly:
    return generalized_bracket(d, ONE, -Z, CIRCLE_FOUR_COLOR)


def tait_polynomial(d: "PlanarDiagram", per_matching: bool = False):
    """Sum of 2-factor polynomials over every perfect matching of ``d``'s graph.

    The marked matching of ``d`` is ignored.  With ``per_matching`` the
    return value is ``(total, [(matching, polynomial), ...])``.
    """
    from .oracles import AbstractGraph, enumerate_perfect_matchings

    graph = AbstractGraph.from_diagram(d)
    total = LaurentPoly()
    parts = []
    for matching in enumerate_perfect_matchings(graph):
        p = two_factor_polynomial(d.with_matching(matching))
        parts.append((matching, p))
        total = total + p
    if per_matching:
        return total, parts
    return total
