"""Bit-packed linear algebra over GF(2).

A matrix is a list of Python ints; entry ``k`` is the image of source basis
vector ``k`` written as a bit vector over the target basis.
"""

from __future__ import annotations

from typing import Sequence


def rank(vectors: Sequence[int]) -> int:
    """Rank of a set of GF(2) vectors (xor elimination on leading bits)."""
    pivots: dict[int, int] = {}
    r = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                r += 1
                break
            v ^= p
    return r


def apply(matrix: Sequence[int], vector: int) -> int:
    """Image of ``vector`` (bit vector over the source basis)."""
    out = 0
    k = 0
    while vector:
        if vector & 1:
            out ^= matrix[k]
        vector >>= 1
        k += 1
    return out


def compose(second: Sequence[int], first: Sequence[int]) -> list[int]:
    """Matrix of ``second o first``."""
    return [apply(second, col) for col in first]


def is_zero(matrix: Sequence[int]) -> bool:
    return not any(matrix)
