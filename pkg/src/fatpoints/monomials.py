"""Monomial bookkeeping for graded pieces of K[X_0, ..., X_n].

The global column convention is graded-lexicographic with X_0 > X_1 > ... > X_n;
within a fixed degree that is plain descending lex on exponent vectors, so the
degree-t basis runs X_0^t, X_0^(t-1)X_1, ..., X_n^t.  All consumers share this
enumeration, which keeps column indices (and golden outputs) deterministic.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb


def monomial_count(n: int, t: int) -> int:
    """Number of degree-t monomials in n+1 variables: C(t+n, n)."""
    return comb(t + n, n)


def _exponents_desc(nvars: int, t: int):
    if nvars == 1:
        yield (t,)
        return
    for head in range(t, -1, -1):
        for tail in _exponents_desc(nvars - 1, t - head):
            yield (head,) + tail


@lru_cache(maxsize=None)
def exponents(nvars: int, t: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree t in nvars variables, descending lex."""
    return tuple(_exponents_desc(nvars, t))


@lru_cache(maxsize=None)
def exponent_index(nvars: int, t: int) -> dict[tuple[int, ...], int]:
    """Column position of each degree-t exponent vector."""
    return {e: i for i, e in enumerate(exponents(nvars, t))}
