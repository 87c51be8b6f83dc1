"""Exact SO(3) Clebsch-Gordan coefficients and sphere structure coefficients.

Integer spins only, Condon-Shortley phase convention throughout.  The
coefficients are evaluated from Racah's closed-form sum entirely in
rational arithmetic, with a single surd square root taken at the end, so
every value is exact.

The functions are pure and memoised; the caches are ordinary lru_caches,
which are safe under concurrent lookup in CPython.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .surd import Surd


def _check_labels(l1: int, m1: int, l2: int, m2: int, l3: int, m3: int | None = None):
    for l, m in ((l1, m1), (l2, m2)) + (((l3, m3),) if m3 is not None else ()):
        if l < 0:
            raise ValueError(f"angular momentum must be a natural number, got {l}")
        if abs(m) > l:
            raise ValueError(f"invalid magnetic quantum number m={m} for l={l}")
    if l3 < 0:
        raise ValueError(f"angular momentum must be a natural number, got {l3}")


@lru_cache(maxsize=None)
def _cg_sum(l1: int, m1: int, l2: int, m2: int, l3: int) -> Fraction:
    # Racah's alternating sum; the only non-sqrt part of the coefficient.
    m3 = m1 + m2
    kmin = max(0, l2 - l3 - m1, l1 - l3 + m2)
    kmax = min(l1 + l2 - l3, l1 - m1, l2 + m2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (
            factorial(k)
            * factorial(l1 + l2 - l3 - k)
            * factorial(l1 - m1 - k)
            * factorial(l2 + m2 - k)
            * factorial(l3 - l2 + m1 + k)
            * factorial(l3 - l1 - m2 + k)
        )
        total += Fraction(-1 if k % 2 else 1, den)
    return total


@lru_cache(maxsize=None)
def _cg(l1: int, m1: int, l2: int, m2: int, l3: int) -> Surd:
    m3 = m1 + m2
    if abs(m3) > l3 or not (abs(l1 - l2) <= l3 <= l1 + l2):
        return Surd(0)
    s = _cg_sum(l1, m1, l2, m2, l3)
    if not s:
        return Surd(0)
    prefactor = Fraction(
        (2 * l3 + 1)
        * factorial(l3 + l1 - l2)
        * factorial(l3 - l1 + l2)
        * factorial(l1 + l2 - l3)
        * factorial(l3 + m3)
        * factorial(l3 - m3)
        * factorial(l1 - m1)
        * factorial(l1 + m1)
        * factorial(l2 - m2)
        * factorial(l2 + m2),
        factorial(l1 + l2 + l3 + 1),
    )
    return Surd.sqrt_rational(prefactor) * s


def clebsch_gordan(l1: int, m1: int, l2: int, m2: int, l3: int, m3: int) -> Surd:
    """Exact <l1 m1; l2 m2 | l3 m3> for integer spins."""
    _check_labels(l1, m1, l2, m2, l3, m3)
    if m3 != m1 + m2:
        return Surd(0)
    return _cg(l1, m1, l2, m2, l3)


@lru_cache(maxsize=None)
def structure_coeff(l1: int, m1: int, l2: int, m2: int, l3: int) -> Surd:
    """Coefficient of the l3 harmonic in the product of the (l1,m1), (l2,m2) ones.

    sqrt((2*l1+1)(2*l2+1)/(2*l3+1)) * <l1 0; l2 0|l3 0> * <l1 m1; l2 m2|l3 m1+m2>.
    Zero unless the triangle, parity and |m1+m2| <= l3 constraints hold.
    """
    _check_labels(l1, m1, l2, m2, l3)
    m3 = m1 + m2
    if abs(m3) > l3 or not (abs(l1 - l2) <= l3 <= l1 + l2) or (l1 + l2 + l3) % 2:
        return Surd(0)
    pref = Surd.sqrt_rational(Fraction((2 * l1 + 1) * (2 * l2 + 1), 2 * l3 + 1))
    return pref * _cg(l1, 0, l2, 0, l3) * _cg(l1, m1, l2, m2, l3)


@lru_cache(maxsize=None)
def coupling_range(l1: int, m1: int, l2: int, m2: int) -> tuple[int, ...]:
    """The l3 values with a nonzero structure coefficient, ascending."""
    _check_labels(l1, m1, l2, m2, abs(l1 - l2))
    m3 = abs(m1 + m2)
    out = []
    for l3 in range(max(abs(l1 - l2), m3), l1 + l2 + 1):
        if (l1 + l2 + l3) % 2:
            continue
        if structure_coeff(l1, m1, l2, m2, l3):
            out.append(l3)
    return tuple(out)
