"""Floating-point oracle for the sphere structure coefficients.

Normalised associated Legendre functions, their half-interval inner
product, and Gaunt-projection quadrature.  This path shares no code with
the exact coupling module: Legendre values come from the three-term
recurrence and integrals from Gauss-Legendre quadrature in x = cos(theta),
so agreement with the exact coefficients is an independent check.

Condon-Shortley signs throughout, matching the exact side, so the
comparison is sign-exact rather than magnitude-only.

Note on normalisation: the functions here carry the sqrt(2l+1) factor
that makes the half-interval inner product orthonormal and the projection
reproduce the product-expansion coefficients exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def legendre_assoc(l: int, m: int, x) -> float:
    """Associated Legendre P_{lm}(x) by the stable upward recurrence.

    Negative m via the reflection identity
    P_{l,-m} = (-1)^m (l-m)!/(l+m)! P_{lm}.
    """
    if l < 0 or l < abs(m):
        raise ValueError(f"need l >= |m| >= 0, got l={l}, m={m}")
    scalar = np.isscalar(x)
    xv = np.asarray(x, dtype=float)
    if np.any(xv < -1.0) or np.any(xv > 1.0):
        raise ValueError("argument must lie in [-1, 1]")
    if m < 0:
        mm = -m
        ratio = math.factorial(l - mm) / math.factorial(l + mm)
        sign = -1.0 if mm % 2 else 1.0
        out = sign * ratio * legendre_assoc(l, mm, xv)
        return float(out) if scalar else out
    # P_mm = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    pmm = np.ones_like(xv)
    if m > 0:
        somx2 = np.sqrt((1.0 - xv) * (1.0 + xv))
        fact = 1.0
        for _ in range(m):
            pmm = -pmm * fact * somx2
            fact += 2.0
    if l == m:
        return float(pmm) if scalar else pmm
    pmmp1 = xv * (2 * m + 1) * pmm
    if l == m + 1:
        return float(pmmp1) if scalar else pmmp1
    for ll in range(m + 2, l + 1):
        pll = (xv * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
        pmm, pmmp1 = pmmp1, pll
    return float(pmmp1) if scalar else pmmp1


def q_normalization(l: int, m: int) -> float:
    """sqrt((2l+1) (l-m)!/(l+m)!)."""
    return math.sqrt((2 * l + 1) * math.factorial(l - m) / math.factorial(l + m))


@dataclass(frozen=True)
class QFunction:
    """A normalised Legendre function, orthonormal under the half-interval product."""

    l: int
    m: int

    def __post_init__(self):
        if self.l < abs(self.m):
            raise ValueError(f"need l >= |m|, got l={self.l}, m={self.m}")

    def __call__(self, x):
        return q_normalization(self.l, self.m) * legendre_assoc(self.l, self.m, x)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    @property
    def count(self) -> int:
        return len(self.nodes)

    def integrate(self, f) -> float:
        x = np.asarray(self.nodes)
        w = np.asarray(self.weights)
        return float(np.dot(w, f(x)))


@lru_cache(maxsize=None)
def gauss_legendre_rule(count: int) -> QuadratureRule:
    if count < 1:
        raise ValueError("need at least one node")
    x, w = np.polynomial.legendre.leggauss(count)
    return QuadratureRule(tuple(x.tolist()), tuple(w.tolist()))


def inner_product(f: QFunction, g: QFunction, rule: QuadratureRule | None = None) -> float:
    """The half-interval product (f, g) = 1/2 int_0^pi f g sin(theta) d(theta)."""
    if f.m != g.m:
        raise ValueError("the inner product pairs equal azimuthal labels only")
    if rule is None:
        rule = gauss_legendre_rule(f.l + g.l + 8)
    return 0.5 * rule.integrate(lambda x: f(x) * g(x))


def gaunt_project(l1: int, m1: int, l2: int, m2: int, l3: int,
                  nodes: int | None = None) -> float:
    """Quadrature projection of a product of harmonics onto the l3 one.

    Equals the exact structure coefficient within quadrature rounding: the
    integrand is a polynomial of degree l1+l2+l3, so the default node count
    makes the rule exact up to float arithmetic.
    """
    for l, m in ((l1, m1), (l2, m2)):
        if l < abs(m):
            raise ValueError(f"need l >= |m|, got l={l}, m={m}")
    m3 = m1 + m2
    if l3 < abs(m3):
        return 0.0
    if nodes is None:
        nodes = l1 + l2 + l3 + 8
    rule = gauss_legendre_rule(nodes)
    q1, q2, q3 = QFunction(l1, m1), QFunction(l2, m2), QFunction(l3, m3)
    return 0.5 * rule.integrate(lambda x: q1(x) * q2(x) * q3(x))


def fourier_oracle_torus(m1: int, n1: int, m2: int, n2: int) -> tuple[float, float]:
    """Check that torus mode products project onto the mode sum and nowhere else.

    Returns (weight on the (m1+m2, n1+n2) mode, largest leakage onto any
    other mode in the scanned window).
    """
    window = max(abs(m1), abs(n1), abs(m2), abs(n2), abs(m1 + m2), abs(n1 + n2)) + 2
    grid = 4 * window + 9

    def weights_1d(total: int) -> np.ndarray:
        theta = 2.0 * np.pi * np.arange(grid) / grid
        values = np.exp(-1j * total * theta)
        # projection of e^{-i total theta} onto e^{-i M theta} for each M in window
        out = np.empty(2 * window + 1)
        for idx, mode in enumerate(range(-window, window + 1)):
            out[idx] = abs(np.mean(values * np.exp(1j * mode * theta)))
        return out

    wm = weights_1d(m1 + m2)
    wn = weights_1d(n1 + n2)
    table = np.outer(wm, wn)
    ti = m1 + m2 + window
    tj = n1 + n2 + window
    target = table[ti, tj]
    table[ti, tj] = 0.0
    return float(target), float(table.max())
