import math

import numpy as np
import pytest

from gkmalg.coupling import coupling_range, structure_coeff
from gkmalg.oracle import (
    QFunction, QuadratureRule, fourier_oracle_torus, gauss_legendre_rule,
    gaunt_project, inner_product, legendre_assoc,
)


def test_legendre_base_cases():
    assert legendre_assoc(0, 0, 0.3) == 1.0
    assert abs(legendre_assoc(1, 1, 0.0) + 1.0) < 1e-15  # Condon-Shortley sign
    assert abs(legendre_assoc(2, 0, 1.0) - 1.0) < 1e-15
    # P_2^0(x) = (3x^2 - 1)/2
    x = 0.37
    assert abs(legendre_assoc(2, 0, x) - (3 * x * x - 1) / 2) < 1e-14


def test_legendre_negative_m_reflection():
    x = -0.42
    for l, m in [(3, 1), (5, 2), (4, 4)]:
        want = (-1) ** m * math.factorial(l - m) / math.factorial(l + m) \
            * legendre_assoc(l, m, x)
        assert abs(legendre_assoc(l, -m, x) - want) < 1e-14


def test_legendre_domain_checks():
    with pytest.raises(ValueError):
        legendre_assoc(1, 2, 0.0)
    with pytest.raises(ValueError):
        legendre_assoc(2, 0, 1.5)


def test_q_reflection_identity():
    # Q_{l,-m} = (-1)^m Q_{l,m} pointwise
    xs = np.linspace(-1, 1, 7)
    for l, m in [(5, 2), (3, 3), (4, 1)]:
        qp = QFunction(l, m)
        qm = QFunction(l, -m)
        for x in xs:
            assert abs(qm(x) - (-1) ** m * qp(x)) < 1e-10


def test_quadrature_rule_polynomial_exactness():
    rule = gauss_legendre_rule(6)
    # exact for degree <= 11: integrate x^10 over [-1, 1]
    assert abs(rule.integrate(lambda x: x ** 10) - 2 / 11) < 1e-14
    assert isinstance(rule, QuadratureRule) and rule.count == 6


def test_orthonormality():
    rule = gauss_legendre_rule(64)
    assert abs(inner_product(QFunction(3, 2), QFunction(3, 2), rule) - 1) < 1e-10
    assert abs(inner_product(QFunction(4, 1), QFunction(2, 1), rule)) < 1e-10


def test_inner_product_requires_equal_m():
    with pytest.raises(ValueError):
        inner_product(QFunction(5, -2), QFunction(5, 2))


def test_gaunt_examples():
    assert abs(gaunt_project(0, 0, 4, 2, 4) - 1.0) < 1e-10
    assert abs(gaunt_project(1, 0, 1, 0, 0) - 1.0) < 1e-9
    assert abs(gaunt_project(1, 0, 1, 0, 1)) < 1e-12


def test_gaunt_matches_exact_sample():
    for l1, m1, l2, m2 in [(2, 1, 3, -2), (4, 0, 3, 1), (5, -3, 4, 2)]:
        for l3 in coupling_range(l1, m1, l2, m2):
            exact = structure_coeff(l1, m1, l2, m2, l3).to_float()
            assert abs(gaunt_project(l1, m1, l2, m2, l3) - exact) < 1e-9


def test_gaunt_quadrature_convergence():
    base = gaunt_project(4, 2, 5, -1, 7)
    doubled = gaunt_project(4, 2, 5, -1, 7, nodes=2 * (4 + 5 + 7 + 8))
    assert abs(base - doubled) < 1e-12


def test_fourier_oracle():
    weight, leak = fourier_oracle_torus(1, 0, -1, 0)
    assert abs(weight - 1.0) < 1e-12 and leak < 1e-12
    weight, leak = fourier_oracle_torus(2, 3, 1, -1)
    assert abs(weight - 1.0) < 1e-12 and leak < 1e-12
