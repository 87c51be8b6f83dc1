import itertools
from fractions import Fraction

import pytest

from gkmalg.base_algebra import builtin_algebra
from gkmalg.elements import (
    CCentral, CircleT, Element, FamilyMixError, K, LCircle, LSphere, LTorus,
    SphereT, TorusT,
)
from gkmalg.gkm import SphereAlgebra, TorusAlgebra
from gkmalg.surd import Surd
from gkmalg.verify import jacobi_triple
from gkmalg.virasoro import CircleVirasoro, SphereVirasoro, TorusVirasoro


def test_circle_witt_bracket():
    su2 = builtin_algebra("su2")
    v = CircleVirasoro(su2)
    out = v.bracket(Element.of(LCircle(1)), Element.of(LCircle(-1)))
    assert out == Element.of(LCircle(0), 2)


def test_circle_central_charge():
    su2 = builtin_algebra("su2")
    v = CircleVirasoro(su2)
    out = v.bracket(Element.of(LCircle(2)), Element.of(LCircle(-2)))
    assert out == Element.of(LCircle(0), 4) + Element.of(CCentral(), Fraction(1, 2))


def test_circle_mixed_bracket():
    su2 = builtin_algebra("su2")
    v = CircleVirasoro(su2)
    out = v.bracket(Element.of(LCircle(3)), Element.of(CircleT(1, -1)))
    assert out == Element.of(CircleT(1, 2), 1)
    out = v.bracket(Element.of(CircleT(1, 2)), Element.of(CircleT(1, -2)))
    assert out == Element.of(K(), 2)


def test_torus_virasoro_brackets():
    su2 = builtin_algebra("su2")
    v = TorusVirasoro(su2)
    out = v.bracket(Element.of(LTorus(1, 2)), Element.of(LTorus(-1, 5)))
    assert out == Element.of(LTorus(0, 7), 2)
    out = v.bracket(Element.of(LTorus(0, 0)), Element.of(TorusT(1, 2, 7)))
    assert out == Element.of(TorusT(1, 2, 7), -2)
    # central part of the current bracket carries only the first mode
    out = v.bracket(Element.of(TorusT(1, 3, -2)), Element.of(TorusT(1, -3, 2)))
    assert out == Element.of(K(), 3)


def test_torus_virasoro_central_charge():
    su2 = builtin_algebra("su2")
    v = TorusVirasoro(su2)
    out = v.bracket(Element.of(LTorus(2, 1)), Element.of(LTorus(-2, -1)))
    assert out == Element.of(LTorus(0, 0), 4) + Element.of(CCentral(), Fraction(1, 2))
    # no anomaly unless both mode sums vanish
    out = v.bracket(Element.of(LTorus(2, 1)), Element.of(LTorus(-2, 0)))
    assert out == Element.of(LTorus(0, 1), 4)


def test_sphere_virasoro_l_on_l():
    su2 = builtin_algebra("su2")
    v = SphereVirasoro(su2)
    # [L_{0,0}, L_{l,m}] = -m L_{l,m}, consistent with d = -L_{0,0}
    out = v.bracket(Element.of(LSphere(0, 0)), Element.of(LSphere(2, 1)))
    assert out == Element.of(LSphere(2, 1), -1)
    # [L_{1,1}, L_{1,-1}] = 2 (c^0 L_{0,0} + c^2 L_{2,0}), anomaly m(m^2-1) = 0
    out = v.bracket(Element.of(LSphere(1, 1)), Element.of(LSphere(1, -1)))
    want = (Element.of(LSphere(0, 0), -2)
            + Element.of(LSphere(2, 0), Surd({5: Fraction(2, 5)})))
    assert out == want


def test_sphere_virasoro_anomaly():
    su2 = builtin_algebra("su2")
    v = SphereVirasoro(su2)
    out = v.bracket(Element.of(LSphere(2, 2)), Element.of(LSphere(2, -2)))
    central = out.coeff(CCentral())
    assert central == Surd(Fraction(1, 2))
    out = v.bracket(Element.of(LSphere(3, 2)), Element.of(LSphere(2, -2)))
    assert out.coeff(CCentral()).is_zero()


def test_sphere_virasoro_mixed():
    su2 = builtin_algebra("su2")
    v = SphereVirasoro(su2)
    from gkmalg.coupling import coupling_range, structure_coeff
    out = v.bracket(Element.of(LSphere(2, 2)), Element.of(SphereT(1, 1, -1)))
    want = Element.zero()
    for l3 in coupling_range(2, 2, 1, -1):
        want = want + Element.of(SphereT(1, l3, 1), structure_coeff(2, 2, 1, -1, l3))
    assert out == want


def test_current_sectors_match_plain_brackets():
    su3 = builtin_algebra("su3")
    vt = TorusVirasoro(su3)
    t = TorusAlgebra(su3)
    for a, b in itertools.product((1, 3, 8), repeat=2):
        for modes in [((1, 0), (-1, 0)), ((2, -1), (-2, 1)), ((1, 1), (2, 2))]:
            (m1, n1), (m2, n2) = modes
            out = vt.bracket(Element.of(TorusT(a, m1, n1)), Element.of(TorusT(b, m2, n2)))
            plain = t.bracket(Element.of(TorusT(a, m1, n1)), Element.of(TorusT(b, m2, n2)))
            # the spec of the one-central family: k2 -> 0, k1 -> k
            from gkmalg.elements import K1, K2
            terms = {}
            for (gid, ip), c in plain.raw_items():
                if isinstance(gid, K2):
                    continue
                terms[(K() if isinstance(gid, K1) else gid, ip)] = c
            assert out == Element(terms)

    vs = SphereVirasoro(su3)
    s = SphereAlgebra(su3)
    for a, b in itertools.product((1, 2, 4), repeat=2):
        for lab in [((1, 1), (1, -1)), ((2, 0), (1, 0)), ((2, -2), (2, 2))]:
            (l1, m1), (l2, m2) = lab
            out = vs.bracket(Element.of(SphereT(a, l1, m1)), Element.of(SphereT(b, l2, m2)))
            plain = s.bracket(Element.of(SphereT(a, l1, m1)), Element.of(SphereT(b, l2, m2)))
            assert out == plain


def test_grading_matches_minus_l00():
    su2 = builtin_algebra("su2")
    vt = TorusVirasoro(su2)
    x = Element.of(TorusT(2, 3, -1))
    assert vt.bracket(Element.of(LTorus(0, 0)), x).scaled(-1) == x.scaled(3)
    vs = SphereVirasoro(su2)
    y = Element.of(SphereT(2, 4, -3))
    assert vs.bracket(Element.of(LSphere(0, 0)), y).scaled(-1) == y.scaled(-3)
    vc = CircleVirasoro(su2)
    z = Element.of(CircleT(1, 4))
    assert vc.bracket(Element.of(LCircle(0)), z).scaled(-1) == z.scaled(4)


def test_vector_field_sector_is_a_lie_algebra():
    # with the central charge deleted, the L sector satisfies Jacobi on its own
    su2 = builtin_algebra("su2")
    for family, gens in [
        (CircleVirasoro(su2), [LCircle(m) for m in range(-3, 4)]),
        (TorusVirasoro(su2), [LTorus(m, n) for m in (-2, 0, 2) for n in (-1, 1)]),
        (SphereVirasoro(su2), [LSphere(l, m) for l in range(3) for m in range(-l, l + 1)]),
    ]:
        for x, y, z in itertools.combinations(gens, 3):
            res = jacobi_triple(family, x, y, z)
            stripped = {key: c for key, c in res.raw_items()
                        if not isinstance(key[0], CCentral)}
            assert not stripped


def test_family_mixing_rejected():
    su2 = builtin_algebra("su2")
    v = CircleVirasoro(su2)
    with pytest.raises(FamilyMixError):
        v.bracket(Element.of(LCircle(1)), Element.of(TorusT(1, 0, 0)))
    vt = TorusVirasoro(su2)
    with pytest.raises(FamilyMixError):
        vt.bracket(Element.of(LTorus(1, 0)), Element.of(LSphere(1, 0)))
