"""Virasoro semidirect extensions of the current algebras.

Three families: the circle (the usual semidirect sum of Virasoro and the
affine algebra), the two-torus, and the two-sphere.  Each carries a single
current central k and the Virasoro central c; the grading operator of the
plain current algebra is realised as -L at zero mode, so it is not a
separate generator here.

The pure-current sector of each family coincides term for term with the
corresponding plain bracket (with the torus pair k1, k2 collapsed to the
single k, k2 -> 0).
"""

from __future__ import annotations

from fractions import Fraction

from .base_algebra import BaseAlgebra
from .coupling import coupling_range, structure_coeff
from .elements import (
    CCentral, CircleT, Element, FamilyMixError, K, LCircle, LSphere, LTorus,
    SphereE, SphereH, SphereT, TorusE, TorusH, TorusT,
    bilinear_bracket, genid_text,
)
from .surd import Surd


def _vir_charge(m: int) -> Fraction:
    # The anomaly m(m^2 - 1)/12 multiplying the central charge.
    return Fraction(m * (m * m - 1), 12)


class _VirasoroFamily:
    def __init__(self, base: BaseAlgebra):
        self.base = base
        self._pair_cache: dict[tuple, Element] = {}

    def _check_family(self, x: Element):
        for gid in x.generators():
            if not isinstance(gid, self._family):
                raise FamilyMixError(
                    f"{genid_text(gid)} does not belong to the {self._name} family"
                )

    def bracket(self, x: Element, y: Element) -> Element:
        self._check_family(x)
        self._check_family(y)
        return bilinear_bracket(self._pair, self._to_flavor(x), self._to_flavor(y))

    def _to_flavor(self, x: Element) -> Element:
        return x

    def _pair(self, g1, g2) -> Element:
        key = (g1, g2)
        out = self._pair_cache.get(key)
        if out is None:
            out = self._pair_bracket(g1, g2)
            self._pair_cache[key] = out
        return out


class CircleVirasoro(_VirasoroFamily):
    """Vir semidirect the affine current algebra on the circle."""

    _name = "circle"
    _family = (LCircle, CircleT, CCentral, K)

    def _pair_bracket(self, g1, g2) -> Element:
        if isinstance(g1, (CCentral, K)) or isinstance(g2, (CCentral, K)):
            return Element.zero()
        if isinstance(g1, LCircle) and isinstance(g2, LCircle):
            terms: dict[tuple, Surd] = {}
            if g1.m != g2.m:
                terms[(LCircle(g1.m + g2.m), 0)] = Surd(g1.m - g2.m)
            if g1.m + g2.m == 0:
                charge = _vir_charge(g1.m)
                if charge:
                    terms[(CCentral(), 0)] = Surd(charge)
            return Element(terms)
        if isinstance(g1, LCircle):
            # [L_m, T^a_n] = -n T^a_{m+n}
            return Element.of(CircleT(g2.a, g1.m + g2.m), -g2.m)
        if isinstance(g2, LCircle):
            return Element.of(CircleT(g1.a, g1.m + g2.m), g1.m)
        terms = {}
        m = g1.m + g2.m
        for c, fv in self.base.f_entries(g1.a, g2.a):
            terms[(CircleT(c, m), 1)] = fv
        if g1.a == g2.a and m == 0 and g1.m:
            terms[(K(), 0)] = Surd(g1.m)
        return Element(terms)


class TorusVirasoro(_VirasoroFamily):
    """Vir(T2) semidirect the one-central torus current algebra."""

    _name = "torus Virasoro"
    _family = (LTorus, TorusT, TorusH, TorusE, CCentral, K)

    def _to_flavor(self, x: Element) -> Element:
        if all(not isinstance(gid, (TorusH, TorusE)) for gid in x.generators()):
            return x
        total = Element.zero()
        for (gid, ipow), coeff in x.raw_items():
            if isinstance(gid, TorusH):
                piece = Element.of(TorusT(self.base.cartan_indices[gid.i - 1], gid.m, gid.n))
            elif isinstance(gid, TorusE):
                piece = Element(
                    {(TorusT(a, gid.m, gid.n), ip): c
                     for (a, ip), c in self.base.cw_combo(gid.root).items()}
                )
            else:
                piece = Element.of(gid)
            total = total + piece.scaled_i(coeff, ipow)
        return total

    def _pair_bracket(self, g1, g2) -> Element:
        if isinstance(g1, (CCentral, K)) or isinstance(g2, (CCentral, K)):
            return Element.zero()
        if isinstance(g1, LTorus) and isinstance(g2, LTorus):
            terms: dict[tuple, Surd] = {}
            if g1.m != g2.m:
                terms[(LTorus(g1.m + g2.m, g1.n + g2.n), 0)] = Surd(g1.m - g2.m)
            if g1.m + g2.m == 0 and g1.n + g2.n == 0:
                charge = _vir_charge(g1.m)
                if charge:
                    terms[(CCentral(), 0)] = Surd(charge)
            return Element(terms)
        if isinstance(g1, LTorus):
            # [L_{m1 n1}, T^a_{m2 n2}] = -m2 T^a_{m1+m2, n1+n2}
            return Element.of(TorusT(g2.a, g1.m + g2.m, g1.n + g2.n), -g2.m)
        if isinstance(g2, LTorus):
            return Element.of(TorusT(g1.a, g1.m + g2.m, g1.n + g2.n), g1.m)
        terms = {}
        m, n = g1.m + g2.m, g1.n + g2.n
        for c, fv in self.base.f_entries(g1.a, g2.a):
            terms[(TorusT(c, m, n), 1)] = fv
        if g1.a == g2.a and m == 0 and n == 0 and g1.m:
            terms[(K(), 0)] = Surd(g1.m)
        return Element(terms)


class SphereVirasoro(_VirasoroFamily):
    """Vir(S2) semidirect the sphere current algebra."""

    _name = "sphere Virasoro"
    _family = (LSphere, SphereT, SphereH, SphereE, CCentral, K)

    def _to_flavor(self, x: Element) -> Element:
        if all(not isinstance(gid, (SphereH, SphereE)) for gid in x.generators()):
            return x
        total = Element.zero()
        for (gid, ipow), coeff in x.raw_items():
            if isinstance(gid, SphereH):
                piece = Element.of(SphereT(self.base.cartan_indices[gid.i - 1], gid.l, gid.m))
            elif isinstance(gid, SphereE):
                piece = Element(
                    {(SphereT(a, gid.l, gid.m), ip): c
                     for (a, ip), c in self.base.cw_combo(gid.root).items()}
                )
            else:
                piece = Element.of(gid)
            total = total + piece.scaled_i(coeff, ipow)
        return total

    def _pair_bracket(self, g1, g2) -> Element:
        if isinstance(g1, (CCentral, K)) or isinstance(g2, (CCentral, K)):
            return Element.zero()
        if isinstance(g1, LSphere) and isinstance(g2, LSphere):
            terms: dict[tuple, Surd] = {}
            m3 = g1.m + g2.m
            if g1.m != g2.m:
                factor = g1.m - g2.m
                for l3 in coupling_range(g1.l, g1.m, g2.l, g2.m):
                    coeff = structure_coeff(g1.l, g1.m, g2.l, g2.m, l3) * factor
                    terms[(LSphere(l3, m3), 0)] = coeff
            if m3 == 0 and g1.l == g2.l:
                sign = -1 if (g1.m % 2) else 1
                charge = _vir_charge(g1.m) * sign
                if charge:
                    terms[(CCentral(), 0)] = Surd(charge)
            return Element(terms)
        if isinstance(g1, LSphere):
            # [L_{l1 m1}, T^a_{l2 m2}] = -m2 sum_l3 c^{l3} T^a_{l3, m1+m2}
            terms = {}
            if g2.m:
                m3 = g1.m + g2.m
                for l3 in coupling_range(g1.l, g1.m, g2.l, g2.m):
                    coeff = structure_coeff(g1.l, g1.m, g2.l, g2.m, l3) * (-g2.m)
                    terms[(SphereT(g2.a, l3, m3), 0)] = coeff
            return Element(terms)
        if isinstance(g2, LSphere):
            return -self._pair_bracket(g2, g1)
        terms = {}
        m3 = g1.m + g2.m
        entries = self.base.f_entries(g1.a, g2.a)
        if entries:
            for l3 in coupling_range(g1.l, g1.m, g2.l, g2.m):
                coeff = structure_coeff(g1.l, g1.m, g2.l, g2.m, l3)
                for c, fv in entries:
                    terms[(SphereT(c, l3, m3), 1)] = fv * coeff
        if g1.a == g2.a and g1.l == g2.l and m3 == 0 and g1.m:
            sign = -1 if (g1.m % 2) else 1
            terms[(K(), 0)] = Surd(sign * g1.m)
        return Element(terms)


def bracket_vir_circle(base: BaseAlgebra, x: Element, y: Element) -> Element:
    return CircleVirasoro(base).bracket(x, y)


def bracket_vir_torus(base: BaseAlgebra, x: Element, y: Element) -> Element:
    return TorusVirasoro(base).bracket(x, y)


def bracket_vir_sphere(base: BaseAlgebra, x: Element, y: Element) -> Element:
    return SphereVirasoro(base).bracket(x, y)
