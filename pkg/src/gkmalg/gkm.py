"""Kac-Moody algebras on the two-torus and the two-sphere.

TorusAlgebra and SphereAlgebra bind a compact simple base algebra to the
corresponding current algebra: two mode indices, two gradings d1, d2 and
two centrals k1, k2 for the torus; harmonic labels (l, m) with l >= |m|,
one grading d and one central k for the sphere.

Because the product of two basis harmonics is a finite combination of
harmonics, every bracket of two generators is a finite Element and every
identity below is checked with exact arithmetic; the algebras themselves
are never truncated, only test enumerations are.

Elements mixing the Cartan-Weyl and flavor bases are normalised to the
flavor basis before bracketing.  Bracket evaluation is pure; the per-pair
memo is an ordinary dict, safe under CPython concurrent lookup.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base_algebra import BaseAlgebra
from .coupling import coupling_range, structure_coeff
from .elements import (
    D, D1, D2, Element, FamilyMixError, K, K1, K2, Root,
    SphereE, SphereH, SphereT, TorusE, TorusH, TorusT,
    bilinear_bracket, genid_text,
)
from .surd import Surd

_TORUS_IDS = (TorusT, TorusH, TorusE, D1, D2, K1, K2)
_SPHERE_IDS = (SphereT, SphereH, SphereE, D, K)

_product_cache: dict[tuple[Surd, Surd], Surd] = {}


def _cached_mul(a: Surd, b: Surd) -> Surd:
    # The f-tensor entries take a handful of values while the coupling
    # coefficients repeat across flavor pairs, so their products are worth
    # caching across the whole table enumeration.
    key = (a, b)
    out = _product_cache.get(key)
    if out is None:
        out = a * b
        _product_cache[key] = out
    return out


@dataclass(frozen=True, slots=True)
class TorusRootLabel:
    alpha: Root  # all zeros for the Cartan family
    m: int
    n: int


@dataclass(frozen=True, slots=True)
class SphereRootLabel:
    alpha: Root
    m: int


def root_positive(label) -> bool:
    """Sign of a root label in the lexicographic mode-then-root ordering."""
    if isinstance(label, TorusRootLabel):
        parts = (label.n, label.m, sum(label.alpha))
    elif isinstance(label, SphereRootLabel):
        parts = (label.m, sum(label.alpha))
    else:
        raise TypeError(f"not a root label: {label!r}")
    for p in parts:
        if p > 0:
            return True
        if p < 0:
            return False
    raise ValueError("the zero label carries no sign")


class _CurrentAlgebra:
    """Shared machinery for the two manifold families."""

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
        return bilinear_bracket(self._pair, self.to_flavor(x), self.to_flavor(y))

    def _pair(self, g1, g2) -> Element:
        key = (g1, g2)
        out = self._pair_cache.get(key)
        if out is None:
            out = self._pair_bracket(g1, g2)
            self._pair_cache[key] = out
        return out

    def to_flavor(self, x: Element) -> Element:
        """Expand Cartan-Weyl generators into the orthonormal flavor basis."""
        if all(not isinstance(gid, self._cw_ids) for gid in x.generators()):
            return x
        total = Element.zero()
        for (gid, ipow), coeff in x.raw_items():
            if isinstance(gid, self._cw_ids):
                total = total + self._expand_cw(gid).scaled_i(coeff, ipow)
            else:
                total = total + Element.of(gid, coeff, ipow)
        return total


class TorusAlgebra(_CurrentAlgebra):
    _name = "torus"
    _family = _TORUS_IDS
    _cw_ids = (TorusH, TorusE)

    def _expand_cw(self, gid) -> Element:
        if isinstance(gid, TorusH):
            return Element.of(TorusT(self.base.cartan_indices[gid.i - 1], gid.m, gid.n))
        terms = {}
        for (a, ip), c in self.base.cw_combo(gid.root).items():
            terms[(TorusT(a, gid.m, gid.n), ip)] = c
        return Element(terms)

    def _pair_bracket(self, g1, g2) -> Element:
        if isinstance(g1, (K1, K2)) or isinstance(g2, (K1, K2)):
            return Element.zero()
        if isinstance(g1, (D1, D2)):
            if isinstance(g2, (D1, D2)):
                return Element.zero()
            eig = g2.m if isinstance(g1, D1) else g2.n
            return Element.of(g2, eig)
        if isinstance(g2, (D1, D2)):
            eig = g1.m if isinstance(g2, D1) else g1.n
            return Element.of(g1, -eig)
        # [T^a_{mn}, T^b_{pq}] = i f^{ab}_c T^c_{m+p,n+q}
        #                        + (k1 m + k2 n) delta^{ab} delta_{m+p} delta_{n+q}
        terms: dict[tuple, Surd] = {}
        m, n = g1.m + g2.m, g1.n + g2.n
        for c, fv in self.base.f_entries(g1.a, g2.a):
            terms[(TorusT(c, m, n), 1)] = fv
        if g1.a == g2.a and m == 0 and n == 0:
            if g1.m:
                terms[(K1(), 0)] = Surd(g1.m)
            if g1.n:
                terms[(K2(), 0)] = Surd(g1.n)
        return Element(terms)

    def cw_pair_bracket(self, g1, g2) -> Element:
        """Direct Cartan-Weyl bracket rules, used to cross-check the transport."""
        base = self.base
        if isinstance(g1, (K1, K2)) or isinstance(g2, (K1, K2)):
            return Element.zero()
        if isinstance(g1, (D1, D2)) or isinstance(g2, (D1, D2)):
            return self._pair_bracket(g1, g2)
        if isinstance(g1, TorusH) and isinstance(g2, TorusH):
            if g1.i == g2.i and g1.m + g2.m == 0 and g1.n + g2.n == 0:
                terms = {}
                if g1.m:
                    terms[(K1(), 0)] = Surd(g1.m)
                if g1.n:
                    terms[(K2(), 0)] = Surd(g1.n)
                return Element(terms)
            return Element.zero()
        if isinstance(g1, TorusH) and isinstance(g2, TorusE):
            comp = base.root_ortho(g2.root)[g1.i - 1]
            return Element.of(TorusE(g2.root, g1.m + g2.m, g1.n + g2.n), comp)
        if isinstance(g1, TorusE) and isinstance(g2, TorusH):
            return -self.cw_pair_bracket(g2, g1)
        total = tuple(x + y for x, y in zip(g1.root, g2.root))
        m, n = g1.m + g2.m, g1.n + g2.n
        if base.is_root(total):
            eps = base.epsilon[(g1.root, g2.root)]
            return Element.of(TorusE(total, m, n), eps)
        if any(total):
            return Element.zero()
        ortho = base.root_ortho(g1.root)
        terms = {(TorusH(i, m, n), 0): comp for i, comp in enumerate(ortho, start=1) if comp}
        if m == 0 and n == 0:
            if g1.m:
                terms[(K1(), 0)] = Surd(g1.m)
            if g1.n:
                terms[(K2(), 0)] = Surd(g1.n)
        return Element(terms)

    def to_cartan_weyl(self, x: Element) -> Element:
        """Rewrite an Element over {H^i, E_alpha} (gradings and centrals pass through)."""
        total = Element.zero()
        for (gid, ipow), coeff in x.raw_items():
            if isinstance(gid, TorusT):
                kind = self.base.t_combo(gid.a)
                if kind[0] == "H":
                    piece = Element.of(TorusH(kind[1], gid.m, gid.n))
                else:
                    piece = Element(
                        {(TorusE(root, gid.m, gid.n), ip): c for root, c, ip in kind[1]}
                    )
                total = total + piece.scaled_i(coeff, ipow)
            else:
                total = total + Element.of(gid, coeff, ipow)
        return total

    def root_decompose(self, x: Element) -> dict[TorusRootLabel, Element]:
        return _root_decompose(self.to_cartan_weyl(x), True, self.base.rank)


class SphereAlgebra(_CurrentAlgebra):
    _name = "sphere"
    _family = _SPHERE_IDS
    _cw_ids = (SphereH, SphereE)

    def _expand_cw(self, gid) -> Element:
        if isinstance(gid, SphereH):
            return Element.of(SphereT(self.base.cartan_indices[gid.i - 1], gid.l, gid.m))
        terms = {}
        for (a, ip), c in self.base.cw_combo(gid.root).items():
            terms[(SphereT(a, gid.l, gid.m), ip)] = c
        return Element(terms)

    def _pair_bracket(self, g1, g2) -> Element:
        if isinstance(g1, K) or isinstance(g2, K):
            return Element.zero()
        if isinstance(g1, D):
            if isinstance(g2, D):
                return Element.zero()
            return Element.of(g2, g2.m)
        if isinstance(g2, D):
            return Element.of(g1, -g1.m)
        # [T^a_{l1 m1}, T^b_{l2 m2}] = i f^{ab}_c sum_l3 c^{l3} T^c_{l3, m1+m2}
        #                              + (-1)^{m2} k m1 delta^{ab} delta_{l1 l2} delta_{m1+m2}
        terms: dict[tuple, Surd] = {}
        m3 = g1.m + g2.m
        entries = self.base.f_entries(g1.a, g2.a)
        if entries:
            for l3 in coupling_range(g1.l, g1.m, g2.l, g2.m):
                coeff = structure_coeff(g1.l, g1.m, g2.l, g2.m, l3)
                for c, fv in entries:
                    terms[(SphereT(c, l3, m3), 1)] = _cached_mul(fv, coeff)
        if g1.a == g2.a and g1.l == g2.l and m3 == 0 and g1.m:
            sign = -1 if (g2.m % 2) else 1
            terms[(K(), 0)] = Surd(sign * g1.m)
        return Element(terms)

    def cw_pair_bracket(self, g1, g2) -> Element:
        """Direct Cartan-Weyl bracket rules on the sphere."""
        base = self.base
        if isinstance(g1, K) or isinstance(g2, K):
            return Element.zero()
        if isinstance(g1, D) or isinstance(g2, D):
            return self._pair_bracket(g1, g2)
        central_sign = -1 if (g1.m % 2) else 1
        if isinstance(g1, SphereH) and isinstance(g2, SphereH):
            if g1.i == g2.i and g1.l == g2.l and g1.m + g2.m == 0 and g1.m:
                return Element.of(K(), central_sign * g1.m)
            return Element.zero()
        if isinstance(g1, SphereH) and isinstance(g2, SphereE):
            comp = base.root_ortho(g2.root)[g1.i - 1]
            m3 = g1.m + g2.m
            terms = {}
            for l3 in coupling_range(g1.l, g1.m, g2.l, g2.m):
                coeff = structure_coeff(g1.l, g1.m, g2.l, g2.m, l3) * comp
                if coeff:
                    terms[(SphereE(g2.root, l3, m3), 0)] = coeff
            return Element(terms)
        if isinstance(g1, SphereE) and isinstance(g2, SphereH):
            return -self.cw_pair_bracket(g2, g1)
        total = tuple(x + y for x, y in zip(g1.root, g2.root))
        m3 = g1.m + g2.m
        if base.is_root(total):
            eps = base.epsilon[(g1.root, g2.root)]
            terms = {}
            for l3 in coupling_range(g1.l, g1.m, g2.l, g2.m):
                coeff = structure_coeff(g1.l, g1.m, g2.l, g2.m, l3) * eps
                terms[(SphereE(total, l3, m3), 0)] = coeff
            return Element(terms)
        if any(total):
            return Element.zero()
        ortho = base.root_ortho(g1.root)
        terms = {}
        for l3 in coupling_range(g1.l, g1.m, g2.l, g2.m):
            coeff = structure_coeff(g1.l, g1.m, g2.l, g2.m, l3)
            for i, comp in enumerate(ortho, start=1):
                if comp:
                    terms[(SphereH(i, l3, m3), 0)] = coeff * comp
        if g1.l == g2.l and m3 == 0 and g1.m:
            terms[(K(), 0)] = Surd(central_sign * g1.m)
        return Element(terms)

    def to_cartan_weyl(self, x: Element) -> Element:
        total = Element.zero()
        for (gid, ipow), coeff in x.raw_items():
            if isinstance(gid, SphereT):
                kind = self.base.t_combo(gid.a)
                if kind[0] == "H":
                    piece = Element.of(SphereH(kind[1], gid.l, gid.m))
                else:
                    piece = Element(
                        {(SphereE(root, gid.l, gid.m), ip): c for root, c, ip in kind[1]}
                    )
                total = total + piece.scaled_i(coeff, ipow)
            else:
                total = total + Element.of(gid, coeff, ipow)
        return total

    def root_decompose(self, x: Element) -> dict[SphereRootLabel, Element]:
        return _root_decompose(self.to_cartan_weyl(x), False, self.base.rank)


def _root_decompose(cw: Element, torus: bool, rank: int) -> dict:
    zero: Root = (0,) * rank
    out: dict = {}
    for (gid, ipow), coeff in cw.raw_items():
        if isinstance(gid, (TorusE, SphereE)):
            alpha = gid.root
        elif isinstance(gid, (TorusH, SphereH)):
            alpha = zero
        else:
            raise ValueError(
                f"{genid_text(gid)} sits in the Cartan subalgebra, not a root space"
            )
        if torus:
            label = TorusRootLabel(alpha, gid.m, gid.n)
        else:
            label = SphereRootLabel(alpha, gid.m)
        out[label] = out.get(label, Element.zero()) + Element.of(gid, coeff, ipow)
    return out


def bracket_torus(base: BaseAlgebra, x: Element, y: Element) -> Element:
    return TorusAlgebra(base).bracket(x, y)


def bracket_sphere(base: BaseAlgebra, x: Element, y: Element) -> Element:
    return SphereAlgebra(base).bracket(x, y)


# --- affine slice ------------------------------------------------------------

@dataclass
class AffineCheckReport:
    algebra: str
    mode_cutoff: int
    checked: int
    mismatches: list

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json_obj(self) -> dict:
        return {
            "algebra": self.algebra,
            "mode_cutoff": self.mode_cutoff,
            "checked": self.checked,
            "mismatches": self.mismatches,
        }


def _affine_reference_bracket(base: BaseAlgebra, g1, g2) -> Element:
    # The textbook affine bracket over {T^a_m, d, k}, emitted on the n = 0 slice.
    if isinstance(g1, K1) or isinstance(g2, K1):
        return Element.zero()
    if isinstance(g1, D1):
        if isinstance(g2, D1):
            return Element.zero()
        return Element.of(g2, g2.m)
    if isinstance(g2, D1):
        return Element.of(g1, -g1.m)
    terms: dict[tuple, Surd] = {}
    for c, fv in base.f_entries(g1.a, g2.a):
        terms[(TorusT(c, g1.m + g2.m, 0), 1)] = fv
    if g1.a == g2.a and g1.m + g2.m == 0 and g1.m:
        terms[(K1(), 0)] = Surd(g1.m)
    return Element(terms)


def affine_subalgebra_check(base: BaseAlgebra, mode_cutoff: int) -> AffineCheckReport:
    """Compare the n = 0 torus slice with the affine bracket table, bit for bit."""
    algebra = TorusAlgebra(base)
    gens = [TorusT(a, m, 0) for a in range(1, base.dim + 1)
            for m in range(-mode_cutoff, mode_cutoff + 1)]
    gens += [D1(), K1()]
    mismatches = []
    checked = 0
    for i, g1 in enumerate(gens):
        for g2 in gens[i:]:
            checked += 1
            got = algebra.bracket(Element.of(g1), Element.of(g2))
            want = _affine_reference_bracket(base, g1, g2)
            if got != want:
                mismatches.append(
                    {"lhs": genid_text(g1), "rhs": genid_text(g2),
                     "got": got.text(), "want": want.text()}
                )
                continue
            for gid in got.generators():
                if isinstance(gid, K2) or (isinstance(gid, TorusT) and gid.n != 0):
                    mismatches.append(
                        {"lhs": genid_text(g1), "rhs": genid_text(g2),
                         "got": got.text(), "want": "no k2 or n != 0 components"}
                    )
    return AffineCheckReport(base.name, mode_cutoff, checked, mismatches)
