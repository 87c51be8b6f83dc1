"""Generator labels and exact linear combinations.

A generator id is one of the frozen dataclasses below.  An Element is a
finite linear combination of generators with Surd coefficients; each term
additionally carries an i-power (0 or 1) so that the factor i in the
current brackets never forces a complex scalar type.  The same generator
may appear once with i-power 0 and once with i-power 1, which is the
minimal closure of the term map under bracketing.

Elements are immutable; all operations return fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .surd import Surd

Root = tuple[int, ...]  # coordinates in the simple-root basis


# --- current-algebra generators -------------------------------------------

@dataclass(frozen=True, slots=True)
class TorusT:
    a: int
    m: int
    n: int


@dataclass(frozen=True, slots=True)
class TorusH:
    i: int
    m: int
    n: int


@dataclass(frozen=True, slots=True)
class TorusE:
    root: Root
    m: int
    n: int


@dataclass(frozen=True, slots=True)
class SphereT:
    a: int
    l: int
    m: int

    def __post_init__(self):
        if self.l < abs(self.m):
            raise ValueError(f"sphere label needs l >= |m|, got l={self.l}, m={self.m}")


@dataclass(frozen=True, slots=True)
class SphereH:
    i: int
    l: int
    m: int

    def __post_init__(self):
        if self.l < abs(self.m):
            raise ValueError(f"sphere label needs l >= |m|, got l={self.l}, m={self.m}")


@dataclass(frozen=True, slots=True)
class SphereE:
    root: Root
    l: int
    m: int

    def __post_init__(self):
        if self.l < abs(self.m):
            raise ValueError(f"sphere label needs l >= |m|, got l={self.l}, m={self.m}")


@dataclass(frozen=True, slots=True)
class CircleT:
    a: int
    m: int


# --- gradings and centrals -------------------------------------------------

@dataclass(frozen=True, slots=True)
class D1:
    pass


@dataclass(frozen=True, slots=True)
class D2:
    pass


@dataclass(frozen=True, slots=True)
class D:
    pass


@dataclass(frozen=True, slots=True)
class K1:
    pass


@dataclass(frozen=True, slots=True)
class K2:
    pass


@dataclass(frozen=True, slots=True)
class K:
    pass


# --- Virasoro sector ---------------------------------------------------------

@dataclass(frozen=True, slots=True)
class LCircle:
    m: int


@dataclass(frozen=True, slots=True)
class LTorus:
    m: int
    n: int


@dataclass(frozen=True, slots=True)
class LSphere:
    l: int
    m: int

    def __post_init__(self):
        if self.l < abs(self.m):
            raise ValueError(f"sphere label needs l >= |m|, got l={self.l}, m={self.m}")


@dataclass(frozen=True, slots=True)
class CCentral:
    pass


_KIND_ORDER = {
    LCircle: 0, LTorus: 1, LSphere: 2,
    CircleT: 3, TorusT: 4, SphereT: 5,
    TorusH: 6, TorusE: 7, SphereH: 8, SphereE: 9,
    D1: 10, D2: 11, D: 12, K1: 13, K2: 14, K: 15, CCentral: 16,
}


def genid_sort_key(gid) -> tuple:
    kind = _KIND_ORDER[type(gid)]
    if isinstance(gid, (TorusT, TorusH)):
        idx = gid.a if isinstance(gid, TorusT) else gid.i
        return (kind, idx, gid.m, gid.n)
    if isinstance(gid, TorusE):
        return (kind, gid.root, gid.m, gid.n)
    if isinstance(gid, (SphereT, SphereH)):
        idx = gid.a if isinstance(gid, SphereT) else gid.i
        return (kind, idx, gid.l, gid.m)
    if isinstance(gid, SphereE):
        return (kind, gid.root, gid.l, gid.m)
    if isinstance(gid, CircleT):
        return (kind, gid.a, gid.m)
    if isinstance(gid, LCircle):
        return (kind, gid.m)
    if isinstance(gid, LTorus):
        return (kind, gid.m, gid.n)
    if isinstance(gid, LSphere):
        return (kind, gid.l, gid.m)
    return (kind,)


def _root_text(root: Root) -> str:
    return ".".join(str(c) for c in root)


def genid_text(gid) -> str:
    if isinstance(gid, TorusT):
        return f"T[a={gid.a},m={gid.m},n={gid.n}]"
    if isinstance(gid, TorusH):
        return f"H[i={gid.i},m={gid.m},n={gid.n}]"
    if isinstance(gid, TorusE):
        return f"E[root={_root_text(gid.root)},m={gid.m},n={gid.n}]"
    if isinstance(gid, SphereT):
        return f"T[a={gid.a},l={gid.l},m={gid.m}]"
    if isinstance(gid, SphereH):
        return f"H[i={gid.i},l={gid.l},m={gid.m}]"
    if isinstance(gid, SphereE):
        return f"E[root={_root_text(gid.root)},l={gid.l},m={gid.m}]"
    if isinstance(gid, CircleT):
        return f"T[a={gid.a},m={gid.m}]"
    if isinstance(gid, LCircle):
        return f"L[m={gid.m}]"
    if isinstance(gid, LTorus):
        return f"L[m={gid.m},n={gid.n}]"
    if isinstance(gid, LSphere):
        return f"L[l={gid.l},m={gid.m}]"
    return {D1: "d1", D2: "d2", D: "d", K1: "k1", K2: "k2", K: "k", CCentral: "c"}[type(gid)]


def genid_json(gid) -> dict:
    if isinstance(gid, TorusT):
        return {"kind": "T", "a": gid.a, "m": gid.m, "n": gid.n}
    if isinstance(gid, TorusH):
        return {"kind": "H", "i": gid.i, "m": gid.m, "n": gid.n}
    if isinstance(gid, TorusE):
        return {"kind": "E", "root": list(gid.root), "m": gid.m, "n": gid.n}
    if isinstance(gid, SphereT):
        return {"kind": "T", "a": gid.a, "l": gid.l, "m": gid.m}
    if isinstance(gid, SphereH):
        return {"kind": "H", "i": gid.i, "l": gid.l, "m": gid.m}
    if isinstance(gid, SphereE):
        return {"kind": "E", "root": list(gid.root), "l": gid.l, "m": gid.m}
    if isinstance(gid, CircleT):
        return {"kind": "T", "a": gid.a, "m": gid.m}
    if isinstance(gid, LCircle):
        return {"kind": "L", "m": gid.m}
    if isinstance(gid, LTorus):
        return {"kind": "L", "m": gid.m, "n": gid.n}
    if isinstance(gid, LSphere):
        return {"kind": "L", "l": gid.l, "m": gid.m}
    return {"kind": genid_text(gid)}


class Element:
    """Finite Surd-linear combination of generators, keyed by (gid, i_power)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        out: dict[tuple, Surd] = {}
        if terms:
            for (gid, ipow), coeff in terms.items():
                if not isinstance(coeff, Surd):
                    coeff = Surd(coeff)
                if ipow not in (0, 1):
                    raise ValueError(f"i-power must be 0 or 1, got {ipow}")
                if coeff:
                    prev = out.get((gid, ipow))
                    total = coeff if prev is None else prev + coeff
                    if total:
                        out[(gid, ipow)] = total
                    elif (gid, ipow) in out:
                        del out[(gid, ipow)]
        self._terms = out

    @classmethod
    def _raw(cls, terms: dict[tuple, Surd]) -> Element:
        out = object.__new__(cls)
        out._terms = terms
        return out

    @classmethod
    def zero(cls) -> Element:
        return cls._raw({})

    @classmethod
    def of(cls, gid, coeff=1, ipow: int = 0) -> Element:
        if not isinstance(coeff, Surd):
            coeff = Surd(coeff)
        if not coeff:
            return cls._raw({})
        return cls._raw({(gid, ipow): coeff})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def items(self):
        """Terms in canonical (generator, i-power) order."""
        return sorted(self._terms.items(), key=lambda kv: (genid_sort_key(kv[0][0]), kv[0][1]))

    def raw_items(self):
        return self._terms.items()

    def coeff(self, gid, ipow: int = 0) -> Surd:
        return self._terms.get((gid, ipow), _SURD_ZERO)

    def generators(self):
        return {gid for gid, _ in self._terms}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            prev = terms.get(key)
            total = coeff if prev is None else prev + coeff
            if total:
                terms[key] = total
            elif key in terms:
                del terms[key]
        return Element._raw(terms)

    def __sub__(self, other) -> Element:
        return self + (-other)

    def __neg__(self) -> Element:
        return Element._raw({key: -c for key, c in self._terms.items()})

    def scaled(self, factor) -> Element:
        """Multiply by a real scalar (int, Fraction, or Surd)."""
        if not isinstance(factor, Surd):
            factor = Surd(factor)
        if not factor:
            return Element._raw({})
        return Element._raw({key: c * factor for key, c in self._terms.items()})

    def times_i(self) -> Element:
        """Multiply by i, folding i*i = -1 into the coefficient."""
        terms = {}
        for (gid, ipow), c in self._terms.items():
            if ipow == 0:
                terms[(gid, 1)] = c
            else:
                terms[(gid, 0)] = -c
        return Element._raw(terms)

    def scaled_i(self, factor, ipow: int) -> Element:
        out = self.scaled(factor)
        return out.times_i() if ipow else out

    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (gid, ipow), c in self.items():
            ctext = c.text()
            if "+" in ctext or "-" in ctext[1:]:
                ctext = f"({ctext})"
            mid = "*i*" if ipow else "*"
            pieces.append(f"{ctext}{mid}{genid_text(gid)}")
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Element({self.text()!r})"

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"gen": genid_json(gid), "i": ipow, "coeff": c.to_json_obj()}
                for (gid, ipow), c in self.items()
            ]
        }


_SURD_ZERO = Surd(0)
_SURD_ONE = Surd(1)


def bilinear_bracket(pair_fn, x: Element, y: Element) -> Element:
    """Extend a basis-level bracket bilinearly, tracking i-powers."""
    if len(x._terms) == 1 and len(y._terms) == 1:
        ((g1, p1), c1), = x._terms.items()
        ((g2, p2), c2), = y._terms.items()
        base = pair_fn(g1, g2)
        if p1 == 0 and p2 == 0 and c1 == _SURD_ONE and c2 == _SURD_ONE:
            return base
        ip = p1 + p2
        factor = c1 * c2
        if ip == 2:
            ip = 0
            factor = -factor
        return base.scaled_i(factor, ip)
    total: dict[tuple, Surd] = {}
    for (g1, p1), c1 in x.raw_items():
        for (g2, p2), c2 in y.raw_items():
            base = pair_fn(g1, g2)
            if not base:
                continue
            factor = c1 * c2
            ip = p1 + p2
            if ip == 2:
                factor = -factor
                ip = 0
            for (gid, q), c in base.raw_items():
                qq = q + ip
                coeff = c * factor
                if qq == 2:
                    qq = 0
                    coeff = -coeff
                key = (gid, qq)
                prev = total.get(key)
                merged = coeff if prev is None else prev + coeff
                if merged:
                    total[key] = merged
                elif key in total:
                    del total[key]
    return Element._raw(total)


class FamilyMixError(ValueError):
    """Raised when a bracket receives generators from different families."""
