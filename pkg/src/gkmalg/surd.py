"""Exact scalars of the form q1*sqrt(n1) + ... + qk*sqrt(nk).

The qi are rationals and the ni distinct squarefree naturals, with n = 1
carrying the rational part.  Every structure constant in this package lives
in this set, which is closed under addition and multiplication.  Division
is only defined by rationals and by single-term surds; general inverses are
deliberately unsupported.

Values are immutable after construction and therefore safe to share
between threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

Rational = Fraction


@lru_cache(maxsize=None)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n > 0 as s*s*q with q squarefree; return (s, q).

    Plain trial division: every radicand produced by the coupling formulas
    is smooth (its prime factors are bounded by the largest factorial
    argument), so this never has to grind on a large prime.
    """
    if n <= 0:
        raise ValueError(f"radicand must be a positive integer, got {n}")
    s = 1
    q = 1
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                q *= d
        d += 1 if d == 2 else 2
    return s, q * m


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an int or Fraction, got {type(x).__name__}")


class Surd:
    """A finite sum of rational multiples of square roots of squarefree naturals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=0):
        # Accepts a rational, or a mapping radicand -> rational coefficient.
        # Non-squarefree radicands are folded into canonical form.
        self._hash = None
        terms: dict[int, Fraction] = {}
        if isinstance(value, dict):
            items = value.items()
        else:
            items = [(1, value)]
        for rad, coeff in items:
            c = _as_fraction(coeff)
            if not c:
                continue
            s, q = squarefree_decompose(rad)
            merged = terms.get(q, _ZERO_FRACTION) + c * s
            if merged:
                terms[q] = merged
            elif q in terms:
                del terms[q]
        self._terms = terms

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> Surd:
        # Internal fast path: terms must already be canonical.
        out = object.__new__(cls)
        out._terms = terms
        out._hash = None
        return out

    @classmethod
    def from_rational(cls, q) -> Surd:
        return cls(q)

    @classmethod
    def sqrt_rational(cls, q) -> Surd:
        """Exact square root of a nonnegative rational, e.g. 9/5 -> (3/5)*sqrt(5)."""
        q = _as_fraction(q)
        if q < 0:
            raise ValueError(f"cannot take a real square root of {q}")
        if q == 0:
            return cls._raw({})
        s, rad = squarefree_decompose(q.numerator * q.denominator)
        return cls._raw({rad: Fraction(s, q.denominator)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(rad == 1 for rad in self._terms)

    def rational_value(self) -> Fraction:
        if not self._terms:
            return _ZERO_FRACTION
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms[1]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Surd(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> Surd:
        return Surd._raw({rad: -c for rad, c in self._terms.items()})

    def __add__(self, other) -> Surd:
        if isinstance(other, (int, Fraction)):
            other = Surd(other)
        if not isinstance(other, Surd):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        terms = dict(self._terms)
        for rad, c in other._terms.items():
            merged = terms.get(rad, _ZERO_FRACTION) + c
            if merged:
                terms[rad] = merged
            elif rad in terms:
                del terms[rad]
        return Surd._raw(terms)

    __radd__ = __add__

    def __sub__(self, other) -> Surd:
        if isinstance(other, (int, Fraction)):
            other = Surd(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Surd:
        return (-self) + other

    def __mul__(self, other) -> Surd:
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return Surd._raw({})
            return Surd._raw({rad: q * c for rad, q in self._terms.items()})
        if not isinstance(other, Surd):
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for r1, c1 in self._terms.items():
            for r2, c2 in other._terms.items():
                s, q = squarefree_decompose(r1 * r2) if r1 != r2 else (r1, 1)
                merged = terms.get(q, _ZERO_FRACTION) + c1 * c2 * s
                if merged:
                    terms[q] = merged
                elif q in terms:
                    del terms[q]
        return Surd._raw(terms)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Surd:
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self * Fraction(c.denominator, c.numerator)
        if not isinstance(other, Surd):
            return NotImplemented
        if len(other._terms) != 1:
            raise ValueError(
                "division is only supported by rationals and single-term surds"
            )
        (rad, c), = other._terms.items()
        # 1 / (c*sqrt(rad)) = sqrt(rad) / (c*rad)
        inv = Surd._raw({rad: Fraction(1) / (c * rad)})
        return self * inv

    def to_float(self, precision_bits: int = 53) -> float:
        """Evaluate to double precision, computing internally at >= precision_bits."""
        if precision_bits < 53:
            raise ValueError("precision_bits must be at least 53")
        if not self._terms:
            return 0.0
        with mpmath.workprec(precision_bits + 8):
            total = mpmath.mpf(0)
            for rad, c in self._terms.items():
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(rad)
            return float(total)

    def __float__(self) -> float:
        return self.to_float()

    def text(self) -> str:
        """Canonical rendering "a/b*sqrt(n)+...", radicands ascending."""
        if not self._terms:
            return "0"
        pieces = []
        for rad in sorted(self._terms):
            c = self._terms[rad]
            base = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            pieces.append(base if rad == 1 else f"{base}*sqrt({rad})")
        return "+".join(pieces).replace("+-", "-")

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Surd({self.text()!r})"

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"rad": rad, "num": c.numerator, "den": c.denominator}
                for rad, c in sorted(self._terms.items())
            ]
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> Surd:
        return cls({t["rad"]: Fraction(t["num"], t["den"]) for t in obj["terms"]})


_ZERO_FRACTION = Fraction(0)

ZERO = Surd._raw({})
ONE = Surd._raw({1: Fraction(1)})


def surd_add(a: Surd, b: Surd) -> Surd:
    return a + b


def surd_mul(a: Surd, b: Surd) -> Surd:
    return a * b


def surd_sqrt_rational(q) -> Surd:
    return Surd.sqrt_rational(q)


def surd_to_float(a: Surd, precision_bits: int = 53) -> float:
    return a.to_float(precision_bits)
