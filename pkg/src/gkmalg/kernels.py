"""Exact batch kernels for the large Jacobi enumerations.

The torus-family acceptance runs ask for every generator triple inside a
mode box, which is tens of millions of triples.  Evaluating each one
through Element objects is needlessly slow in CPython, so the enumeration
is split by flavor pattern: for each flavor triple the current part of
the Jacobi sum is a mode-independent exact sum over the structure tensor,
while the central parts are integer polynomials in the modes, which are
evaluated for every mode triple with vectorised integer arithmetic.

Everything here is exact: the flavor sums are Surds and the arrays are
int64 (the entries are tiny products of modes and scaled tensor entries,
far below overflow).  The verify suites pair these kernels with the
general Element engine on a shared subrange, so a disagreement between
the two routes is reported as a failure.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .base_algebra import BaseAlgebra
from .surd import Surd


def _single_term(s: Surd) -> tuple[int, Fraction]:
    terms = s.terms
    if len(terms) != 1:
        raise ValueError("kernel expects single-term structure constants")
    (rad, coeff), = terms.items()
    return rad, coeff


def _f_coeff(base: BaseAlgebra, x: int, y: int, z: int) -> dict[int, Fraction]:
    """Coefficient of flavor z in [x, y] as {radicand: rational}."""
    for c, val in base.f_entries(x, y):
        if c == z:
            rad, coeff = _single_term(val)
            return {rad: coeff}
    return {}


def _mode_arrays(mmax: int, nmax: int) -> tuple[np.ndarray, np.ndarray]:
    pairs = [(m, n) for m in range(-mmax, mmax + 1) for n in range(-nmax, nmax + 1)]
    return (np.array([p[0] for p in pairs], dtype=np.int64),
            np.array([p[1] for p in pairs], dtype=np.int64))


def _mode_triples(size: int, pattern: str):
    """Index triples (iu, iv, iw) for the given flavor multiplicity pattern."""
    idx = np.arange(size)
    if pattern == "abc":     # three distinct flavors: all ordered mode triples
        iu, iv, iw = np.meshgrid(idx, idx, idx, indexing="ij")
        return iu.ravel(), iv.ravel(), iw.ravel()
    if pattern == "aab":     # first two flavors equal: u < v, w free
        iu, iv = np.triu_indices(size, k=1)
        iu = np.repeat(iu, size)
        iv = np.repeat(iv, size)
        iw = np.tile(idx, iu.size // size)
        return iu, iv, iw
    if pattern == "abb":     # last two flavors equal: u free, v < w
        iv, iw = np.triu_indices(size, k=1)
        iv = np.tile(iv, size)
        iw = np.tile(iw, size)
        iu = np.repeat(idx, iv.size // size)
        return iu, iv, iw
    if pattern == "aaa":     # all equal: u < v < w
        iu, iv, iw = [], [], []
        for u in range(size):
            for v in range(u + 1, size):
                iu.append(np.full(size - v - 1, u))
                iv.append(np.full(size - v - 1, v))
                iw.append(np.arange(v + 1, size))
        if not iu:
            z = np.zeros(0, dtype=np.int64)
            return z, z, z
        return np.concatenate(iu), np.concatenate(iv), np.concatenate(iw)
    raise ValueError(pattern)


def _pattern_of(a: int, b: int, c: int) -> str:
    if a == b == c:
        return "aaa"
    if a == b:
        return "aab"
    if b == c:
        return "abb"
    return "abc"


def _central_residual_groups(weights: list[dict[int, Fraction]]):
    """Group the three cyclic weights by radicand and scale them to ints."""
    rads = set()
    for w in weights:
        rads.update(w)
    out = []
    for rad in sorted(rads):
        qs = [w.get(rad, Fraction(0)) for w in weights]
        denom = lcm(*(q.denominator for q in qs))
        out.append((rad, [int(q * denom) for q in qs]))
    return out


def torus_current_jacobi_batch(base: BaseAlgebra, mmax: int, nmax: int,
                               centrals: str = "k1k2"):
    """Jacobi over all pure-current torus triples in the mode box.

    centrals: "k1k2" for the plain torus pair, "k" for the single central
    of the Virasoro-extended family (the k2 column is then dropped).
    Returns (checked, failures).
    """
    marr, narr = _mode_arrays(mmax, nmax)
    size = marr.size
    dim = base.dim
    checked = 0
    failures: list[dict] = []

    tri_cache: dict[str, tuple] = {}

    for a in range(1, dim + 1):
        for b in range(a, dim + 1):
            for c in range(b, dim + 1):
                pattern = _pattern_of(a, b, c)
                if pattern not in tri_cache:
                    tri_cache[pattern] = _mode_triples(size, pattern)
                iu, iv, iw = tri_cache[pattern]
                count = iu.size
                if count == 0:
                    continue
                checked += count

                # Mode-independent current part of the Jacobi sum.
                acc: dict[int, Surd] = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    for e, f1 in base.f_entries(x, y):
                        for g, f2 in base.f_entries(e, z):
                            tot = acc.get(g, Surd(0)) + f1 * f2
                            if tot:
                                acc[g] = tot
                            elif g in acc:
                                del acc[g]
                if acc:
                    failures.append({
                        "instance": f"T[a={a}] T[a={b}] T[a={c}] (all modes)",
                        "residual": "; ".join(f"T[a={g}]: {s}" for g, s in acc.items()),
                    })
                    continue

                # Central parts: evaluate the mode polynomial on every triple.
                w1 = _f_coeff(base, a, b, c)   # [[x,y],z] central, needs e == c
                w2 = _f_coeff(base, b, c, a)
                w3 = _f_coeff(base, c, a, b)
                groups = _central_residual_groups([w1, w2, w3])
                if not groups:
                    continue
                mu, mv, mw = marr[iu], marr[iv], marr[iw]
                nu, nv, nw = narr[iu], narr[iv], narr[iw]
                mask = ((mu + mv + mw) == 0) & ((nu + nv + nw) == 0)
                if not mask.any():
                    continue
                sum_pairs_m = ((mu + mv)[mask], (mv + mw)[mask], (mw + mu)[mask])
                sum_pairs_n = ((nu + nv)[mask], (nv + nw)[mask], (nw + nu)[mask])
                for rad, (q1, q2, q3) in groups:
                    res_m = q1 * sum_pairs_m[0] + q2 * sum_pairs_m[1] + q3 * sum_pairs_m[2]
                    bad = res_m != 0
                    if centrals == "k1k2":
                        res_n = q1 * sum_pairs_n[0] + q2 * sum_pairs_n[1] + q3 * sum_pairs_n[2]
                        bad = bad | (res_n != 0)
                    if bad.any():
                        failures.append({
                            "instance": f"T[a={a}] T[a={b}] T[a={c}] (central, rad {rad})",
                            "residual": f"{int(bad.sum())} mode triples",
                        })
    return checked, failures


def vir_torus_l_sector_batch(base: BaseAlgebra, mmax: int, nmax: int):
    """Jacobi over the L-containing triples of the torus Virasoro family.

    Covers LLL, LLT and LTT flavor patterns; pure-current triples are the
    job of torus_current_jacobi_batch(..., centrals="k").
    Returns (checked, failures).
    """
    marr, narr = _mode_arrays(mmax, nmax)
    size = marr.size
    dim = base.dim
    checked = 0
    failures: list[dict] = []

    def p_anomaly(t: np.ndarray) -> np.ndarray:
        return t * (t * t - 1)

    # LLL: modes u < v < w.
    iu, iv, iw = _mode_triples(size, "aaa")
    if iu.size:
        checked += iu.size
        mu, mv, mw = marr[iu], marr[iv], marr[iw]
        nu, nv, nw = narr[iu], narr[iv], narr[iw]
        witt = ((mu - mv) * (mu + mv - mw)
                + (mv - mw) * (mv + mw - mu)
                + (mw - mu) * (mw + mu - mv))
        if (witt != 0).any():
            failures.append({"instance": "L L L (vector-field part)",
                             "residual": f"{int((witt != 0).sum())} mode triples"})
        mask = ((mu + mv + mw) == 0) & ((nu + nv + nw) == 0)
        if mask.any():
            anomaly = ((mu - mv) * p_anomaly(mu + mv)
                       + (mv - mw) * p_anomaly(mv + mw)
                       + (mw - mu) * p_anomaly(mw + mu))
            if (anomaly[mask] != 0).any():
                failures.append({"instance": "L L L (central charge, x12)",
                                 "residual": f"{int((anomaly[mask] != 0).sum())} mode triples"})

    # LLT: L modes u < v, any current (a, w); the residual does not depend
    # on the flavor, so one array check covers all of them.
    pu, pv = np.triu_indices(size, k=1)
    mu, mv = marr[pu], marr[pv]
    mu3 = np.repeat(mu, size)
    mv3 = np.repeat(mv, size)
    mw3 = np.tile(marr, mu.size)
    per_flavor = mu3.size
    coeff = -mw3 * (mu3 - mv3) - mw3 * (mv3 + mw3) + mw3 * (mu3 + mw3)
    checked += per_flavor * dim
    if (coeff != 0).any():
        failures.append({"instance": "L L T (current part)",
                         "residual": f"{int((coeff != 0).sum())} mode triples x {dim} flavors"})

    # LTT: any L mode u, current pair (a, v) <= (b, w).
    for a in range(1, dim + 1):
        for b in range(a, dim + 1):
            if a == b:
                pv2, pw2 = np.triu_indices(size, k=1)
            else:
                pv2, pw2 = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
                pv2, pw2 = pv2.ravel(), pw2.ravel()
            nv2 = pv2.size
            mu4 = np.repeat(marr, nv2)
            nu4 = np.repeat(narr, nv2)
            mv4 = np.tile(marr[pv2], size)
            nv4 = np.tile(narr[pv2], size)
            mw4 = np.tile(marr[pw2], size)
            nw4 = np.tile(narr[pw2], size)
            checked += mu4.size
            # Current part: f^{ab}_g (-m_v + m_v + m_w) + f^{ba}_g m_w per g.
            for g, val in base.f_entries(a, b):
                rad, q = _single_term(val)
                back = _f_coeff(base, b, a, g).get(rad, Fraction(0))
                denom = lcm(q.denominator, back.denominator)
                qi, bi = int(q * denom), int(back * denom)
                res = qi * (-mv4) + qi * (mv4 + mw4) + bi * mw4
                if (res != 0).any():
                    failures.append({
                        "instance": f"L T[a={a}] T[a={b}] (current part, g={g})",
                        "residual": f"{int((res != 0).sum())} mode triples"})
            if a == b:
                mask = ((mu4 + mv4 + mw4) == 0) & ((nu4 + nv4 + nw4) == 0)
                if mask.any():
                    res = -mv4 * (mu4 + mv4) + mw4 * (mu4 + mw4)
                    if (res[mask] != 0).any():
                        failures.append({
                            "instance": f"L T[a={a}] T[a={a}] (k central)",
                            "residual": f"{int((res[mask] != 0).sum())} mode triples"})
    return checked, failures
