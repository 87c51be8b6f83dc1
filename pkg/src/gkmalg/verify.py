"""Verification suites behind the CLI and the acceptance tests.

Every suite reports the number of instances checked and the failing
instances with their residuals.  The exact suites (jacobi, cocycle,
grading, affine, serre) never consult the tolerance; only the oracle
comparisons do.

The torus-family Jacobi suites pair the batch kernels with the general
Element engine: the kernels cover the full mode box, the engine re-checks
a shared sub-box triple by triple, and any disagreement is reported as a
failure of the suite itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base_algebra import (
    affine_cartan_matrix, builtin_algebra, matrix_corank, matrix_det_exact,
)
from .coupling import coupling_range, structure_coeff
from .elements import (
    CCentral, CircleT, D, D1, D2, Element, K, K1, K2,
    LCircle, LSphere, LTorus, SphereE, SphereH, SphereT,
    TorusE, TorusH, TorusT, genid_text,
)
from .gkm import SphereAlgebra, TorusAlgebra, affine_subalgebra_check
from .kernels import torus_current_jacobi_batch, vir_torus_l_sector_batch
from .oracle import QFunction, gauss_legendre_rule, gaunt_project, inner_product
from .presentations import (
    build_caff_from_css, css_presentation, generation_check, verify_relations,
)
from .surd import Surd
from .virasoro import CircleVirasoro, SphereVirasoro, TorusVirasoro

_CENTRAL_KINDS = (K1, K2, K, CCentral)
_GRADING_KINDS = (D1, D2, D)


@dataclass
class RunConfig:
    """Shared knobs of the verification suites and exports."""

    algebra: str = "su2"
    manifold: str = "torus"  # circle | torus | sphere
    lmax: int = 4
    mmax: int = 3
    nmax: int = 3
    cutoff: int = 2
    tol: float = 1e-9
    fmt: str = "text"  # text | json | csv
    out: str | None = None
    workers: int = 1
    vir: bool = False

    def to_json_obj(self) -> dict:
        return {
            "algebra": self.algebra, "manifold": self.manifold,
            "lmax": self.lmax, "mmax": self.mmax, "nmax": self.nmax,
            "cutoff": self.cutoff, "tol": self.tol, "vir": self.vir,
        }


@dataclass
class Report:
    suite: str
    config: dict
    checked: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "checked": self.checked,
            "failures": self.failures,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {status}, {self.checked} instances checked, {len(self.failures)} failures"


# --- generator enumerations --------------------------------------------------

def torus_generators(base, mmax: int, nmax: int, vir: bool) -> list:
    modes = [(m, n) for m in range(-mmax, mmax + 1) for n in range(-nmax, nmax + 1)]
    gens = [TorusT(a, m, n) for a in range(1, base.dim + 1) for m, n in modes]
    if vir:
        gens += [LTorus(m, n) for m, n in modes]
        gens += [CCentral(), K()]
    else:
        gens += [D1(), D2(), K1(), K2()]
    return gens


def sphere_generators(base, lmax: int, vir: bool) -> list:
    labels = [(l, m) for l in range(lmax + 1) for m in range(-l, l + 1)]
    gens = [SphereT(a, l, m) for a in range(1, base.dim + 1) for l, m in labels]
    if vir:
        gens += [LSphere(l, m) for l, m in labels]
        gens += [CCentral(), K()]
    else:
        gens += [D(), K()]
    return gens


def circle_generators(base, mmax: int) -> list:
    gens = [LCircle(m) for m in range(-mmax, mmax + 1)]
    gens += [CircleT(a, m) for a in range(1, base.dim + 1) for m in range(-mmax, mmax + 1)]
    gens += [CCentral(), K()]
    return gens


def _family_algebra(cfg: RunConfig):
    base = builtin_algebra(cfg.algebra)
    if cfg.manifold == "circle":
        return CircleVirasoro(base)
    if cfg.manifold == "torus":
        return TorusVirasoro(base) if cfg.vir else TorusAlgebra(base)
    if cfg.manifold == "sphere":
        return SphereVirasoro(base) if cfg.vir else SphereAlgebra(base)
    raise ValueError(f"unknown manifold {cfg.manifold!r}")


def _family_generators(cfg: RunConfig) -> list:
    base = builtin_algebra(cfg.algebra)
    if cfg.manifold == "circle":
        return circle_generators(base, cfg.mmax)
    if cfg.manifold == "torus":
        return torus_generators(base, cfg.mmax, cfg.nmax, cfg.vir)
    return sphere_generators(base, cfg.lmax, cfg.vir)


# --- element-engine Jacobi ----------------------------------------------------

def jacobi_triple(algebra, x, y, z) -> Element:
    """Jacobi sum of three generators through the Element engine."""
    pair = algebra._pair
    acc: dict[tuple, Surd] = {}
    for (a, b, c) in ((x, y, z), (y, z, x), (z, x, y)):
        inner = pair(a, b)
        for (g1, p1), c1 in inner.raw_items():
            if isinstance(g1, _CENTRAL_KINDS):
                continue
            outer = pair(g1, c)
            for (g2, p2), c2 in outer.raw_items():
                ip = p1 + p2
                coeff = c1 * c2
                if ip == 2:
                    ip = 0
                    coeff = -coeff
                key = (g2, ip)
                prev = acc.get(key)
                total = coeff if prev is None else prev + coeff
                if total:
                    acc[key] = total
                elif key in acc:
                    del acc[key]
    return Element._raw(acc)


def scan_element_jacobi(algebra, gens: list, failures: list, limit: int = 20) -> int:
    checked = 0
    for i, x in enumerate(gens):
        for j in range(i + 1, len(gens)):
            y = gens[j]
            for k in range(j + 1, len(gens)):
                z = gens[k]
                checked += 1
                res = jacobi_triple(algebra, x, y, z)
                if res and len(failures) < limit:
                    failures.append({
                        "instance": f"{genid_text(x)} {genid_text(y)} {genid_text(z)}",
                        "residual": res.text(),
                    })
    return checked


def _scan_special_torus_triples(algebra, base, mmax, nmax, vir, failures) -> int:
    """Triples containing at least one grading or central generator."""
    modes = [(m, n) for m in range(-mmax, mmax + 1) for n in range(-nmax, nmax + 1)]
    currents = [TorusT(a, m, n) for a in range(1, base.dim + 1) for m, n in modes]
    if vir:
        currents += [LTorus(m, n) for m, n in modes]
        specials = [CCentral(), K()]
    else:
        specials = [D1(), D2(), K1(), K2()]
    checked = 0
    for si, s in enumerate(specials):
        for i, x in enumerate(currents):
            for j in range(i + 1, len(currents)):
                checked += 1
                res = jacobi_triple(algebra, s, x, currents[j])
                if res and len(failures) < 20:
                    failures.append({
                        "instance": f"{genid_text(s)} {genid_text(x)} {genid_text(currents[j])}",
                        "residual": res.text(),
                    })
        for sj in range(si + 1, len(specials)):
            for x in currents:
                checked += 1
                res = jacobi_triple(algebra, s, specials[sj], x)
                if res and len(failures) < 20:
                    failures.append({
                        "instance": f"{genid_text(s)} {genid_text(specials[sj])} {genid_text(x)}",
                        "residual": res.text(),
                    })
    for combo in itertools.combinations(specials, 3):
        checked += 1
        res = jacobi_triple(algebra, *combo)
        if res:
            failures.append({"instance": " ".join(map(genid_text, combo)),
                             "residual": res.text()})
    return checked


def verify_jacobi(cfg: RunConfig) -> Report:
    base = builtin_algebra(cfg.algebra)
    failures: list = []
    checked = 0
    if cfg.manifold == "torus":
        algebra = _family_algebra(cfg)
        # Full mode box through the batch kernels.
        n_current, fail_current = torus_current_jacobi_batch(
            base, cfg.mmax, cfg.nmax, centrals="k" if cfg.vir else "k1k2")
        checked += n_current
        failures += fail_current
        if cfg.vir:
            n_l, fail_l = vir_torus_l_sector_batch(base, cfg.mmax, cfg.nmax)
            checked += n_l
            failures += fail_l
        checked += _scan_special_torus_triples(
            algebra, base, cfg.mmax, cfg.nmax, cfg.vir, failures)
        # Engine cross-check on a shared sub-box.
        sub = RunConfig(algebra=cfg.algebra, manifold="torus",
                        mmax=min(cfg.mmax, 1), nmax=min(cfg.nmax, 1), vir=cfg.vir)
        sub_gens = _family_generators(sub)
        checked += scan_element_jacobi(_family_algebra(sub), sub_gens, failures)
    else:
        algebra = _family_algebra(cfg)
        gens = _family_generators(cfg)
        checked += scan_element_jacobi(algebra, gens, failures)
    return Report("jacobi", cfg.to_json_obj(), checked, failures)


# --- central cocycle -----------------------------------------------------------

def _split_central(el: Element) -> tuple[Element, Element]:
    central = {}
    rest = {}
    for (gid, ip), c in el.raw_items():
        (central if isinstance(gid, _CENTRAL_KINDS) else rest)[(gid, ip)] = c
    return Element._raw(central), Element._raw(rest)


def verify_cocycle(cfg: RunConfig) -> Report:
    algebra = _family_algebra(cfg)
    gens = _family_generators(cfg)
    gens = [g for g in gens if not isinstance(g, _CENTRAL_KINDS + _GRADING_KINDS)]
    failures: list = []
    checked = 0
    brackets: dict[tuple, tuple[Element, Element]] = {}

    def parts(x, y):
        key = (x, y)
        if key not in brackets:
            brackets[key] = _split_central(algebra.bracket(Element.of(x), Element.of(y)))
        return brackets[key]

    for i, x in enumerate(gens):
        for y in gens[i:]:
            checked += 1
            wxy, _ = parts(x, y)
            wyx, _ = parts(y, x)
            if wxy + wyx:
                failures.append({
                    "instance": f"antisymmetry {genid_text(x)} {genid_text(y)}",
                    "residual": (wxy + wyx).text(),
                })
    for x, y, z in itertools.combinations(gens, 3):
        checked += 1
        total = Element.zero()
        for (u, v, w) in ((x, y, z), (y, z, x), (z, x, y)):
            _, rest = parts(u, v)
            inner_central, _ = _split_central(algebra.bracket(rest, Element.of(w)))
            total = total + inner_central
        if total:
            failures.append({
                "instance": f"cocycle {genid_text(x)} {genid_text(y)} {genid_text(z)}",
                "residual": total.text(),
            })
    return Report("cocycle", cfg.to_json_obj(), checked, failures)


# --- root-space grading ---------------------------------------------------------

def verify_grading(cfg: RunConfig) -> Report:
    base = builtin_algebra(cfg.algebra)
    failures: list = []
    checked = 0
    if cfg.manifold == "torus":
        algebra = TorusAlgebra(base)
        modes = [(m, n) for m in range(-cfg.mmax, cfg.mmax + 1)
                 for n in range(-cfg.nmax, cfg.nmax + 1)]
        gens = [(TorusH(i, m, n), ((0,) * base.rank, m, n))
                for i in range(1, base.rank + 1) for m, n in modes]
        gens += [(TorusE(r, m, n), (r, m, n)) for r in base.roots for m, n in modes]

        def label_sum(l1, l2):
            return (tuple(a + b for a, b in zip(l1[0], l2[0])), l1[1] + l2[1], l1[2] + l2[2])

    elif cfg.manifold == "sphere":
        algebra = SphereAlgebra(base)
        labels = [(l, m) for l in range(cfg.lmax + 1) for m in range(-l, l + 1)]
        gens = [(SphereH(i, l, m), ((0,) * base.rank, m))
                for i in range(1, base.rank + 1) for l, m in labels]
        gens += [(SphereE(r, l, m), (r, m)) for r in base.roots for l, m in labels]

        def label_sum(l1, l2):
            return (tuple(a + b for a, b in zip(l1[0], l2[0])), l1[1] + l2[1])

    else:
        raise ValueError("the grading suite applies to the torus and sphere families")

    zero_root = (0,) * base.rank
    for (g1, l1), (g2, l2) in itertools.combinations(gens, 2):
        checked += 1
        out = algebra.bracket(Element.of(g1), Element.of(g2))
        _, rest = _split_central(out)
        expected = label_sum(l1, l2)
        alpha = expected[0]
        in_system = base.is_root(alpha) or alpha == zero_root
        if not in_system:
            if rest:
                failures.append({
                    "instance": f"{genid_text(g1)} {genid_text(g2)}",
                    "residual": f"expected zero outside the root system, got {rest.text()}",
                })
            continue
        decomposition = algebra.root_decompose(rest) if rest else {}
        stray = [lab for lab in decomposition
                 if (lab.alpha, lab.m, getattr(lab, "n", None))
                 != (alpha, expected[1], expected[2] if len(expected) > 2 else None)]
        if stray:
            failures.append({
                "instance": f"{genid_text(g1)} {genid_text(g2)}",
                "residual": f"support outside predicted label: {stray}",
            })
    return Report("grading", cfg.to_json_obj(), checked, failures)


# --- affine slice ----------------------------------------------------------------

def verify_affine(cfg: RunConfig) -> Report:
    base = builtin_algebra(cfg.algebra)
    rep = affine_subalgebra_check(base, cfg.mmax)
    return Report("affine", cfg.to_json_obj(), rep.checked, rep.mismatches)


# --- presentations -----------------------------------------------------------------

def verify_serre(cfg: RunConfig) -> Report:
    base = builtin_algebra(cfg.algebra)
    failures: list = []
    checked = 0
    css = css_presentation(base)
    rep = verify_relations(css, cfg.cutoff)
    checked += rep.checked
    failures += [{"instance": f"css {f['relation']} {f['indices']}", "residual": f["residual"]}
                 for f in rep.failures]
    caff = build_caff_from_css(css)
    rep = verify_relations(caff, cfg.cutoff)
    checked += rep.checked
    failures += [{"instance": f"caff {f['relation']} {f['indices']}", "residual": f["residual"]}
                 for f in rep.failures]
    checked += 2
    if matrix_det_exact(base.cartan_matrix) == 0:
        failures.append({"instance": "A invertible", "residual": "det A = 0"})
    corank = matrix_corank(affine_cartan_matrix(base))
    if corank != 1:
        failures.append({"instance": "A-hat corank", "residual": f"corank {corank}"})
    gen = generation_check(css, 1)
    checked += 1
    if not gen.passed:
        failures.append({"instance": "generation css", "residual": str(gen.unreached)})
    return Report("serre", cfg.to_json_obj(), checked, failures)


# --- quadrature-side suites ----------------------------------------------------------

def verify_orth(cfg: RunConfig) -> Report:
    lmax = max(cfg.lmax, 1)
    tol = cfg.tol
    rule = gauss_legendre_rule(max(64, lmax + 8))
    failures: list = []
    checked = 0
    for m in range(-lmax, lmax + 1):
        for l1 in range(abs(m), lmax + 1):
            for l2 in range(l1, lmax + 1):
                checked += 1
                val = inner_product(QFunction(l1, m), QFunction(l2, m), rule)
                want = 1.0 if l1 == l2 else 0.0
                if abs(val - want) >= tol:
                    failures.append({
                        "instance": f"(Q[{l1},{m}], Q[{l2},{m}])",
                        "residual": abs(val - want),
                    })
    return Report("orth", cfg.to_json_obj(), checked, failures)


def verify_oracle(cfg: RunConfig) -> Report:
    lmax = cfg.lmax
    tol = cfg.tol
    failures: list = []
    checked = 0
    for l1 in range(lmax + 1):
        for m1 in range(-l1, l1 + 1):
            for l2 in range(lmax + 1):
                for m2 in range(-l2, l2 + 1):
                    allowed = set(coupling_range(l1, m1, l2, m2))
                    for l3 in range(abs(l1 - l2), l1 + l2 + 1):
                        checked += 1
                        quad = gaunt_project(l1, m1, l2, m2, l3)
                        if l3 in allowed:
                            exact = structure_coeff(l1, m1, l2, m2, l3).to_float()
                            diff = abs(exact - quad)
                            if diff >= tol:
                                failures.append({
                                    "instance": f"c[{l1},{m1},{l2},{m2}]^{l3}",
                                    "residual": diff,
                                })
                            doubled = gaunt_project(l1, m1, l2, m2, l3,
                                                    nodes=2 * (l1 + l2 + l3 + 8))
                            if abs(doubled - quad) >= 1e-12:
                                failures.append({
                                    "instance": f"convergence c[{l1},{m1},{l2},{m2}]^{l3}",
                                    "residual": abs(doubled - quad),
                                })
                        else:
                            if abs(quad) >= 1e-10:
                                failures.append({
                                    "instance": f"excluded c[{l1},{m1},{l2},{m2}]^{l3}",
                                    "residual": abs(quad),
                                })
    return Report("oracle", cfg.to_json_obj(), checked, failures)


_SUITES = {
    "jacobi": verify_jacobi,
    "cocycle": verify_cocycle,
    "grading": verify_grading,
    "affine": verify_affine,
    "serre": verify_serre,
    "orth": verify_orth,
    "oracle": verify_oracle,
}


def run_suite(name: str, cfg: RunConfig) -> Report:
    try:
        suite = _SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(_SUITES)}")
    return suite(cfg)
