"""Chevalley-Serre type presentations of the torus current algebra.

Two presentations are implemented: one over the finite Cartan matrix with
doubly moded Chevalley generators, and one over the affine Cartan matrix
with a single free mode, whose node 0 operators sit at the lowest root.
Relations are verified through the realization inside the torus algebra,
which is exact, so a PASS means every relation instance evaluates to the
stated right-hand side as an identity of Elements.

The Cartan entry of the affine presentation at node 0 is defined, as in
the equivalence construction, by the bracket of the two node-0 Chevalley
generators; evaluating that bracket places the first central at mode zero
(the level term), which is what makes the relation set close.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .base_algebra import BaseAlgebra, affine_cartan_matrix
from .elements import Element, K1, K2, TorusE, TorusH, genid_sort_key
from .gkm import TorusAlgebra
from .surd import Surd


@dataclass
class Presentation:
    """A Cartan matrix with realized Chevalley generators and their relation set."""

    kind: str  # "css" (two modes, nodes 1..r) or "caff" (one mode, nodes 0..r)
    base: BaseAlgebra
    cartan_matrix: tuple[tuple[int, ...], ...]
    node_range: tuple[int, ...]
    n_modes: int
    algebra: TorusAlgebra = field(repr=False)
    _h_real: dict = field(default_factory=dict, repr=False)
    _e_real: dict = field(default_factory=dict, repr=False)

    def h(self, i: int, *modes: int) -> Element:
        key = (i, modes)
        out = self._h_real.get(key)
        if out is None:
            out = self._realize_h(i, modes)
            self._h_real[key] = out
        return out

    def e(self, sign: int, i: int, *modes: int) -> Element:
        key = (sign, i, modes)
        out = self._e_real.get(key)
        if out is None:
            out = self._realize_e(sign, i, modes)
            self._e_real[key] = out
        return out

    def scalar_product(self, i: int, j: int) -> Fraction:
        raise NotImplementedError

    def bracket(self, x: Element, y: Element) -> Element:
        return self.algebra.bracket(x, y)


class _CssPresentation(Presentation):
    def _realize_h(self, i, modes):
        m, p = modes
        alpha = self.base.simple_roots[i - 1]
        ortho = self.base.root_ortho(alpha)
        return Element({(TorusH(u, m, p), 0): comp
                        for u, comp in enumerate(ortho, start=1) if comp})

    def _realize_e(self, sign, i, modes):
        m, p = modes
        alpha = self.base.simple_roots[i - 1]
        root = alpha if sign > 0 else tuple(-c for c in alpha)
        return Element.of(TorusE(root, m, p))

    def scalar_product(self, i, j):
        return self.base.root_dot(self.base.simple_roots[i - 1], self.base.simple_roots[j - 1])


class _CaffPresentation(Presentation):
    def _realize_h(self, i, modes):
        (m,) = modes
        if i >= 1:
            alpha = self.base.simple_roots[i - 1]
            ortho = self.base.root_ortho(alpha)
            return Element({(TorusH(u, 0, m), 0): comp
                            for u, comp in enumerate(ortho, start=1) if comp})
        return self.bracket(self.e(+1, 0, m), self.e(-1, 0, 0))

    def _realize_e(self, sign, i, modes):
        (m,) = modes
        if i >= 1:
            alpha = self.base.simple_roots[i - 1]
            root = alpha if sign > 0 else tuple(-c for c in alpha)
            return Element.of(TorusE(root, 0, m))
        # Node 0 sits at the lowest root: e-hat^{+-}_m = E^{-+psi}_{+-1, m}.
        return _highest_root_operator(self.base, -sign, sign_mode=sign, m=m)

    def scalar_product(self, i, j):
        psi = self.base.highest_root
        if i == 0 and j == 0:
            return self.base.root_dot(psi, psi)
        if i == 0:
            return -self.base.root_dot(psi, self.base.simple_roots[j - 1])
        if j == 0:
            return -self.base.root_dot(self.base.simple_roots[i - 1], psi)
        return self.base.root_dot(self.base.simple_roots[i - 1], self.base.simple_roots[j - 1])


def _simple_root_chain(base: BaseAlgebra, target) -> list[int]:
    """An ordering i1..ik with all partial sums of simple roots being roots."""
    chain: list[int] = []
    partial = (0,) * base.rank

    def extend(partial, chain):
        if partial == target:
            return chain
        for i, alpha in enumerate(base.simple_roots, start=1):
            cand = tuple(p + a for p, a in zip(partial, alpha))
            if all(c <= t for c, t in zip(cand, target)) and base.is_root(cand):
                out = extend(cand, chain + [i])
                if out is not None:
                    return out
        return None

    out = extend(partial, chain)
    if out is None:
        raise ValueError(f"cannot reach {target} by bracketing simple-root generators")
    return out


def _highest_root_operator(base: BaseAlgebra, root_sign: int, sign_mode: int, m: int) -> Element:
    """E_{root_sign * psi} at modes (sign_mode, m), built by iterated brackets."""
    chain = _simple_root_chain(base, base.highest_root)
    algebra = TorusAlgebra(base)

    def signed(i):
        alpha = base.simple_roots[i - 1]
        return alpha if root_sign > 0 else tuple(-c for c in alpha)

    partial = signed(chain[0])
    x = Element.of(TorusE(partial, sign_mode, m))
    scale = 1
    for i in chain[1:]:
        step = signed(i)
        scale *= base.epsilon[(partial, step)]
        x = algebra.bracket(x, Element.of(TorusE(step, 0, 0)))
        partial = tuple(p + s for p, s in zip(partial, step))
    return x.scaled(scale)


def css_presentation(base: BaseAlgebra) -> Presentation:
    return _CssPresentation(
        kind="css",
        base=base,
        cartan_matrix=base.cartan_matrix,
        node_range=tuple(range(1, base.rank + 1)),
        n_modes=2,
        algebra=TorusAlgebra(base),
    )


def build_caff_from_css(p_css: Presentation) -> Presentation:
    """The one-mode presentation over the affine Cartan matrix, realized
    through iterated brackets of the two-mode Chevalley generators."""
    if p_css.kind != "css":
        raise ValueError("expected the two-mode presentation as input")
    base = p_css.base
    return _CaffPresentation(
        kind="caff",
        base=base,
        cartan_matrix=affine_cartan_matrix(base),
        node_range=tuple(range(0, base.rank + 1)),
        n_modes=1,
        algebra=p_css.algebra,
    )


def serre_power(p: Presentation, i: int, j: int, modes_i=(), modes_j=(),
                sign: int = 1, power: int | None = None) -> Element:
    """ad^{1 - A_ij}(e^sign_i) . e^sign_j with ad(x).y = [y, x]."""
    if i == j:
        raise ValueError("Serre relations are defined for distinct nodes only")
    offset = 0 if p.kind == "caff" else 1
    if power is None:
        power = 1 - p.cartan_matrix[i - offset][j - offset]
    x = p.e(sign, i, *modes_i)
    out = p.e(sign, j, *modes_j)
    for _ in range(power):
        out = p.bracket(out, x)
    return out


@dataclass
class RelationReport:
    presentation: str
    algebra: str
    cutoff: int
    checked: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {
            "presentation": self.presentation,
            "algebra": self.algebra,
            "cutoff": self.cutoff,
            "checked": self.checked,
            "failures": self.failures,
        }


def _k_element(which, coeff) -> Element:
    return Element.of(which, Surd(coeff)) if coeff else Element.zero()


def verify_relations(p: Presentation, mode_cutoff: int) -> RelationReport:
    """Evaluate every displayed relation with all modes in [-cutoff, cutoff]."""
    modes = range(-mode_cutoff, mode_cutoff + 1)
    mode_tuples = list(product(modes, repeat=p.n_modes))
    nodes = p.node_range
    checked = 0
    failures = []

    def record(relation, indices, lhs: Element, rhs: Element | None = None):
        nonlocal checked
        checked += 1
        residual = lhs if rhs is None else lhs - p.algebra.to_flavor(rhs)
        if residual:
            failures.append({
                "relation": relation,
                "indices": list(indices),
                "residual": residual.text(),
            })

    centrals = [("k1", K1()), ("k2", K2())] if p.kind == "css" else [("k2", K2())]
    for name, kc in centrals:
        kel = Element.of(kc)
        for i in nodes:
            for mu in mode_tuples:
                record(f"[{name},h]=0", (i, *mu), p.bracket(kel, p.h(i, *mu)))
                for sign in (1, -1):
                    record(f"[{name},e]=0", (sign, i, *mu),
                           p.bracket(kel, p.e(sign, i, *mu)))

    for i in nodes:
        for j in nodes:
            dot = p.scalar_product(i, j)
            for mu in mode_tuples:
                for nu in mode_tuples:
                    # Cartan-Cartan
                    lhs = p.bracket(p.h(i, *mu), p.h(j, *nu))
                    if p.kind == "css":
                        m, pmode = mu
                        delta = all(x + y == 0 for x, y in zip(mu, nu))
                        rhs = (_k_element(K1(), m * dot) + _k_element(K2(), pmode * dot)
                               if delta else Element.zero())
                    else:
                        (m,) = mu
                        delta = mu[0] + nu[0] == 0
                        rhs = _k_element(K2(), m * dot) if delta else Element.zero()
                    record("cartan-cartan", (i, j, *mu, *nu), lhs, rhs)
                    # Cartan-Chevalley
                    summed = tuple(x + y for x, y in zip(mu, nu))
                    for sign in (1, -1):
                        lhs = p.bracket(p.h(i, *mu), p.e(sign, j, *nu))
                        rhs = p.e(sign, j, *summed).scaled(Surd(sign * dot))
                        record("cartan-chevalley", (i, j, sign, *mu, *nu), lhs, rhs)
                    # raising-lowering
                    lhs = p.bracket(p.e(1, i, *mu), p.e(-1, j, *nu))
                    if i != j:
                        rhs = Element.zero()
                    else:
                        rhs = p.h(i, *summed)
                        if all(x + y == 0 for x, y in zip(mu, nu)):
                            if p.kind == "css":
                                m, n = mu
                                rhs = rhs + _k_element(K1(), m) + _k_element(K2(), n)
                            else:
                                rhs = rhs + _k_element(K2(), mu[0])
                    record("raising-lowering", (i, j, *mu, *nu), lhs, rhs)
                    # Serre
                    if i != j:
                        for sign in (1, -1):
                            record("serre", (i, j, sign, *mu, *nu),
                                   serre_power(p, i, j, mu, nu, sign))

    name = "css" if p.kind == "css" else "caff"
    return RelationReport(name, p.base.name, mode_cutoff, checked, failures)


# --- bracket-closure generation check ---------------------------------------

class _SurdSpan:
    """A linear span of Elements, kept in echelon form without division."""

    def __init__(self):
        self._rows: dict[tuple, Element] = {}

    def _lead(self, el: Element):
        return min(((genid_sort_key(g), p) for (g, p), _ in el.raw_items()))

    def reduce(self, el: Element) -> Element:
        while el:
            lead = self._lead(el)
            row = self._rows.get(lead)
            if row is None:
                return el
            pivot_key = min(row.raw_items(), key=lambda kv: (genid_sort_key(kv[0][0]), kv[0][1]))[0]
            el = el.scaled(row.coeff(*pivot_key)) - row.scaled(el.coeff(*pivot_key))
        return el

    def add(self, el: Element) -> bool:
        el = self.reduce(el)
        if not el:
            return False
        self._rows[self._lead(el)] = el
        return True

    def contains(self, el: Element) -> bool:
        return not self.reduce(el)

    def __len__(self):
        return len(self._rows)


@dataclass
class GenerationReport:
    presentation: str
    algebra: str
    target_cutoff: int
    dimension: int
    unreached: list

    @property
    def passed(self) -> bool:
        return not self.unreached

    def to_json_obj(self) -> dict:
        return {
            "presentation": self.presentation,
            "algebra": self.algebra,
            "target_cutoff": self.target_cutoff,
            "dimension": self.dimension,
            "unreached": self.unreached,
        }


def generation_check(p: Presentation, target_cutoff: int,
                     gen_cutoff: int | None = None,
                     work_cutoff: int | None = None) -> GenerationReport:
    """Breadth-first bracket closure of the Chevalley generators.

    Reports every root generator and Cartan combination inside the target
    mode box that the closure fails to span.  Bracket results reaching
    outside the working mode box are discarded, which can only make the
    check more conservative.
    """
    base = p.base
    algebra = p.algebra
    if gen_cutoff is None:
        gen_cutoff = target_cutoff
    if work_cutoff is None:
        work_cutoff = target_cutoff + 1
    gen_modes = range(-gen_cutoff, gen_cutoff + 1)
    seeds = []
    for i in p.node_range:
        for mu in product(gen_modes, repeat=p.n_modes):
            for sign in (1, -1):
                seeds.append(algebra.to_flavor(p.e(sign, i, *mu)))

    def in_box(el: Element) -> bool:
        for gid in el.generators():
            if hasattr(gid, "m") and (abs(gid.m) > work_cutoff or abs(gid.n) > work_cutoff):
                return False
        return True

    span = _SurdSpan()
    frontier = []
    for s in seeds:
        if span.add(s):
            frontier.append(s)
    while frontier:
        new_frontier = []
        for x in frontier:
            for s in seeds:
                out = algebra.bracket(x, s)
                if out and in_box(out) and span.add(out):
                    new_frontier.append(out)
        frontier = new_frontier

    targets = []
    tmodes = range(-target_cutoff, target_cutoff + 1)
    for m in tmodes:
        for n in tmodes:
            for root in base.roots:
                targets.append((f"E[root={'.'.join(map(str, root))},m={m},n={n}]",
                                Element.of(TorusE(root, m, n))))
            for i in range(1, base.rank + 1):
                ortho = base.root_ortho(base.simple_roots[i - 1])
                el = Element({(TorusH(u, m, n), 0): comp
                              for u, comp in enumerate(ortho, start=1) if comp})
                targets.append((f"alpha_{i}.H[m={m},n={n}]", el))
    targets.append(("k1", Element.of(K1())))
    targets.append(("k2", Element.of(K2())))

    unreached = [name for name, el in targets
                 if not span.contains(algebra.to_flavor(el))]
    return GenerationReport(p.kind, base.name, target_cutoff, len(span), unreached)
