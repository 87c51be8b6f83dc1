"""Compact simple Lie algebras su(2) and su(3) with exact structure data.

The orthonormal basis {T^a} is normalised so that the invariant form is
delta^{ab} and long roots have squared length 2; this is the unique scale
on which the affine central terms, the Cartan-Weyl brackets and the
integer Cartan matrices are simultaneously consistent.  Concretely the
structure constants are sqrt(2) times the conventional physics tables.

Roots are stored as integer coordinate vectors in the simple-root basis;
their components in the orthonormal Cartan frame are Surds.  All data is
validated exhaustively at construction time and immutable afterwards.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .elements import Element, Root, TorusE, TorusH
from .surd import Surd

HALF = Fraction(1, 2)
SQRT2 = Surd({2: 1})
INV_SQRT2 = Surd({2: HALF})
SQRT2_HALF = Surd({2: HALF})
SQRT6_HALF = Surd({6: HALF})

# Totally antisymmetric triples (a, b, c, f^{ab}_c); the remaining entries
# follow by antisymmetry.
_F_SU2 = [(1, 2, 3, SQRT2)]
_F_SU3 = [
    (1, 2, 3, SQRT2),
    (1, 4, 7, SQRT2_HALF),
    (1, 5, 6, -SQRT2_HALF),
    (2, 4, 6, SQRT2_HALF),
    (2, 5, 7, SQRT2_HALF),
    (3, 4, 5, SQRT2_HALF),
    (3, 6, 7, -SQRT2_HALF),
    (4, 5, 8, SQRT6_HALF),
    (6, 7, 8, SQRT6_HALF),
]


class BaseAlgebra:
    """Structure constants, root data and Cartan-Weyl tables of a compact simple Lie algebra."""

    def __init__(self, name, dim, cartan_indices, gram, simple_root_ortho,
                 root_pairs, highest_root, f_triples):
        self.name = name
        self.dim = dim
        self.rank = len(cartan_indices)
        self.cartan_indices = tuple(cartan_indices)
        self.gram = tuple(tuple(row) for row in gram)
        self.simple_root_ortho = tuple(tuple(row) for row in simple_root_ortho)
        self.simple_roots = tuple(
            tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)
        )
        self.root_pairs = dict(root_pairs)
        self.positive_roots = tuple(sorted(self.root_pairs))
        self.roots = self.positive_roots + tuple(
            tuple(-c for c in r) for r in self.positive_roots
        )
        self.highest_root = highest_root
        cartan = []
        for i in range(self.rank):
            row = []
            for j in range(self.rank):
                val = Fraction(2 * self.gram[i][j], self.gram[i][i])
                if val.denominator != 1:
                    raise AssertionError("Cartan matrix entry is not an integer")
                row.append(int(val))
            cartan.append(tuple(row))
        self.cartan_matrix = tuple(cartan)

        f: dict[tuple[int, int], dict[int, Surd]] = {}

        def put(a, b, c, val):
            row = f.setdefault((a, b), {})
            row[c] = row.get(c, Surd(0)) + val

        for a, b, c, v in f_triples:
            for (x, y, z), sign in (
                ((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
                ((b, a, c), -1), ((c, b, a), -1), ((a, c, b), -1),
            ):
                put(x, y, z, v if sign > 0 else -v)
        self.f = {key: tuple(sorted(row.items())) for key, row in f.items()}

        self.epsilon = self._build_epsilon()
        self._validate()

    # --- root geometry -----------------------------------------------------

    def root_dot(self, u: Root, v: Root) -> Fraction:
        return sum(
            Fraction(u[i]) * self.gram[i][j] * v[j]
            for i in range(self.rank) for j in range(self.rank)
        )

    def root_ortho(self, root: Root) -> tuple[Surd, ...]:
        """Components of a root in the orthonormal Cartan frame."""
        out = []
        for i in range(self.rank):
            comp = Surd(0)
            for j, c in enumerate(root):
                if c:
                    comp = comp + self.simple_root_ortho[j][i] * c
            out.append(comp)
        return tuple(out)

    def is_root(self, v: Root) -> bool:
        return v in self.root_pairs or tuple(-c for c in v) in self.root_pairs

    def root_sign(self, root: Root) -> int:
        if root in self.root_pairs:
            return 1
        if tuple(-c for c in root) in self.root_pairs:
            return -1
        raise ValueError(f"{root} is not a root of {self.name}")

    def f_entries(self, a: int, b: int) -> tuple[tuple[int, Surd], ...]:
        return self.f.get((a, b), ())

    # --- Cartan-Weyl change of basis ----------------------------------------

    def cartan_position(self, a: int) -> int | None:
        """1-based Cartan index of flavor a, or None if a sits in a root pair."""
        try:
            return self.cartan_indices.index(a) + 1
        except ValueError:
            return None

    def pair_role(self, a: int) -> tuple[Root, str]:
        """(positive root, "re"|"im") describing where flavor a sits."""
        for root, (p, q) in self.root_pairs.items():
            if a == p:
                return root, "re"
            if a == q:
                return root, "im"
        raise ValueError(f"flavor {a} is not part of a root pair")

    def cw_combo(self, root: Root) -> dict[tuple[int, int], Surd]:
        """E_root as a combination {(flavor, i_power): coeff} of the T basis."""
        sign = self.root_sign(root)
        pos = root if sign > 0 else tuple(-c for c in root)
        p, q = self.root_pairs[pos]
        return {(p, 0): INV_SQRT2, (q, 1): INV_SQRT2 if sign > 0 else -INV_SQRT2}

    def t_combo(self, a: int):
        """T^a over the Cartan-Weyl basis: ("H", i) or ("E", [(root, coeff, ipow)])."""
        i = self.cartan_position(a)
        if i is not None:
            return ("H", i)
        root, role = self.pair_role(a)
        neg = tuple(-c for c in root)
        if role == "re":
            return ("E", [(root, INV_SQRT2, 0), (neg, INV_SQRT2, 0)])
        return ("E", [(root, -INV_SQRT2, 1), (neg, INV_SQRT2, 1)])

    def to_cartan_weyl(self, a: int) -> Element:
        """T^a as a zero-mode torus Cartan-Weyl Element."""
        kind = self.t_combo(a)
        if kind[0] == "H":
            return Element.of(TorusH(kind[1], 0, 0))
        terms = {}
        for root, coeff, ipow in kind[1]:
            terms[(TorusE(root, 0, 0), ipow)] = coeff
        return Element(terms)

    # --- construction-time verification --------------------------------------

    def _zero_mode_bracket(self, x: dict, y: dict) -> dict:
        # [T^a, T^b] = i f^{ab}_c T^c on combinations with tracked i-powers.
        out: dict[tuple[int, int], Surd] = {}
        for (a, pa), ca in x.items():
            for (b, pb), cb in y.items():
                for c, fv in self.f_entries(a, b):
                    ip = pa + pb + 1
                    coeff = ca * cb * fv
                    if ip >= 2:
                        ip -= 2
                        coeff = -coeff
                    key = (c, ip)
                    total = out.get(key, Surd(0)) + coeff
                    if total:
                        out[key] = total
                    elif key in out:
                        del out[key]
        return out

    def _build_epsilon(self) -> dict[tuple[Root, Root], int]:
        eps = {}
        for alpha in self.roots:
            for beta in self.roots:
                total = tuple(ai + bi for ai, bi in zip(alpha, beta))
                if not self.is_root(total):
                    continue
                res = self._zero_mode_bracket(self.cw_combo(alpha), self.cw_combo(beta))
                expected = self.cw_combo(total)
                key = next(iter(expected))
                ratio = res.get(key, Surd(0)) / expected[key]
                if ratio != Surd(1) and ratio != Surd(-1):
                    raise AssertionError(
                        f"epsilon({alpha},{beta}) is not a sign: {ratio}"
                    )
                sign = 1 if ratio == Surd(1) else -1
                for k, v in expected.items():
                    if res.get(k, Surd(0)) != v * sign:
                        raise AssertionError(f"[E_{alpha}, E_{beta}] is not proportional to E_{total}")
                if len(res) != len(expected):
                    raise AssertionError(f"[E_{alpha}, E_{beta}] has stray terms")
                eps[(alpha, beta)] = sign
        return eps

    def _validate(self):
        # Jacobi identity of the structure tensor, every index triple.
        for a in range(1, self.dim + 1):
            for b in range(1, self.dim + 1):
                for c in range(1, self.dim + 1):
                    acc: dict[int, Surd] = {}
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        for e, f1 in self.f_entries(x, y):
                            for g, f2 in self.f_entries(e, z):
                                total = acc.get(g, Surd(0)) + f1 * f2
                                if total:
                                    acc[g] = total
                                elif g in acc:
                                    del acc[g]
                    if acc:
                        raise AssertionError(f"Jacobi fails for f at ({a},{b},{c})")
        # Cartan matrix shape.
        for i in range(self.rank):
            if self.cartan_matrix[i][i] != 2:
                raise AssertionError("Cartan matrix diagonal must be 2")
            for j in range(self.rank):
                if i != j and self.cartan_matrix[i][j] > 0:
                    raise AssertionError("Cartan matrix off-diagonal must be <= 0")
        # Orthonormal simple-root frame reproduces the Gram matrix.
        for i in range(self.rank):
            for j in range(self.rank):
                dot = Surd(0)
                for u in range(self.rank):
                    dot = dot + self.simple_root_ortho[i][u] * self.simple_root_ortho[j][u]
                if dot != Surd(self.gram[i][j]):
                    raise AssertionError("orthonormal frame inconsistent with Gram matrix")
        # Highest-root property.
        for sr in self.simple_roots:
            up = tuple(h + s for h, s in zip(self.highest_root, sr))
            if self.is_root(up):
                raise AssertionError("highest root is not highest")
        # Epsilon antisymmetry.
        for (alpha, beta), sign in self.epsilon.items():
            if self.epsilon[(beta, alpha)] != -sign:
                raise AssertionError("epsilon is not antisymmetric")
        # The Cartan action [H^i, E_root] must reproduce the root components.
        for root in self.roots:
            combo = self.cw_combo(root)
            ortho = self.root_ortho(root)
            for i, ci in enumerate(self.cartan_indices, start=1):
                res = self._zero_mode_bracket({(ci, 0): Surd(1)}, combo)
                expected = {k: v * ortho[i - 1] for k, v in combo.items() if v * ortho[i - 1]}
                if res != expected:
                    raise AssertionError(f"[H^{i}, E_{root}] has the wrong eigenvalue")


@lru_cache(maxsize=None)
def builtin_algebra(name: str) -> BaseAlgebra:
    """The supported compact simple Lie algebras: "su2" and "su3"."""
    if name == "su2":
        return BaseAlgebra(
            name="su2",
            dim=3,
            cartan_indices=(3,),
            gram=((2,),),
            simple_root_ortho=((SQRT2,),),
            root_pairs={(1,): (1, 2)},
            highest_root=(1,),
            f_triples=_F_SU2,
        )
    if name == "su3":
        return BaseAlgebra(
            name="su3",
            dim=8,
            cartan_indices=(3, 8),
            gram=((2, -1), (-1, 2)),
            simple_root_ortho=(
                (SQRT2, Surd(0)),
                (-SQRT2_HALF, SQRT6_HALF),
            ),
            root_pairs={(1, 0): (1, 2), (0, 1): (6, 7), (1, 1): (4, 5)},
            highest_root=(1, 1),
            f_triples=_F_SU3,
        )
    raise ValueError(f"unknown algebra {name!r}; supported: su2, su3")


def affine_cartan_matrix(g: BaseAlgebra) -> tuple[tuple[int, ...], ...]:
    """The (r+1)x(r+1) affine Cartan matrix seeded by the lowest root node.

    The extra node is (-psi, 0, 1) with the scalar product extending the
    finite one by the pairing of the level and mode entries.
    """
    psi = g.highest_root

    def prod(i: int, j: int) -> Fraction:
        if i == 0 and j == 0:
            return g.root_dot(psi, psi)
        if i == 0:
            return -g.root_dot(psi, g.simple_roots[j - 1])
        if j == 0:
            return -g.root_dot(g.simple_roots[i - 1], psi)
        return g.root_dot(g.simple_roots[i - 1], g.simple_roots[j - 1])

    size = g.rank + 1
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            val = 2 * prod(i, j) / prod(i, i)
            if val.denominator != 1:
                raise AssertionError("affine Cartan matrix entry is not an integer")
            row.append(int(val))
        rows.append(tuple(row))
    return tuple(rows)


def matrix_rank_exact(matrix) -> int:
    """Rank over the rationals by fraction-free Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col]:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def matrix_corank(matrix) -> int:
    return len(matrix) - matrix_rank_exact(matrix)


def matrix_det_exact(matrix) -> Fraction:
    """Determinant over the rationals (the matrices here are tiny)."""
    n = len(matrix)
    rows = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, n):
            if rows[r][col]:
                factor = rows[r][col] / rows[col][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det
