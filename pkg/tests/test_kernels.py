import itertools

from gkmalg.base_algebra import builtin_algebra
from gkmalg.kernels import torus_current_jacobi_batch, vir_torus_l_sector_batch
from gkmalg.surd import Surd
from gkmalg.verify import (
    RunConfig, jacobi_triple, scan_element_jacobi, torus_generators, verify_jacobi,
)
from gkmalg.gkm import TorusAlgebra
from gkmalg.virasoro import TorusVirasoro


def test_batch_counts_match_triple_enumeration():
    su2 = builtin_algebra("su2")
    checked, fails = torus_current_jacobi_batch(su2, 1, 1)
    n = 3 * 9
    assert checked == n * (n - 1) * (n - 2) // 6
    assert not fails


def test_batch_agrees_with_engine_on_subbox():
    su3 = builtin_algebra("su3")
    checked, fails = torus_current_jacobi_batch(su3, 1, 0)
    assert not fails
    # the same box through the Element engine, excluding gradings and centrals
    algebra = TorusAlgebra(su3)
    from gkmalg.elements import TorusT
    gens = [TorusT(a, m, 0) for a in range(1, 9) for m in (-1, 0, 1)]
    failures = []
    engine_checked = scan_element_jacobi(algebra, gens, failures)
    assert engine_checked == checked
    assert not failures


def test_vir_batch_counts():
    su2 = builtin_algebra("su2")
    checked, fails = vir_torus_l_sector_batch(su2, 1, 1)
    size = 9
    nt = 3 * size
    want = (size * (size - 1) * (size - 2) // 6          # LLL
            + size * (size - 1) // 2 * nt                 # LLT
            + size * nt * (nt - 1) // 2)                  # LTT
    assert checked == want
    assert not fails


class _BrokenTensor:
    """su2-like tensor with the Jacobi identity deliberately broken."""

    dim = 3

    def __init__(self):
        s = Surd({2: 1})
        self._table = {
            (1, 2): ((3, s),), (2, 1): ((3, -s),),
            (2, 3): ((1, s * 2),), (3, 2): ((1, -(s * 2)),),
            (3, 1): ((2, s),), (1, 3): ((2, -s),),
        }

    def f_entries(self, a, b):
        return self._table.get((a, b), ())


class _AsymmetricTensor(_BrokenTensor):
    """Breaks antisymmetry as well: f^{32}_1 != -f^{23}_1."""

    def __init__(self):
        super().__init__()
        s = Surd({2: 1})
        self._table[(3, 2)] = ((1, -s),)


def test_batch_kernel_detects_breakage():
    checked, fails = torus_current_jacobi_batch(_BrokenTensor(), 1, 1)
    assert fails, "a broken structure tensor must be reported"


def test_vir_batch_detects_breakage():
    checked, fails = vir_torus_l_sector_batch(_AsymmetricTensor(), 1, 1)
    assert fails, "the LTT current check must see the broken tensor"


def test_full_jacobi_suite_counts():
    cfg = RunConfig(algebra="su2", manifold="torus", mmax=1, nmax=1)
    report = verify_jacobi(cfg)
    assert report.passed
    n = len(torus_generators(builtin_algebra("su2"), 1, 1, False))
    total_triples = n * (n - 1) * (n - 2) // 6
    # the suite re-checks the engine sub-box, which here is the whole box
    assert report.checked == 2 * total_triples


def test_engine_and_pair_table_consistency():
    # jacobi_triple must agree with composing Element brackets directly
    su2 = builtin_algebra("su2")
    vt = TorusVirasoro(su2)
    from gkmalg.elements import Element, LTorus, TorusT
    gens = [LTorus(1, 0), LTorus(-1, 1), TorusT(1, 0, -1), TorusT(3, 2, 1)]
    for x, y, z in itertools.combinations(gens, 3):
        via_elements = (
            vt.bracket(vt.bracket(Element.of(x), Element.of(y)), Element.of(z))
            + vt.bracket(vt.bracket(Element.of(y), Element.of(z)), Element.of(x))
            + vt.bracket(vt.bracket(Element.of(z), Element.of(x)), Element.of(y))
        )
        assert jacobi_triple(vt, x, y, z) == via_elements
