"""Exact Kac-Moody and Virasoro algebras on the two-torus and the two-sphere.

The package provides an exact scalar field of quadratic surds, exact
SO(3) Clebsch-Gordan and product-expansion coefficients, the current
algebras attached to the two-torus and the two-sphere with their root
gradings and Chevalley-Serre presentations, their Virasoro semidirect
extensions, and an independent quadrature oracle for every sphere
structure constant.
"""

from .base_algebra import (
    BaseAlgebra, affine_cartan_matrix, builtin_algebra,
    matrix_corank, matrix_det_exact, matrix_rank_exact,
)
from .coupling import clebsch_gordan, coupling_range, structure_coeff
from .elements import (
    CCentral, CircleT, D, D1, D2, Element, FamilyMixError, K, K1, K2,
    LCircle, LSphere, LTorus, SphereE, SphereH, SphereT,
    TorusE, TorusH, TorusT, genid_text,
)
from .gkm import (
    AffineCheckReport, SphereAlgebra, SphereRootLabel, TorusAlgebra,
    TorusRootLabel, affine_subalgebra_check, bracket_sphere, bracket_torus,
    root_positive,
)
from .oracle import (
    QFunction, QuadratureRule, fourier_oracle_torus, gauss_legendre_rule,
    gaunt_project, inner_product, legendre_assoc,
)
from .presentations import (
    GenerationReport, Presentation, RelationReport, build_caff_from_css,
    css_presentation, generation_check, serre_power, verify_relations,
)
from .surd import Surd, squarefree_decompose, surd_add, surd_mul, surd_sqrt_rational, surd_to_float
from .virasoro import (
    CircleVirasoro, SphereVirasoro, TorusVirasoro,
    bracket_vir_circle, bracket_vir_sphere, bracket_vir_torus,
)

__version__ = "0.1.0"
