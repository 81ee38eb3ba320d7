"""Exact computational workbench for weight-graded category algebras.

Realizes categories of Z^r-graded vector spaces with raising/lowering
operators subject to commutator scalars f_j(n) and (quantum) Serre relations,
and machine-checks the comparison of Ext algebras of simple objects with the
cohomology of the corresponding flag variety, together with a degree-1
generation (Koszulity) probe — all in exact arithmetic over Q(q).
"""

__version__ = "0.1.0"

from .qfield import QScalar, qint, qbinom, parse_qscalar
from .rootdata import (
    CartanDatum,
    build_cartan,
    positive_roots,
    weyl_table,
    flag_betti,
    flag_ring,
    kostant,
)
from .presentation import (
    FSpec,
    NCPoly,
    serre_relation,
    un_presentation,
    instantiate_window,
    eval_f,
)
from .gbasis import groebner, normal_form, hilbert, dense_rank_dims, GBResult
from .modules import (
    GradedModule,
    trivial_module,
    truncated_verma,
    build_simple,
    check_relations,
    is_simple,
)
from .ext import (
    build_algebra,
    minimal_resolution,
    ext_dims,
    ext_table,
    low_degree_ext,
    schur_check,
    koszul_check,
    euler_check,
    yoneda_square,
    yoneda_product,
)

__all__ = [
    "__version__",
    "QScalar",
    "qint",
    "qbinom",
    "parse_qscalar",
    "CartanDatum",
    "build_cartan",
    "positive_roots",
    "weyl_table",
    "flag_betti",
    "flag_ring",
    "kostant",
    "FSpec",
    "NCPoly",
    "serre_relation",
    "un_presentation",
    "instantiate_window",
    "eval_f",
    "groebner",
    "normal_form",
    "hilbert",
    "dense_rank_dims",
    "GBResult",
    "GradedModule",
    "trivial_module",
    "truncated_verma",
    "build_simple",
    "check_relations",
    "is_simple",
    "build_algebra",
    "minimal_resolution",
    "ext_dims",
    "ext_table",
    "low_degree_ext",
    "schur_check",
    "koszul_check",
    "euler_check",
    "yoneda_square",
    "yoneda_product",
]
