"""Exact computations with partially multiplicative quandles and the cell complexes of their Hurwitz spaces."""

from .arrays import (
    ArrayPQ,
    CellSet,
    degeneracy_h,
    degeneracy_v,
    enumerate_cells,
    face_h,
    face_v,
    is_admissible,
    is_nondegenerate,
    make_array,
    total_product,
)
from .completion import HqClass, TruncatedCompletion, complete, decompositions, hq_conj, hq_product
from .errors import *  # noqa: F401,F403
from .homology import (
    QQ,
    ZZ,
    ChainComplexData,
    HomologyResult,
    Ring,
    build_total_complex,
    diagonal_oracle,
    homology,
    parse_ring,
    smith_normal_form,
    total_homology,
)
from .pmq import (
    ClassificationReport,
    GroupSpec,
    PairSpec,
    PmqSpec,
    Violation,
    classify,
    norms_of,
    pmq_conj,
    pmq_product,
    sub_pmq_norm_le,
    validate_group,
    validate_pair,
    validate_pmq,
)
from .poincare import PoincareReport, coconnectivity_probe, intrinsic_norm_check, poincare_report

__version__ = "0.1.0"
