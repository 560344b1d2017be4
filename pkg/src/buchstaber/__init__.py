"""Real Buchstaber invariant s_R(m, p) and the integer program m_k(b)."""

from .cache import CacheRecord, ResultCache
from .closed_forms import (
    BoundInterval,
    InvariantResult,
    bounds,
    mk_closed,
    mk_lower,
    mk_upper,
    periodicity_applies,
    srm_boundary,
    srm_bounds,
)
from .constructions import (
    CertificateError,
    combine,
    construct_odd_weight_indicator,
    construct_subspace_point,
    construct_trivial,
    construct_uniform,
    lift_period,
    matrix_4x8,
    matrix_basis_plus_sum,
    matrix_rank2_blocks,
    matrix_two_deficient,
    two_deficient_dim,
)
from .fixtures import TableFixtureEntry, mk_table, srm_table
from .gf2 import DimensionError, Gf2Mat, Gf2Vec, dot, rank, spans_full
from .realizability import (
    ConstraintProblem,
    MatrixFormatError,
    MultiplicityVector,
    feasible,
    matrix_to_multiplicities,
    multiplicities_to_matrix,
    parse_matrix_text,
    realizes_fast,
    realizes_naive,
)
from .solver import SolveOptions, SolveResult, conjecture_scan, lp_optimum, solve_mk, solve_srm, vertex_coords

__version__ = "0.1.0"
