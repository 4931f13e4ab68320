"""Distance-based inconsistency analysis and reduction for pairwise comparisons matrices."""

from .core import (
    PCMatrixError,
    Triad,
    ValidationReport,
    WeightVector,
    consistent_from_vector,
    enumerate_triads,
    exp_map,
    is_consistent,
    log_map,
    reciprocalize,
    row_arithmetic_means,
    row_geometric_means,
    validate,
)
from .inconsistency import InconsistencyReport, TriadScore, matrix_ii, triad_ii
from .reduction import (
    ReductionConfig,
    ReductionTrace,
    direct_projection,
    project_n4_closed_form,
    project_triad_additive,
    project_triad_multiplicative,
    reduce,
    single_entry_repairs,
)
from .spectral import ConvergenceError, EigenResult, gm_ev_lambda_3x3, principal_eigenpair, saaty_ci

__version__ = "0.1.0"
