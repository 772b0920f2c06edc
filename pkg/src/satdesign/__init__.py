"""Saturated and D-optimal saturated two-level designs for a pivot factor
interacting with every other factor, certified by exact integer determinants.
"""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    BoundValue,
    EhlichConstants,
    classical_upper_bound,
    efficiency_report,
    ehlich_constants,
    local_bound_g,
    local_bound_g1,
)
from .designs import (
    DesignClass,
    ModelSpec,
    RunMatrix,
    SaturatedDesign,
    VerificationReport,
    construct_g,
    construct_g1,
    construct_g1_optimal,
    construct_g2k_optimal,
    construct_g_optimal,
    construct_gn,
    is_estimable,
    model_matrix,
    verify_membership,
)
from .hadamard import is_hadamard, sylvester
from .maxdet import MaxDetRecord, Provenance, catalog_theta, theta_exhaustive, theta_hillclimb
from .signmat import (
    SignMatrix,
    determinant_exact,
    first_column_all_ones,
    hblock,
    is_balanced,
    negate_cols,
    negate_rows,
    schur_product,
    vblock,
)
