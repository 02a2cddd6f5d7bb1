"""Computational toolkit for real Clifford cell algebras.

Exact blade arithmetic, bivector Lie algebras with exact Killing data,
coproduct quantification on tensor powers of the spinor cell, flavor and
triality structure on the 16-dimensional Grassmann module, metric-operator
decompositions, toy trace dynamics, and a CLI verification harness.
"""

__version__ = "0.1.0"

from .clifford import (
    Blade,
    CliffordAlgebra,
    CliffordElement,
    FRAME33,
    GammaRep,
    RankDimension,
    Signature,
    blade_product,
    grade_project,
    make_algebra,
    matrix_rep,
    rank_dimensions,
)
from .dynamics import (
    DynamicsVector,
    GreenResult,
    HistoryPort,
    dynamics_vector,
    green_contraction,
    trace_polynomial,
    yang_dirac_operator,
)
from .grassmann import (
    FlavorLabel,
    GrassmannAlgebra,
    TrialityTriple,
    classify_flavor,
    flavor_gammas,
    grassmann_algebra,
    hyperbinary_basis,
    isospin_generators,
    triality_duality,
    triality_form,
    triality_triple,
)
from .metric import (
    KillingOperatorPair,
    QuantifiedMetric,
    curvature_commutator,
    curvature_unit,
    killing_operator,
    metric_symmetry_analysis,
    quantified_metric,
)
from .quantify import (
    PolarizedState,
    QuantifiedOperator,
    YangVariables,
    contraction_experiment,
    polarized_state,
    quantify_operator,
    spectrum,
    umklapp_check,
    yang_orbitals,
)
from .report import ExperimentConfig, Report, emit_report
from .spinlie import (
    AdjointOperator,
    KillingMatrix,
    SoGenerator,
    StructureTensor,
    adjoint_operator,
    killing_form,
    proposition_blocks,
    so_generators,
    standard_partition,
    structure_constants,
)
