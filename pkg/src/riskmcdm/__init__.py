"""Multi-criteria corporate risk assessment toolkit.

Pairwise-comparison weighting with consistency control, financial ratio
extraction from statement data, and simple additive weighting over the
resulting decision matrix, wired into one reproducible pipeline with a
command line and a judgment elicitation service on top.
"""

from .ahp import (
    ACCEPTABLE,
    CR_THRESHOLD,
    NEEDS_REVISION,
    ConsistencyReport,
    PairwiseMatrix,
    WeightVector,
    aggregate_experts,
    complete_reciprocal,
    consistency,
    derive_weights,
    global_weights,
    lambda_max,
    principal_eigenvector,
    random_index,
    worst_triad,
)
from .errors import IoError, RiskMcdmError, ValidationError
from .hierarchy import CriterionNode, Direction, Hierarchy, saaty_intensity
from .pipeline import AssessmentConfig, load_config, run_assessment, top_risk_criteria
from .ratios import ImputationPolicy, build_decision_matrix, compute_ratio, direction_of
from .report import RiskReport, emit_report, report_to_dict
from .saw import (
    DecisionMatrix,
    NormalizedMatrix,
    ScoreTable,
    WeightedMatrix,
    apply_weights,
    normalize,
    rank,
    score,
)

__version__ = "0.1.0"

__all__ = [
    "ACCEPTABLE",
    "CR_THRESHOLD",
    "NEEDS_REVISION",
    "AssessmentConfig",
    "ConsistencyReport",
    "CriterionNode",
    "DecisionMatrix",
    "Direction",
    "Hierarchy",
    "ImputationPolicy",
    "IoError",
    "NormalizedMatrix",
    "PairwiseMatrix",
    "RiskMcdmError",
    "RiskReport",
    "ScoreTable",
    "ValidationError",
    "WeightVector",
    "WeightedMatrix",
    "aggregate_experts",
    "apply_weights",
    "build_decision_matrix",
    "complete_reciprocal",
    "compute_ratio",
    "consistency",
    "derive_weights",
    "direction_of",
    "emit_report",
    "global_weights",
    "lambda_max",
    "load_config",
    "normalize",
    "principal_eigenvector",
    "random_index",
    "rank",
    "report_to_dict",
    "run_assessment",
    "saaty_intensity",
    "score",
    "top_risk_criteria",
    "worst_triad",
    "__version__",
]
