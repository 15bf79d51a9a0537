"""Online fuzzy rule-based classifiers with passive-aggressive updates.

The package covers the full experimental loop: triangular/Don't-Care
membership functions, grid and DC-limited rule bases, binary online
learners (passive-aggressive and Widrow-Hoff delta), OvR/OvO multi-class
composition, cross-validated benchmarks, a rotating-Gaussian drift
simulator, and rule-level interpretability traces.
"""

__version__ = "0.1.0"

from .datastream import (
    CVResult,
    Dataset,
    FoldSplit,
    LabeledPattern,
    fetch_datasets,
    load_csv,
    minmax_normalize,
    run_cv,
    stratified_kfold,
    train_full,
)
from .driftsim import (
    DriftConfig,
    DriftReport,
    DriftState,
    rotate,
    rotating_gaussians_preset,
    run_drift_experiment,
    sample_batch,
)
from .errors import ConfigError, DataError, ResourceLimitError
from .learner import (
    OnlineBinaryClassifier,
    augment_bias,
    hinge_loss,
)
from .membership import (
    FuzzyPartition,
    dc_membership,
    partition_labels,
    triangular_membership,
)
from .multiclass import ModelSpec, MulticlassModel
from .rulebase import (
    Antecedent,
    RuleBase,
    dc_limited_count,
    generate_dc_limited,
    generate_full_grid,
)
from .tracker import (
    RuleRanking,
    RuleTrace,
    emit_trace,
    record_step,
    top_rules,
    trace_records,
)

__all__ = [
    "Antecedent",
    "CVResult",
    "ConfigError",
    "DataError",
    "Dataset",
    "DriftConfig",
    "DriftReport",
    "DriftState",
    "FoldSplit",
    "FuzzyPartition",
    "LabeledPattern",
    "ModelSpec",
    "MulticlassModel",
    "OnlineBinaryClassifier",
    "ResourceLimitError",
    "RuleBase",
    "RuleRanking",
    "RuleTrace",
    "augment_bias",
    "dc_limited_count",
    "dc_membership",
    "emit_trace",
    "fetch_datasets",
    "generate_dc_limited",
    "generate_full_grid",
    "hinge_loss",
    "load_csv",
    "minmax_normalize",
    "partition_labels",
    "record_step",
    "rotate",
    "rotating_gaussians_preset",
    "run_cv",
    "run_drift_experiment",
    "sample_batch",
    "stratified_kfold",
    "top_rules",
    "trace_records",
    "train_full",
    "triangular_membership",
]
