"""Domain models for the DMP workbench."""

from .common import ArrayModel, PROBABILITY_FLOOR
from .network import Activation, LayerSpec, LossKind, Mlp, OptimizerKind, Prediction, TrainConfig, build_architecture
from .dataset import Dataset, FeatureKind, SoftLabelSet, SplitParts, SplitPlan
from .training import EvaluationResult, GradNorms, Gradients, TrainResult
from .report import ExperimentReport, ReportRow
from .dmp import DmpConfig, PipelineResult, ReferenceSelection, Regularizer, SelectionMode
from .attack import (
    AttackFeatureKind,
    AttackInstanceSet,
    AttackModel,
    AttackReport,
    DistanceTrace,
    ReferenceRiskReport,
)
from .analysis import CorrelationReport, DistributionReport, HistogramRow, NeighborPair, RatioBound, RatioTrace

__all__ = [
    "ArrayModel",
    "PROBABILITY_FLOOR",
    "Activation",
    "LayerSpec",
    "LossKind",
    "Mlp",
    "OptimizerKind",
    "Prediction",
    "TrainConfig",
    "build_architecture",
    "Dataset",
    "FeatureKind",
    "SoftLabelSet",
    "SplitParts",
    "SplitPlan",
    "EvaluationResult",
    "GradNorms",
    "Gradients",
    "TrainResult",
    "ExperimentReport",
    "ReportRow",
    "DmpConfig",
    "PipelineResult",
    "ReferenceSelection",
    "Regularizer",
    "SelectionMode",
    "AttackFeatureKind",
    "AttackInstanceSet",
    "AttackModel",
    "AttackReport",
    "DistanceTrace",
    "ReferenceRiskReport",
    "CorrelationReport",
    "DistributionReport",
    "HistogramRow",
    "NeighborPair",
    "RatioBound",
    "RatioTrace",
]
