"""Membership inference attack suite."""

from .features import (
    NshMode,
    correctness,
    loss_features,
    nsh_feature_matrix,
    nsh_features,
    sorted_prediction_features,
)
from .threshold import attack_gain, bl_attack, gain_from_probabilities, threshold_attack, tune_threshold
from .learned import check_disjoint, evaluate_attack_model, fit_attack_model, nn_attack, nsh_attack
from .reference import matched_reference_split, ref_data_mia
from .adaptive import adaptive_distance_attack
from .io import dumps_attack_set, load_attack_set, loads_attack_set, save_attack_set

__all__ = [
    "NshMode",
    "correctness",
    "loss_features",
    "nsh_feature_matrix",
    "nsh_features",
    "sorted_prediction_features",
    "attack_gain",
    "bl_attack",
    "gain_from_probabilities",
    "threshold_attack",
    "tune_threshold",
    "check_disjoint",
    "evaluate_attack_model",
    "fit_attack_model",
    "nn_attack",
    "nsh_attack",
    "matched_reference_split",
    "ref_data_mia",
    "adaptive_distance_attack",
    "dumps_attack_set",
    "load_attack_set",
    "loads_attack_set",
    "save_attack_set",
]
