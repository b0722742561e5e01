"""Learned attacks: shadow-model NN attack and NSH attacks."""

import logging
from typing import Optional

import numpy as np

from config import settings

from ..errors import InvalidInputError
from ..models.attack import AttackFeatureKind, AttackInstanceSet, AttackModel, AttackReport
from ..models.dataset import Dataset
from ..models.network import Mlp, TrainConfig, build_architecture
from ..nncore.training import train_from_scratch
from ..utils.stats import balanced_accuracy, balanced_sizes
from .features import NshMode, nsh_feature_matrix, sorted_prediction_features
from .threshold import gain_from_probabilities


logger = logging.getLogger(__name__)

DEFAULT_ATTACK_TRAIN = TrainConfig(epochs=60, batch_size=64, learning_rate=1e-3)


def fit_attack_model(
    train_set: AttackInstanceSet,
    config: Optional[TrainConfig] = None,
    hidden_units: Optional[int] = None,
) -> AttackModel:
    """Train a two-class network on standardized attack features.

    Args:
        train_set: Labeled attack instances
        config: Training recipe (defaults to DEFAULT_ATTACK_TRAIN)
        hidden_units: Hidden width (defaults to settings.attack_hidden_units)

    Returns:
        AttackModel holding the network and the fitted standardization

    Raises:
        InvalidInputError: If either class is missing from the training set
    """
    config = config or DEFAULT_ATTACK_TRAIN
    hidden_units = hidden_units or settings.attack_hidden_units
    if train_set.n_members == 0 or train_set.n_nonmembers == 0:
        raise InvalidInputError("attack training set needs members and non-members")

    mean = train_set.features.mean(axis=0)
    scale = train_set.features.std(axis=0)
    scale[scale < 1e-8] = 1.0
    data = Dataset(
        features=(train_set.features - mean) / scale,
        labels=train_set.is_member.astype(np.int64),
        n_classes=2,
    )
    layers = build_architecture(train_set.dim, [hidden_units], 2)
    network = train_from_scratch(layers, data, config).model
    return AttackModel(feature_kind=train_set.kind, network=network, feature_mean=mean, feature_scale=scale)


def evaluate_attack_model(
    model: AttackModel,
    member_features: np.ndarray,
    nonmember_features: np.ndarray,
    name: str,
) -> AttackReport:
    """Balanced accuracy (member iff h > 0.5) and gain on held-out features."""
    n = balanced_sizes(len(member_features), len(nonmember_features))
    if n == 0:
        raise InvalidInputError(f"{name} attack evaluation needs members and non-members")
    member_probs = model(member_features[:n])
    nonmember_probs = model(nonmember_features[:n])
    report = AttackReport(
        attack=name,
        accuracy=balanced_accuracy(member_probs > 0.5, nonmember_probs > 0.5),
        gain=gain_from_probabilities(member_probs, nonmember_probs),
        n_members=n,
        n_nonmembers=n,
    )
    logger.info(f"Attack {report}")
    return report


def _row_keys(data: Dataset, use_ids: bool) -> set:
    if use_ids:
        return set(data.sample_ids.tolist())
    return {row.tobytes() + bytes([0]) + int(label).to_bytes(8, "little")
            for row, label in zip(data.features, data.labels)}


def check_disjoint(first: Dataset, second: Dataset, first_name: str, second_name: str) -> None:
    """Fail if two datasets share a sample.

    Sample ids are compared when both sides carry them; otherwise rows
    (features and label) are compared exactly.

    Raises:
        InvalidInputError: If an overlap is found
    """
    use_ids = first.sample_ids is not None and second.sample_ids is not None
    overlap = _row_keys(first, use_ids) & _row_keys(second, use_ids)
    if overlap:
        raise InvalidInputError(f"{first_name} and {second_name} share {len(overlap)} samples")


def nn_attack(
    target: Mlp,
    shadow_data: Dataset,
    eval_members: Dataset,
    eval_nonmembers: Dataset,
    recipe: Optional[TrainConfig] = None,
    attack_config: Optional[TrainConfig] = None,
) -> AttackReport:
    """Shadow-model attack on sorted prediction vectors.

    The shadow model reuses the target's architecture and the given recipe,
    trains on the first half of shadow_data and treats the second half as
    non-members.

    Raises:
        InvalidInputError: If shadow_data has fewer than two batches of rows
    """
    recipe = recipe or TrainConfig()
    if shadow_data.n_samples < 2 * recipe.batch_size:
        raise InvalidInputError(
            f"shadow data has {shadow_data.n_samples} rows; need at least {2 * recipe.batch_size}"
        )
    half = shadow_data.n_samples // 2
    shadow_in = shadow_data.subset(np.arange(half))
    shadow_out = shadow_data.subset(np.arange(half, 2 * half))

    logger.info(f"Training shadow model on {half} rows")
    shadow = train_from_scratch(target.layers, shadow_in, recipe).model
    train_set = AttackInstanceSet.from_groups(
        AttackFeatureKind.SORTED_PROBS,
        sorted_prediction_features(shadow, shadow_in.features),
        sorted_prediction_features(shadow, shadow_out.features),
    )
    model = fit_attack_model(train_set, attack_config)
    return evaluate_attack_model(
        model,
        sorted_prediction_features(target, eval_members.features),
        sorted_prediction_features(target, eval_nonmembers.features),
        "nn",
    )


def nsh_attack(
    target: Mlp,
    known_members: Dataset,
    known_nonmembers: Dataset,
    eval_members: Dataset,
    eval_nonmembers: Dataset,
    mode: NshMode = NshMode.WHITEBOX,
    attack_config: Optional[TrainConfig] = None,
) -> AttackReport:
    """NSH attack trained on the adversary's known members and non-members.

    Raises:
        InvalidInputError: If a known set overlaps an evaluation set
    """
    mode = NshMode(mode)
    for known_name, known in (("known members", known_members), ("known non-members", known_nonmembers)):
        for eval_name, held in (("eval members", eval_members), ("eval non-members", eval_nonmembers)):
            check_disjoint(known, held, known_name, eval_name)

    train_set = AttackInstanceSet.from_groups(
        mode.feature_kind,
        nsh_feature_matrix(target, known_members, mode),
        nsh_feature_matrix(target, known_nonmembers, mode),
    )
    model = fit_attack_model(train_set, attack_config)
    return evaluate_attack_model(
        model,
        nsh_feature_matrix(target, eval_members, mode),
        nsh_feature_matrix(target, eval_nonmembers, mode),
        f"nsh_{mode.value}",
    )
