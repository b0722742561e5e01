"""Attack gain, threshold tuning and the bounded-loss attack."""

import logging
from typing import Callable, Optional, Tuple

import numpy as np

from ..errors import InvalidInputError
from ..models.attack import AttackFeatureKind, AttackModel, AttackReport
from ..models.common import PROBABILITY_FLOOR
from ..models.dataset import Dataset
from ..models.network import Mlp
from ..utils.stats import balanced_accuracy, balanced_sizes
from .features import correctness, loss_features


logger = logging.getLogger(__name__)

# Minimum rows per side: two for tuning, two for evaluation.
MIN_SAMPLES_PER_SIDE = 4


def gain_from_probabilities(member_probs: np.ndarray, nonmember_probs: np.ndarray) -> float:
    """Mean log h over members plus mean log(1 - h) over non-members.

    Probabilities are clamped to [1e-12, 1 - 1e-12], so the result is finite and <= 0.

    Raises:
        InvalidInputError: If either group is empty
    """
    member_probs = np.asarray(member_probs, dtype=np.float64).reshape(-1)
    nonmember_probs = np.asarray(nonmember_probs, dtype=np.float64).reshape(-1)
    if member_probs.size == 0 or nonmember_probs.size == 0:
        raise InvalidInputError("attack gain needs nonempty member and non-member sets")
    upper = 1.0 - PROBABILITY_FLOOR
    member_probs = np.clip(member_probs, PROBABILITY_FLOOR, upper)
    nonmember_probs = np.clip(nonmember_probs, PROBABILITY_FLOOR, upper)
    gain = float(np.mean(np.log(member_probs)) + np.mean(np.log1p(-nonmember_probs)))
    return min(gain, 0.0)


def attack_gain(
    h: Callable[[np.ndarray], np.ndarray],
    members: np.ndarray,
    nonmembers: np.ndarray,
) -> float:
    """Empirical gain of a membership classifier on member/non-member feature rows.

    Args:
        h: Maps a feature matrix to membership probabilities (an AttackModel works)
        members: Feature rows of members
        nonmembers: Feature rows of non-members

    Returns:
        Gain, always <= 0

    Raises:
        InvalidInputError: If either set is empty
    """
    members = np.atleast_2d(np.asarray(members, dtype=np.float64))
    nonmembers = np.atleast_2d(np.asarray(nonmembers, dtype=np.float64))
    if members.shape[0] == 0 or members.size == 0 or nonmembers.shape[0] == 0 or nonmembers.size == 0:
        raise InvalidInputError("attack gain needs nonempty member and non-member sets")
    return gain_from_probabilities(h(members), h(nonmembers))


def tune_threshold(member_scores: np.ndarray, nonmember_scores: np.ndarray) -> Tuple[float, float]:
    """Pick the threshold t maximizing balanced accuracy of "member iff score < t".

    Candidates are every midpoint of the sorted pooled scores plus the two
    trivial rules below the minimum and above the maximum. Ties resolve to
    the lowest threshold.

    Returns:
        (threshold, balanced accuracy on the given scores)

    Raises:
        InvalidInputError: If either group is empty
    """
    member_scores = np.sort(np.asarray(member_scores, dtype=np.float64).reshape(-1))
    nonmember_scores = np.sort(np.asarray(nonmember_scores, dtype=np.float64).reshape(-1))
    if member_scores.size == 0 or nonmember_scores.size == 0:
        raise InvalidInputError("threshold tuning needs both groups")

    pooled = np.unique(np.concatenate([member_scores, nonmember_scores]))
    candidates = np.concatenate([pooled[:1], (pooled[:-1] + pooled[1:]) / 2.0, pooled[-1:] + 1.0])
    tpr = np.searchsorted(member_scores, candidates, side="left") / member_scores.size
    fpr = np.searchsorted(nonmember_scores, candidates, side="left") / nonmember_scores.size
    accuracies = 0.5 * (tpr + 1.0 - fpr)
    best = int(np.argmax(accuracies))
    if best == 0 or best == candidates.size - 1:
        logger.warning("Tuned threshold is a trivial rule; scores carry no membership signal on the tune split")
    return float(candidates[best]), float(accuracies[best])


def _halves(n: int) -> Tuple[slice, slice]:
    half = n // 2
    return slice(0, half), slice(half, n)


def threshold_attack(
    member_scores: np.ndarray,
    nonmember_scores: np.ndarray,
    name: str,
    member_rule: Optional[np.ndarray] = None,
    nonmember_rule: Optional[np.ndarray] = None,
    kind: AttackFeatureKind = AttackFeatureKind.LOSS,
) -> AttackReport:
    """Tune a score threshold on the first half of each group and evaluate on the rest.

    The tuned threshold becomes an AttackModel over the scalar feature kind;
    its hits on the held half give accuracy and gain.

    An optional fixed rule (boolean "member" predictions) competes with the
    threshold on the tune half; the threshold wins ties. The rule's own eval
    accuracy is reported as zero_one_accuracy.

    Raises:
        InvalidInputError: If fewer than 4 samples per side are available
    """
    member_scores = np.asarray(member_scores, dtype=np.float64).reshape(-1)
    nonmember_scores = np.asarray(nonmember_scores, dtype=np.float64).reshape(-1)
    if min(member_scores.size, nonmember_scores.size) < MIN_SAMPLES_PER_SIDE:
        raise InvalidInputError(f"{name} attack needs at least {MIN_SAMPLES_PER_SIDE} samples per side")
    n = balanced_sizes(member_scores.size, nonmember_scores.size)
    tune, held = _halves(n)

    threshold, tune_accuracy = tune_threshold(member_scores[tune], nonmember_scores[tune])
    attack_model = AttackModel(feature_kind=kind, threshold=threshold)
    member_hits = attack_model(member_scores[held, None]) > 0.5
    nonmember_hits = attack_model(nonmember_scores[held, None]) > 0.5
    threshold_used: Optional[float] = threshold

    zero_one_accuracy = None
    if member_rule is not None and nonmember_rule is not None:
        member_rule = np.asarray(member_rule, dtype=bool)[:n]
        nonmember_rule = np.asarray(nonmember_rule, dtype=bool)[:n]
        rule_tune = balanced_accuracy(member_rule[tune], nonmember_rule[tune])
        zero_one_accuracy = balanced_accuracy(member_rule[held], nonmember_rule[held])
        if rule_tune > tune_accuracy:
            member_hits, nonmember_hits = member_rule[held], nonmember_rule[held]
            threshold_used = None

    accuracy = balanced_accuracy(member_hits, nonmember_hits)
    report = AttackReport(
        attack=name,
        accuracy=accuracy,
        gain=gain_from_probabilities(member_hits.astype(np.float64), nonmember_hits.astype(np.float64)),
        threshold_used=threshold_used,
        zero_one_accuracy=zero_one_accuracy,
        n_members=int(member_hits.size),
        n_nonmembers=int(nonmember_hits.size),
    )
    logger.info(f"Attack {report}")
    return report


def bl_attack(target: Mlp, members: Dataset, nonmembers: Dataset) -> AttackReport:
    """Bounded-loss attack: threshold the target's per-sample loss.

    The tuned loss threshold competes with the 0-1 loss rule (member iff the
    target classifies the sample correctly).

    Args:
        target: Attacked model
        members: Labeled members
        nonmembers: Labeled non-members

    Returns:
        AttackReport named "bl"

    Raises:
        InvalidInputError: If fewer than 4 samples per side are supplied
    """
    if min(members.n_samples, nonmembers.n_samples) < MIN_SAMPLES_PER_SIDE:
        raise InvalidInputError(f"bl attack needs at least {MIN_SAMPLES_PER_SIDE} samples per side")
    return threshold_attack(
        loss_features(target, members)[:, 0],
        loss_features(target, nonmembers)[:, 0],
        "bl",
        correctness(target, members),
        correctness(target, nonmembers),
    )
