"""Correlation and accuracy helpers."""

import logging

import numpy as np
from scipy import stats

from ..errors import InvalidInputError, UndefinedCorrelationError


logger = logging.getLogger(__name__)


def _check_pair(x: np.ndarray, y: np.ndarray, min_length: int) -> tuple:
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if x.shape != y.shape:
        raise InvalidInputError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < min_length:
        raise InvalidInputError(f"need at least {min_length} points, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InvalidInputError("correlation inputs must be finite")
    return x, y


def pearson(x: np.ndarray, y: np.ndarray, min_length: int = 3) -> float:
    """Pearson sample correlation.

    Raises:
        InvalidInputError: On mismatched or too-short inputs
        UndefinedCorrelationError: If either column has zero variance
    """
    x, y = _check_pair(x, y, min_length)
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise UndefinedCorrelationError("correlation undefined for a constant column")
    return float(np.clip(stats.pearsonr(x, y)[0], -1.0, 1.0))


def spearman(x: np.ndarray, y: np.ndarray, min_length: int = 3) -> float:
    """Spearman rank correlation.

    Raises:
        InvalidInputError: On mismatched or too-short inputs
        UndefinedCorrelationError: If either column has zero variance
    """
    x, y = _check_pair(x, y, min_length)
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise UndefinedCorrelationError("correlation undefined for a constant column")
    return float(np.clip(stats.spearmanr(x, y)[0], -1.0, 1.0))


def balanced_accuracy(member_hits: np.ndarray, nonmember_hits: np.ndarray) -> float:
    """Mean of member recall and non-member recall.

    Args:
        member_hits: Boolean "predicted member" per member row
        nonmember_hits: Boolean "predicted member" per non-member row
    """
    member_hits = np.asarray(member_hits, dtype=bool)
    nonmember_hits = np.asarray(nonmember_hits, dtype=bool)
    if member_hits.size == 0 or nonmember_hits.size == 0:
        raise InvalidInputError("both groups must be nonempty")
    return 0.5 * (float(member_hits.mean()) + 1.0 - float(nonmember_hits.mean()))


def balanced_sizes(n_members: int, n_nonmembers: int) -> int:
    """Common group size used when truncating to a balanced evaluation."""
    n = min(n_members, n_nonmembers)
    if n_members != n_nonmembers:
        logger.warning(f"Unbalanced groups ({n_members} vs {n_nonmembers}); truncating both to {n}")
    return n
