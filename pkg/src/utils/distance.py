"""Hamming nearest-neighbour search over binary feature rows."""

import logging
from typing import Tuple

import numpy as np

from ..errors import InvalidInputError


logger = logging.getLogger(__name__)

DEFAULT_CHUNK_ROWS = 1024


def is_binary(matrix: np.ndarray) -> bool:
    return bool(np.all((matrix == 0.0) | (matrix == 1.0)))


def hamming_distances(targets: np.ndarray, refs: np.ndarray) -> np.ndarray:
    """Pairwise Hamming distances between two binary matrices.

    Uses d(a, b) = |a| + |b| - 2 a.b, exact for 0/1 entries.
    """
    targets = np.atleast_2d(np.asarray(targets, dtype=np.float64))
    refs = np.atleast_2d(np.asarray(refs, dtype=np.float64))
    ones_t = targets.sum(axis=1)[:, None]
    ones_r = refs.sum(axis=1)[None, :]
    return ones_t + ones_r - 2.0 * (targets @ refs.T)


def nearest_hamming(
    targets: np.ndarray,
    refs: np.ndarray,
    chunk_rows: int = DEFAULT_CHUNK_ROWS,
) -> Tuple[np.ndarray, np.ndarray]:
    """Distance to and index of the nearest reference row for every target row.

    Targets are processed in chunks so memory stays bounded by
    chunk_rows x len(refs). Ties resolve to the lowest reference index.

    Args:
        targets: Binary target rows
        refs: Binary reference rows
        chunk_rows: Target rows per chunk

    Returns:
        (min_distance, nearest_index) arrays, one entry per target row

    Raises:
        InvalidInputError: On non-binary input, empty references or width mismatch
    """
    targets = np.atleast_2d(np.asarray(targets, dtype=np.float64))
    refs = np.atleast_2d(np.asarray(refs, dtype=np.float64))
    if refs.shape[0] == 0:
        raise InvalidInputError("reference set is empty")
    if targets.shape[1] != refs.shape[1]:
        raise InvalidInputError(f"feature width mismatch: {targets.shape[1]} vs {refs.shape[1]}")
    if not (is_binary(targets) and is_binary(refs)):
        raise InvalidInputError("Hamming search needs binary features")
    if chunk_rows < 1:
        raise InvalidInputError("chunk_rows must be positive")

    n = targets.shape[0]
    min_distance = np.zeros(n)
    nearest = np.zeros(n, dtype=np.int64)
    for start in range(0, n, chunk_rows):
        block = hamming_distances(targets[start:start + chunk_rows], refs)
        index = np.argmin(block, axis=1)
        nearest[start:start + chunk_rows] = index
        min_distance[start:start + chunk_rows] = np.rint(block[np.arange(block.shape[0]), index])
    logger.debug(f"Nearest-reference search: {n} targets against {refs.shape[0]} references")
    return min_distance, nearest
