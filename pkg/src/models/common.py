"""Common data models and array helpers used across the workbench."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict


# Floor applied inside every logarithm of a probability.
PROBABILITY_FLOOR = 1e-12

# Tolerance for "sums to one" checks on probability rows.
SUM_TOLERANCE = 1e-9


class ArrayModel(BaseModel):
    """Base model for types that carry numpy arrays."""

    model_config = ConfigDict(arbitrary_types_allowed=True)


def as_float_matrix(value: Any, name: str) -> np.ndarray:
    """Coerce a value to a 2-D float64 array.

    Args:
        value: Array-like value
        name: Field name used in error messages

    Returns:
        2-D float64 array

    Raises:
        ValueError: If the value is not two-dimensional
    """
    array = np.asarray(value, dtype=np.float64)
    if array.ndim == 1 and array.size == 0:
        array = array.reshape(0, 0)
    if array.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got shape {array.shape}")
    return array


def as_float_vector(value: Any, name: str) -> np.ndarray:
    """Coerce a value to a 1-D float64 array."""
    array = np.asarray(value, dtype=np.float64)
    if array.ndim != 1:
        raise ValueError(f"{name} must be a vector, got shape {array.shape}")
    return array


def is_distribution_rows(rows: np.ndarray, tolerance: float = SUM_TOLERANCE) -> bool:
    """Check that every row is a probability distribution."""
    if rows.size == 0:
        return True
    if np.any(rows < 0.0) or np.any(rows > 1.0 + tolerance):
        return False
    return bool(np.all(np.abs(rows.sum(axis=-1) - 1.0) <= tolerance))
