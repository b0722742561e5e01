"""Damped explicit-Hessian influence approximation."""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from config import settings

from ..errors import InvalidInputError, NumericalError
from ..models.dataset import Dataset
from ..models.network import Mlp
from ..nncore.backprop import flat_loss_gradient


logger = logging.getLogger(__name__)

HESSIAN_STEP = 1e-4
DEFAULT_DAMPING = 1e-3


def _check_size(model: Mlp, max_parameters: Optional[int]) -> None:
    cap = max_parameters if max_parameters is not None else settings.max_influence_parameters
    if model.n_parameters > cap:
        raise InvalidInputError(
            f"model has {model.n_parameters} parameters; the explicit Hessian path allows {cap}. "
            "Shrink the model (fewer or narrower hidden layers)."
        )


def assemble_hessian(
    model: Mlp,
    d_tr: Dataset,
    step: float = HESSIAN_STEP,
    max_parameters: Optional[int] = None,
) -> Tuple[np.ndarray, float]:
    """Hessian of the mean training cross-entropy by central differences of gradients.

    Args:
        model: Trained model
        d_tr: Training set the loss is averaged over
        step: Parameter perturbation
        max_parameters: Parameter cap (defaults to settings.max_influence_parameters)

    Returns:
        (symmetrized Hessian, max |H - H^T| before symmetrization)

    Raises:
        InvalidInputError: If the model exceeds the parameter cap or d_tr is empty
    """
    _check_size(model, max_parameters)
    if d_tr.n_samples == 0:
        raise InvalidInputError("training set is empty")

    flat = model.flat_parameters()
    p = flat.size
    hessian = np.zeros((p, p))
    for j in range(p):
        original = flat[j]
        flat[j] = original + step
        plus = flat_loss_gradient(model.with_flat_parameters(flat), d_tr.features, d_tr.labels)
        flat[j] = original - step
        minus = flat_loss_gradient(model.with_flat_parameters(flat), d_tr.features, d_tr.labels)
        flat[j] = original
        hessian[:, j] = (plus - minus) / (2.0 * step)

    asymmetry = float(np.max(np.abs(hessian - hessian.T)))
    logger.debug(f"Assembled {p}x{p} Hessian, asymmetry {asymmetry:.3e}")
    return 0.5 * (hessian + hessian.T), asymmetry


class DampedHessian:
    """Cholesky factorization of H + damping * I."""

    def __init__(self, hessian: np.ndarray, damping: float = DEFAULT_DAMPING):
        if damping <= 0:
            raise InvalidInputError(f"damping must be positive, got {damping}")
        damped = hessian + damping * np.eye(hessian.shape[0])
        try:
            self._factor = linalg.cho_factor(damped)
        except linalg.LinAlgError:
            min_eigenvalue = float(linalg.eigvalsh(damped)[0])
            raise NumericalError(
                f"damped Hessian is not positive definite (minimum eigenvalue {min_eigenvalue:.3e}); "
                "increase the damping"
            )
        self.damping = damping

    @classmethod
    def from_model(
        cls,
        model: Mlp,
        d_tr: Dataset,
        damping: float = DEFAULT_DAMPING,
        max_parameters: Optional[int] = None,
    ) -> "DampedHessian":
        if damping <= 0:
            raise InvalidInputError(f"damping must be positive, got {damping}")
        hessian, _ = assemble_hessian(model, d_tr, max_parameters=max_parameters)
        return cls(hessian, damping)

    def solve(self, vector: np.ndarray) -> np.ndarray:
        return linalg.cho_solve(self._factor, vector)


def sample_gradient(model: Mlp, x: np.ndarray, y: int) -> np.ndarray:
    return flat_loss_gradient(model, np.asarray(x, dtype=np.float64).reshape(1, -1), np.array([y]))


def influence_scores(
    model: Mlp,
    solver: DampedHessian,
    z: Tuple[np.ndarray, int],
    queries: Dataset,
) -> np.ndarray:
    """|grad L(query) . (H + damping I)^-1 . grad L(z)| for every query row."""
    direction = solver.solve(sample_gradient(model, *z))
    scores = np.zeros(queries.n_samples)
    for i in range(queries.n_samples):
        scores[i] = abs(float(sample_gradient(model, queries.features[i], int(queries.labels[i])) @ direction))
    return scores


def influence_approx(
    model: Mlp,
    d_tr: Dataset,
    z: Tuple[np.ndarray, int],
    z_test: Tuple[np.ndarray, int],
    damping: float = DEFAULT_DAMPING,
    max_parameters: Optional[int] = None,
) -> float:
    """First-order estimate of how much removing z changes the loss on z_test.

    The 1/n factor of the leave-one-out expansion is omitted; values are
    compared by correlation only.

    Args:
        model: Trained model
        d_tr: Its training set
        z: Removed sample (x, y)
        z_test: Query sample (x, y)
        damping: Added to the Hessian diagonal
        max_parameters: Parameter cap

    Returns:
        Non-negative influence magnitude

    Raises:
        InvalidInputError: Over the parameter cap or on non-positive damping
        NumericalError: If the damped Hessian is not positive definite
    """
    solver = DampedHessian.from_model(model, d_tr, damping, max_parameters)
    query = Dataset(
        features=np.asarray(z_test[0], dtype=np.float64).reshape(1, -1),
        labels=np.array([z_test[1]]),
        n_classes=model.n_classes,
    )
    return float(influence_scores(model, solver, z, query)[0])
