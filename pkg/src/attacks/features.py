"""Attack feature extraction F(x, y, theta)."""

from enum import Enum

import numpy as np

from ..errors import InvalidInputError
from ..models.attack import AttackFeatureKind
from ..models.dataset import Dataset
from ..models.network import Mlp
from ..nncore.backprop import per_sample_grad_norms
from ..nncore.layers import predict_proba
from ..nncore.losses import per_sample_cross_entropy


class NshMode(str, Enum):
    """Feature set of the NSH attack."""

    BLACKBOX = "blackbox"
    WHITEBOX = "whitebox"

    @property
    def feature_kind(self) -> AttackFeatureKind:
        if self == NshMode.BLACKBOX:
            return AttackFeatureKind.NSH_BLACKBOX
        return AttackFeatureKind.NSH_WHITEBOX


def _check_data(model: Mlp, data: Dataset) -> None:
    if data.n_features != model.input_dim:
        raise InvalidInputError(f"data width {data.n_features} != model input_dim {model.input_dim}")


def loss_features(model: Mlp, data: Dataset) -> np.ndarray:
    """Per-sample cross-entropy at T=1 as an n x 1 matrix."""
    _check_data(model, data)
    if data.n_samples == 0:
        return np.zeros((0, 1))
    probs = predict_proba(model, data.features)
    return per_sample_cross_entropy(probs, data.labels).reshape(-1, 1)


def correctness(model: Mlp, data: Dataset) -> np.ndarray:
    """Boolean argmax-correct flag per sample."""
    _check_data(model, data)
    if data.n_samples == 0:
        return np.zeros(0, dtype=bool)
    return np.argmax(predict_proba(model, data.features), axis=1) == data.labels


def sorted_prediction_features(model: Mlp, features: np.ndarray) -> np.ndarray:
    """Prediction vectors sorted in descending order (class order removed)."""
    features = np.atleast_2d(np.asarray(features, dtype=np.float64))
    if features.shape[0] == 0:
        return np.zeros((0, model.n_classes))
    return -np.sort(-predict_proba(model, features), axis=1)


def nsh_feature_matrix(model: Mlp, data: Dataset, mode: NshMode) -> np.ndarray:
    """NSH features for every row of a labeled dataset.

    Blackbox rows are [sorted predictions, CE loss, correctness bit]; whitebox
    rows append the per-layer gradient norms and the total norm.
    """
    _check_data(model, data)
    mode = NshMode(mode)
    n_columns = model.n_classes + 2 + (model.n_layers + 1 if mode == NshMode.WHITEBOX else 0)
    if data.n_samples == 0:
        return np.zeros((0, n_columns))

    probs = predict_proba(model, data.features)
    blocks = [
        -np.sort(-probs, axis=1),
        per_sample_cross_entropy(probs, data.labels).reshape(-1, 1),
        (np.argmax(probs, axis=1) == data.labels).astype(np.float64).reshape(-1, 1),
    ]
    if mode == NshMode.WHITEBOX:
        blocks.append(per_sample_grad_norms(model, data.features, data.labels))
    return np.hstack(blocks)


def nsh_features(target: Mlp, x: np.ndarray, y: int, mode: NshMode) -> np.ndarray:
    """NSH feature vector of one labeled sample."""
    sample = Dataset(
        features=np.asarray(x, dtype=np.float64).reshape(1, -1),
        labels=np.array([y]),
        n_classes=target.n_classes,
    )
    return nsh_feature_matrix(target, sample, mode)[0]
