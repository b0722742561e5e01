"""Posterior-ratio bound over the reference set."""

import logging
from typing import Optional

import numpy as np

from ..errors import InvalidInputError
from ..models.analysis import NeighborPair, RatioBound, RatioTrace
from ..models.dataset import Dataset
from ..models.network import Mlp
from ..nncore.layers import predict_proba
from ..nncore.losses import entropy, per_sample_cross_entropy, per_sample_kl
from .influence import DampedHessian, influence_scores


logger = logging.getLogger(__name__)


def ratio_trace(
    pair: NeighborPair,
    protected: Mlp,
    x_ref: Dataset,
    trace_temperature: float = 1.0,
    influence_damping: Optional[float] = None,
) -> RatioTrace:
    """Per-reference-row KL and CE differences between a neighbor pair.

    KL terms compare each unprotected model's prediction with the protected
    model's at trace_temperature; CE terms use the ground-truth labels at T=1.
    With influence_damping set and a removed sample, approx_influence is
    filled from the damped Hessian of the full-data model.

    Raises:
        InvalidInputError: On a dimension mismatch or non-positive temperature
    """
    if trace_temperature <= 0:
        raise InvalidInputError(f"temperature must be positive, got {trace_temperature}")
    for name, model in (("unprotected", pair.model), ("neighbor", pair.neighbor_model), ("protected", protected)):
        if model.input_dim != x_ref.n_features or model.n_classes != x_ref.n_classes:
            raise InvalidInputError(f"{name} model does not match the reference data dimensions")
    if x_ref.n_samples == 0:
        raise InvalidInputError("reference set is empty")

    up = predict_proba(pair.model, x_ref.features, trace_temperature)
    up_neighbor = predict_proba(pair.neighbor_model, x_ref.features, trace_temperature)
    student = predict_proba(protected, x_ref.features, trace_temperature)
    signed = per_sample_kl(up, student) - per_sample_kl(up_neighbor, student)

    ce = per_sample_cross_entropy(predict_proba(pair.model, x_ref.features), x_ref.labels)
    ce_neighbor = per_sample_cross_entropy(predict_proba(pair.neighbor_model, x_ref.features), x_ref.labels)

    approx = None
    if influence_damping is not None and pair.removed_sample is not None:
        solver = DampedHessian.from_model(pair.model, pair.d_tr, influence_damping)
        approx = influence_scores(pair.model, solver, pair.removed_sample, x_ref)

    return RatioTrace(
        delta_kl=np.abs(signed),
        signed_delta_kl=signed,
        delta_ce=np.abs(ce - ce_neighbor),
        entropy=np.maximum(np.atleast_1d(entropy(up)), 0.0),
        approx_influence=approx,
    )


def ratio_bound(
    pair: NeighborPair,
    protected: Mlp,
    x_ref: Dataset,
    temperature: float,
    trace_temperature: float = 1.0,
    influence_damping: Optional[float] = None,
) -> RatioBound:
    """Triangle-inequality bound (1/T) * sum |delta KL| on the log posterior ratio.

    The trace is computed once at trace_temperature, so the bound is exactly
    linear in 1/T. signed_value is |-(1/T) * sum signed delta KL| and never
    exceeds the bound.

    Args:
        pair: Neighbor models
        protected: Distilled model
        x_ref: Labeled reference rows
        temperature: T of the 1/T factor
        trace_temperature: Temperature of the predictions inside the KL terms
        influence_damping: Fill approx_influence when set

    Returns:
        RatioBound

    Raises:
        InvalidInputError: On a dimension mismatch or non-positive temperature
    """
    if temperature <= 0:
        raise InvalidInputError(f"temperature must be positive, got {temperature}")
    trace = ratio_trace(pair, protected, x_ref, trace_temperature, influence_damping)
    bound = float(trace.delta_kl.sum()) / temperature
    signed_value = abs(-float(trace.signed_delta_kl.sum()) / temperature)
    logger.info(f"Ratio bound at T={temperature}: bound={bound:.6g}, |signed sum|={signed_value:.6g}")
    return RatioBound(trace=trace, temperature=temperature, bound=bound, signed_value=signed_value)
