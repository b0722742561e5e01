"""Member/non-member distributions of gradient norms and losses."""

import logging
from pathlib import Path
from typing import Dict, List, Union

import numpy as np

from ..errors import InvalidInputError
from ..models.analysis import DistributionReport, HistogramRow
from ..models.dataset import Dataset
from ..models.network import Mlp
from ..nncore.backprop import per_sample_grad_norms
from ..nncore.layers import predict_proba
from ..nncore.losses import per_sample_cross_entropy
from ..utils.aggregation import write_csv


logger = logging.getLogger(__name__)

N_BINS = 24
HISTOGRAM_HEADER = ["bin_left", "bin_right", "member_frac", "nonmember_frac"]


def histogram(members: np.ndarray, nonmembers: np.ndarray, n_bins: int = N_BINS) -> List[HistogramRow]:
    """Fractions per bin over a range spanning both groups."""
    pooled = np.concatenate([members, nonmembers])
    low, high = float(pooled.min()), float(pooled.max())
    if low == high:
        low, high = low - 0.5, high + 0.5
    member_counts, edges = np.histogram(members, bins=n_bins, range=(low, high))
    nonmember_counts, _ = np.histogram(nonmembers, bins=n_bins, range=(low, high))
    return [
        HistogramRow(
            bin_left=float(edges[i]),
            bin_right=float(edges[i + 1]),
            member_frac=member_counts[i] / members.size,
            nonmember_frac=nonmember_counts[i] / nonmembers.size,
        )
        for i in range(n_bins)
    ]


def per_class_generalization(model: Mlp, members: Dataset, nonmembers: Dataset) -> Dict[int, float]:
    """Member accuracy minus non-member accuracy for classes present in both sets."""
    member_hits = np.argmax(predict_proba(model, members.features), axis=1) == members.labels
    nonmember_hits = np.argmax(predict_proba(model, nonmembers.features), axis=1) == nonmembers.labels
    gaps = {}
    for c in range(model.n_classes):
        in_members = members.labels == c
        in_nonmembers = nonmembers.labels == c
        if in_members.any() and in_nonmembers.any():
            gaps[c] = float(member_hits[in_members].mean() - nonmember_hits[in_nonmembers].mean())
    return gaps


def distribution_report(
    model: Mlp,
    members: Dataset,
    nonmembers: Dataset,
    n_bins: int = N_BINS,
) -> DistributionReport:
    """Histograms of total gradient norm and loss, medians, and per-class E_gen.

    Raises:
        InvalidInputError: If either set is empty
    """
    if members.n_samples == 0 or nonmembers.n_samples == 0:
        raise InvalidInputError("distribution report needs nonempty member and non-member sets")

    member_norms = per_sample_grad_norms(model, members.features, members.labels)[:, -1]
    nonmember_norms = per_sample_grad_norms(model, nonmembers.features, nonmembers.labels)[:, -1]
    member_losses = per_sample_cross_entropy(predict_proba(model, members.features), members.labels)
    nonmember_losses = per_sample_cross_entropy(predict_proba(model, nonmembers.features), nonmembers.labels)

    report = DistributionReport(
        grad_norm_histogram=histogram(member_norms, nonmember_norms, n_bins),
        loss_histogram=histogram(member_losses, nonmember_losses, n_bins),
        member_median_norm=float(np.median(member_norms)),
        nonmember_median_norm=float(np.median(nonmember_norms)),
        per_class_e_gen=per_class_generalization(model, members, nonmembers),
    )
    logger.info(
        f"Median gradient norm: members {report.member_median_norm:.4g}, "
        f"non-members {report.nonmember_median_norm:.4g}"
    )
    return report


def write_histogram_csv(rows: List[HistogramRow], path: Union[str, Path]) -> Path:
    return write_csv(
        path, HISTOGRAM_HEADER, ((r.bin_left, r.bin_right, r.member_frac, r.nonmember_frac) for r in rows)
    )


def write_e_gen_csv(report: DistributionReport, path: Union[str, Path]) -> Path:
    """Per-class E_gen with its empirical CDF position."""
    cdf = report.e_gen_cdf()
    ordered = sorted(report.per_class_e_gen.items(), key=lambda item: (item[1], item[0]))
    return write_csv(
        path, ["class", "e_gen", "cdf"], ((c, value, point[1]) for (c, value), point in zip(ordered, cdf))
    )
