"""Correlations behind the reference-selection rule."""

import logging

from ..errors import InvalidInputError
from ..models.analysis import CorrelationReport, RatioTrace
from ..utils.stats import pearson, spearman


logger = logging.getLogger(__name__)


def correlation_report(trace: RatioTrace) -> CorrelationReport:
    """Pearson(delta KL, delta CE) and Spearman(entropy, delta KL).

    Raises:
        InvalidInputError: If the trace has fewer than 3 rows
        UndefinedCorrelationError: If a column is constant
    """
    if len(trace) < 3:
        raise InvalidInputError(f"correlation needs at least 3 rows, got {len(trace)}")
    report = CorrelationReport(
        pearson_dkl_dce=pearson(trace.delta_kl, trace.delta_ce),
        spearman_entropy_dkl=spearman(trace.entropy, trace.delta_kl),
    )
    logger.info(
        f"Correlations: pearson(dKL, dCE)={report.pearson_dkl_dce:.4f}, "
        f"spearman(H, dKL)={report.spearman_entropy_dkl:.4f}"
    )
    return report
