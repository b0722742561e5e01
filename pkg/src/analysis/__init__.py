"""Numerical validation of the defense's theory."""

from .oracle import retrain_oracle
from .influence import DampedHessian, assemble_hessian, influence_approx, influence_scores
from .bound import ratio_bound, ratio_trace
from .correlation import correlation_report
from .distributions import distribution_report, histogram, write_e_gen_csv, write_histogram_csv

__all__ = [
    "retrain_oracle",
    "DampedHessian",
    "assemble_hessian",
    "influence_approx",
    "influence_scores",
    "ratio_bound",
    "ratio_trace",
    "correlation_report",
    "distribution_report",
    "histogram",
    "write_e_gen_csv",
    "write_histogram_csv",
]
