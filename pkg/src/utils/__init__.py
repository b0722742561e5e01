"""Utility functions for the DMP workbench."""

from .distance import hamming_distances, is_binary, nearest_hamming
from .stats import balanced_accuracy, balanced_sizes, pearson, spearman
from .aggregation import (
    format_table,
    load_report,
    loads_report,
    dumps_report,
    merge_reports,
    save_report,
    write_csv,
)

__all__ = [
    "hamming_distances",
    "is_binary",
    "nearest_hamming",
    "balanced_accuracy",
    "balanced_sizes",
    "pearson",
    "spearman",
    "format_table",
    "load_report",
    "loads_report",
    "dumps_report",
    "merge_reports",
    "save_report",
    "write_csv",
]
