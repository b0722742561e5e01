"""Subcommand: report."""

import logging

from ..errors import InvalidInputError
from ..models.report import ExperimentReport
from ..utils.aggregation import format_table, merge_reports
from .common import RunContext, add_subcommand


logger = logging.getLogger(__name__)

SUMMARY_NAME = "summary"


def summarize(ctx: RunContext) -> ExperimentReport:
    """Merge reports/*.csv (sorted by name) into reports/summary.csv and print the comparison table.

    Raises:
        InvalidInputError: If no metric reports exist yet
    """
    workspace = ctx.workspace
    summary_path = workspace.report_path(SUMMARY_NAME)
    paths = sorted(p for p in summary_path.parent.glob("*.csv") if p.name != summary_path.name)
    if not paths:
        raise InvalidInputError(f"no metric reports under {summary_path.parent}; run a subcommand first")
    merged = merge_reports(paths)
    workspace.save_report(SUMMARY_NAME, merged)
    print(format_table(merged), end="")
    return merged


def register_tool(subparsers):
    """Register report."""
    add_subcommand(subparsers, "report", summarize, "Merge metric reports and print the defense comparison table")
