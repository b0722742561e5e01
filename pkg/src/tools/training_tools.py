"""Subcommands: train and distill."""

import logging

from ..dmp import distill, generalization_report, make_soft_labels, select_reference, train_unprotected
from ..models.network import Mlp
from ..models.report import ExperimentReport
from .common import RunContext, add_subcommand, reference_pool


logger = logging.getLogger(__name__)


def train_model(ctx: RunContext) -> Mlp:
    """Train the unprotected model theta_up on splits/d_tr.txt.

    Writes models/theta_up.txt and reports/train.csv (a_train, a_test, e_gen).
    """
    config = ctx.config
    workspace = ctx.workspace
    d_tr = workspace.load_split("d_tr")
    d_test = workspace.load_split("d_test")

    report = ExperimentReport()
    model = train_unprotected(
        d_tr,
        config.teacher_train_config(ctx.seed_for("teacher")),
        config.architecture(d_tr.n_features, d_tr.n_classes),
        d_test,
        report,
    )
    workspace.save_model("theta_up", model)
    workspace.save_report("train", report)
    return model


def distill_model(ctx: RunContext) -> Mlp:
    """Select reference rows with theta_up, soft-label them and distill theta_p.

    Writes softlabels/x_ref.txt, models/theta_p.txt, reports/distill.csv and,
    for real reference data, splits/x_ref_selected.txt with the selected rows
    and their ground-truth labels.
    """
    config = ctx.config
    workspace = ctx.workspace
    teacher = workspace.load_model("theta_up")
    d_tr = workspace.load_split("d_tr")
    pool = workspace.load_split("x_ref_pool")
    d_test = workspace.load_split("d_test")

    cfg = config.dmp_config(ctx.seed_for("teacher"), ctx.seed_for("student"))
    selection = select_reference(reference_pool(ctx, d_tr, pool), teacher, cfg)
    soft = make_soft_labels(teacher, selection.features, cfg.teacher_temperature)
    student = distill(config.student_architecture(d_tr.n_features, d_tr.n_classes), soft, cfg)

    workspace.save_soft_labels(soft)
    selected_path = workspace.split_path("x_ref_selected")
    if config.reference_source == "real":
        workspace.save_split("x_ref_selected", pool.subset(selection.indices))
    elif selected_path.is_file():
        # Synthetic rows have no ground truth; drop a stale selection from a real run.
        selected_path.unlink()
    workspace.save_model("theta_p", student)

    report = generalization_report(student, d_tr, d_test, "dmp")
    report.add("dmp", "mean_ref_entropy", selection.mean_entropy)
    workspace.save_report("distill", report)
    return student


def register_tool(subparsers):
    """Register train and distill."""
    add_subcommand(subparsers, "train", train_model, "Train the unprotected model on the private training split")
    add_subcommand(subparsers, "distill", distill_model, "Distill the protected model on selected reference data")
