"""Subcommand: defenses, the regularizer baselines next to the distillation defense."""

import logging
from typing import Dict

from ..dmp import generalization_report, run_pipeline, train_with_regularizer
from ..models.dmp import Regularizer
from ..models.report import ExperimentReport
from .common import RunContext, add_subcommand, reference_pool, run_attack_suite


logger = logging.getLogger(__name__)


def regularizer_strengths(ctx: RunContext) -> Dict[Regularizer, float]:
    config = ctx.config
    return {
        Regularizer.NONE: 0.0,
        Regularizer.WEIGHT_DECAY: config.defense_weight_decay,
        Regularizer.DROPOUT: config.defense_dropout_rate,
        Regularizer.LABEL_SMOOTHING: config.defense_label_smoothing,
        Regularizer.CONFIDENCE_PENALTY: config.defense_confidence_penalty,
    }


def baseline_id(kind: Regularizer, strength: float) -> str:
    return "baseline" if kind == Regularizer.NONE else f"{kind.value}_{strength:g}"


def compare_defenses(ctx: RunContext) -> ExperimentReport:
    """Train each baseline and a fresh defended pair, then attack them all.

    Rows are baseline, one per regularizer (e.g. wd_0.0005) and dmp_pipeline;
    the ids differ from the train/distill artifacts so merged reports keep
    both. Writes reports/defenses.csv.
    """
    config = ctx.config
    workspace = ctx.workspace
    parts = workspace.load_parts()
    d_tr, d_test = parts.d_tr, parts.d_test
    layers = config.architecture(d_tr.n_features, d_tr.n_classes)
    base = config.teacher_train_config(ctx.seed_for("teacher"))

    report = ExperimentReport()
    for kind, strength in regularizer_strengths(ctx).items():
        experiment_id = baseline_id(kind, strength)
        model = train_with_regularizer(d_tr, kind, strength, base, layers)
        report.extend(generalization_report(model, d_tr, d_test, experiment_id))
        run_attack_suite(ctx, model, parts, experiment_id, report)

    result = run_pipeline(
        d_tr,
        reference_pool(ctx, d_tr, parts.x_ref_pool),
        d_test,
        config.dmp_config(ctx.seed_for("teacher"), ctx.seed_for("student")),
        layers,
        config.student_architecture(d_tr.n_features, d_tr.n_classes),
    )
    report.extend(generalization_report(result.protected, d_tr, d_test, "dmp_pipeline"))
    run_attack_suite(ctx, result.protected, parts, "dmp_pipeline", report)

    workspace.save_report("defenses", report)
    return report


def register_tool(subparsers):
    """Register defenses."""
    add_subcommand(subparsers, "defenses", compare_defenses, "Compare regularizer baselines with the distillation defense")
