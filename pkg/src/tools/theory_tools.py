"""Subcommands checking the defense's theory: influence-check, ratio-bound and distributions."""

import logging
from typing import Tuple

import numpy as np

from ..analysis import (
    DampedHessian,
    assemble_hessian,
    correlation_report,
    distribution_report,
    influence_scores,
    ratio_bound,
    retrain_oracle,
    write_e_gen_csv,
    write_histogram_csv,
)
from ..data import synth_purchase
from ..dmp import distill, make_soft_labels
from ..errors import InvalidInputError, UndefinedCorrelationError
from ..models.analysis import NeighborPair
from ..models.dataset import Dataset
from ..models.dmp import DmpConfig, SelectionMode
from ..models.network import LossKind, TrainConfig, build_architecture
from ..models.report import ExperimentReport
from ..nncore.layers import predict_proba
from ..nncore.losses import per_sample_cross_entropy
from ..utils.stats import pearson
from .common import RunContext, add_subcommand, model_names


logger = logging.getLogger(__name__)

TRACE_HEADER = ["delta_kl", "signed_delta_kl", "delta_ce", "entropy", "approx_influence"]


def analysis_task(ctx: RunContext) -> Tuple[Dataset, Dataset, TrainConfig]:
    """Small synthetic task: (training rows, held-out query rows, full-batch recipe).

    The last influence_queries rows are the queries; the recipe's weight decay
    matches the damping the influence solver adds.
    """
    config = ctx.config
    if config.influence_queries >= config.analysis_n_samples - 1:
        raise InvalidInputError(
            f"influence_queries={config.influence_queries} leaves too few of {config.analysis_n_samples} rows to train on"
        )
    data = synth_purchase(
        n_samples=config.analysis_n_samples,
        n_features=config.analysis_n_features,
        n_classes=config.analysis_n_classes,
        cluster_noise=config.analysis_cluster_noise,
        seed=ctx.seed_for("data"),
    )
    n_train = config.analysis_n_samples - config.influence_queries
    d_tr = data.subset(np.arange(n_train))
    queries = data.subset(np.arange(n_train, data.n_samples))
    recipe = TrainConfig(
        epochs=config.analysis_epochs,
        batch_size=n_train,
        learning_rate=config.analysis_learning_rate,
        weight_decay=config.analysis_weight_decay,
        seed=ctx.seed_for("oracle"),
    )
    return d_tr, queries, recipe


def neighbor_pair(ctx: RunContext) -> Tuple[NeighborPair, Dataset, TrainConfig]:
    config = ctx.config
    d_tr, queries, recipe = analysis_task(ctx)
    if config.removed_index >= d_tr.n_samples:
        raise InvalidInputError(f"removed_index {config.removed_index} out of range for {d_tr.n_samples} rows")
    layers = build_architecture(d_tr.n_features, config.analysis_hidden_layers, d_tr.n_classes)
    return retrain_oracle(d_tr, config.removed_index, recipe, layers), queries, recipe


def influence_check(ctx: RunContext) -> ExperimentReport:
    """Compare influence estimates with actual leave-one-out loss changes on the queries.

    Writes tables/influence_check.csv (query, predicted, actual) and
    reports/influence.csv (pearson_influence, hessian_asymmetry, n_parameters).
    """
    config = ctx.config
    pair, queries, _ = neighbor_pair(ctx)
    hessian, asymmetry = assemble_hessian(pair.model, pair.d_tr)
    solver = DampedHessian(hessian, config.influence_damping)
    predicted = influence_scores(pair.model, solver, pair.removed_sample, queries)

    loss = per_sample_cross_entropy(predict_proba(pair.model, queries.features), queries.labels)
    neighbor_loss = per_sample_cross_entropy(predict_proba(pair.neighbor_model, queries.features), queries.labels)
    actual = np.abs(neighbor_loss - loss)

    report = ExperimentReport()
    try:
        correlation = pearson(predicted, actual)
        report.add("influence", "pearson_influence", correlation)
        logger.info(f"Influence vs retraining: pearson {correlation:.4f}")
    except UndefinedCorrelationError as e:
        logger.warning(f"Influence correlation undefined: {e}")
    report.add("influence", "hessian_asymmetry", asymmetry)
    report.add("influence", "n_parameters", pair.model.n_parameters)

    ctx.workspace.write_table(
        "influence_check", ["query", "predicted", "actual"], zip(range(queries.n_samples), predicted, actual)
    )
    ctx.workspace.save_report("influence", report)
    return report


def ratio_bound_check(ctx: RunContext) -> ExperimentReport:
    """Bound the log posterior ratio of a neighbor pair over a distilled reference set.

    The query rows serve as the reference set. Writes tables/ratio_trace.csv,
    tables/ratio_bound.csv (one row per sweep temperature) and
    reports/ratio_bound.csv.
    """
    config = ctx.config
    pair, x_ref, recipe = neighbor_pair(ctx)
    cfg = DmpConfig(
        teacher_temperature=config.teacher_temperature,
        student_temperature=config.student_temperature,
        ref_size=x_ref.n_samples,
        selection=SelectionMode.ALL,
        teacher_train=recipe,
        student_train=TrainConfig(
            **{**recipe.model_dump(), "loss": LossKind.KL_DIVERGENCE, "weight_decay": 0.0, "batch_size": x_ref.n_samples}
        ),
    )
    soft = make_soft_labels(pair.model, x_ref.features, cfg.teacher_temperature)
    protected = distill(pair.model.layers, soft, cfg)

    result = ratio_bound(pair, protected, x_ref, cfg.teacher_temperature, influence_damping=config.influence_damping)
    report = ExperimentReport()
    report.add("ratio_bound", "ratio_bound", result.bound)
    report.add("ratio_bound", "signed_ratio", result.signed_value)
    try:
        correlations = correlation_report(result.trace)
        report.add("ratio_bound", "pearson_dkl_dce", correlations.pearson_dkl_dce)
        report.add("ratio_bound", "spearman_entropy_dkl", correlations.spearman_entropy_dkl)
    except UndefinedCorrelationError as e:
        logger.warning(f"Ratio trace correlation undefined: {e}")

    trace = result.trace
    approx = trace.approx_influence if trace.approx_influence is not None else [None] * len(trace)
    ctx.workspace.write_table(
        "ratio_trace", TRACE_HEADER, zip(trace.delta_kl, trace.signed_delta_kl, trace.delta_ce, trace.entropy, approx)
    )
    rows = []
    for temperature in config.sweep_temperatures:
        point = ratio_bound(pair, protected, x_ref, temperature)
        rows.append((temperature, point.bound, point.signed_value))
    ctx.workspace.write_table("ratio_bound", ["temperature", "bound", "signed_value"], rows)
    ctx.workspace.save_report("ratio_bound", report)
    return report


def distributions(ctx: RunContext) -> ExperimentReport:
    """Gradient-norm and loss histograms of members vs non-members per model.

    Writes tables/<model>_grad_norms.csv, tables/<model>_losses.csv,
    tables/<model>_e_gen.csv and reports/distributions.csv.
    """
    workspace = ctx.workspace
    members = workspace.load_split("eval_members")
    nonmembers = workspace.load_split("eval_nonmembers")
    report = ExperimentReport()
    for experiment_id, name in model_names(workspace).items():
        result = distribution_report(workspace.load_model(name), members, nonmembers)
        write_histogram_csv(result.grad_norm_histogram, workspace.table_path(f"{name}_grad_norms"))
        write_histogram_csv(result.loss_histogram, workspace.table_path(f"{name}_losses"))
        write_e_gen_csv(result, workspace.table_path(f"{name}_e_gen"))
        report.add(experiment_id, "median_norm_members", result.member_median_norm)
        report.add(experiment_id, "median_norm_nonmembers", result.nonmember_median_norm)
    workspace.save_report("distributions", report)
    return report


def register_tool(subparsers):
    """Register influence-check, ratio-bound and distributions."""
    add_subcommand(subparsers, "influence-check", influence_check, "Compare influence estimates with leave-one-out retraining")
    add_subcommand(subparsers, "ratio-bound", ratio_bound_check, "Bound the posterior ratio over a distilled reference set")
    add_subcommand(subparsers, "distributions", distributions, "Write member and non-member gradient-norm and loss histograms")
