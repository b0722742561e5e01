"""Subcommands: attack, ref-risk and adaptive."""

import logging

from ..attacks import adaptive_distance_attack, loss_features, matched_reference_split, ref_data_mia, save_attack_set
from ..dmp import distill, make_soft_labels
from ..errors import InvalidInputError, UndefinedCorrelationError
from ..models.attack import AttackFeatureKind, AttackInstanceSet
from ..models.report import ExperimentReport
from ..nncore.training import train_from_scratch
from ..utils.stats import pearson
from .common import RunContext, add_subcommand, model_names, run_attack_suite


logger = logging.getLogger(__name__)

ADAPTIVE_TRACE_HEADER = ["min_distance", "nearest_ref_index", "nearest_ref_entropy", "target_entropy", "is_member"]


def attack_models(ctx: RunContext) -> ExperimentReport:
    """Run the attack suite on theta_up and, when present, theta_p.

    Writes reports/attack.csv and the loss attack set of every model under
    attacksets/.
    """
    workspace = ctx.workspace
    parts = workspace.load_parts()
    report = ExperimentReport()
    for experiment_id, name in model_names(workspace).items():
        model = workspace.load_model(name)
        logger.info(f"Attacking {name} ({experiment_id})")
        run_attack_suite(ctx, model, parts, experiment_id, report)
        instances = AttackInstanceSet.from_groups(
            AttackFeatureKind.LOSS,
            loss_features(model, parts.eval_members),
            loss_features(model, parts.eval_nonmembers),
        )
        save_attack_set(instances, workspace.attack_set_path(f"{name}_loss"))
    workspace.save_report("attack", report)
    return report


def reference_risk(ctx: RunContext) -> ExperimentReport:
    """Attack a distilled model with its reference rows as members.

    The lowest-entropy band of splits/x_ref_pool.txt under theta_up is split
    in two: a fresh student is distilled on one half with the run's DMP
    recipe and the other half serves as non-members. A control model trained
    with cross-entropy on the labeled half is attacked the same way
    (experiment ref_control).

    Raises:
        InvalidInputError: For synthetic reference data, which has no ground-truth labels
    """
    config = ctx.config
    workspace = ctx.workspace
    if config.reference_source != "real":
        raise InvalidInputError("ref-risk needs real reference data (reference_source=real)")
    teacher = workspace.load_model("theta_up")
    pool = workspace.load_split("x_ref_pool")

    size = min(config.ref_size, pool.n_samples // 2)
    members, holdout = matched_reference_split(
        teacher, pool, size, ctx.seed_for("reference"), config.teacher_temperature
    )
    cfg = config.dmp_config(ctx.seed_for("teacher"), ctx.seed_for("student"), ref_size=size)
    soft = make_soft_labels(teacher, members.features, cfg.teacher_temperature)
    student = distill(config.student_architecture(pool.n_features, pool.n_classes), soft, cfg)
    control = train_from_scratch(
        config.architecture(pool.n_features, pool.n_classes), members, cfg.teacher_train
    ).model

    attack_config = config.attack_train_config(ctx.seed_for("attack"))
    report = ExperimentReport()
    for experiment_id, model in (("dmp", student), ("ref_control", control)):
        risk = ref_data_mia(model, members, holdout, attack_config)
        report.add(experiment_id, "a_ref_bl", risk.reports["bl"].accuracy)
        report.add(experiment_id, "a_ref_bb", risk.reports["nsh_blackbox"].accuracy)
        report.add(experiment_id, "a_ref_wb", risk.reports["nsh_whitebox"].accuracy)
    workspace.save_report("ref_risk", report)
    return report


def adaptive_attack(ctx: RunContext) -> ExperimentReport:
    """Distance-to-reference attack on theta_p plus its per-target trace.

    Writes reports/adaptive.csv and tables/adaptive_trace.csv.
    """
    workspace = ctx.workspace
    protected = workspace.load_model("theta_p")
    soft = workspace.load_soft_labels()
    members = workspace.load_split("eval_members")
    nonmembers = workspace.load_split("eval_nonmembers")

    attack, trace = adaptive_distance_attack(protected, soft.inputs, members, nonmembers)
    report = ExperimentReport()
    report.add("dmp", "a_adaptive", attack.accuracy)
    try:
        report.add("dmp", "pearson_distance_entropy", pearson(trace.min_distance, trace.nearest_ref_entropy))
    except UndefinedCorrelationError as e:
        logger.warning(f"Distance/entropy correlation undefined: {e}")
    workspace.write_table("adaptive_trace", ADAPTIVE_TRACE_HEADER, trace.rows())
    workspace.save_report("adaptive", report)
    return report


def register_tool(subparsers):
    """Register attack, ref-risk and adaptive."""
    add_subcommand(subparsers, "attack", attack_models, "Run the membership inference attacks on the trained models")
    add_subcommand(subparsers, "ref-risk", reference_risk, "Attack the protected model on its reference data")
    add_subcommand(subparsers, "adaptive", adaptive_attack, "Run the distance-to-reference adaptive attack")
