"""Subcommands sweeping one defense knob: entropy-sweep, temp-sweep and refsize-sweep."""

import logging
from typing import List

from ..attacks import NshMode, bl_attack, nsh_attack
from ..dmp import distill, generalization_report, make_soft_labels, select_reference
from ..models.dataset import SplitParts
from ..models.dmp import DmpConfig, SelectionMode
from ..models.network import Mlp
from .common import RunContext, add_subcommand, reference_pool


logger = logging.getLogger(__name__)


class SweepRun:
    """Inputs shared by every point of a sweep, loaded once."""

    def __init__(self, ctx: RunContext):
        self.ctx = ctx
        self.teacher = ctx.workspace.load_model("theta_up")
        self.parts = ctx.workspace.load_parts()
        self.candidates = reference_pool(ctx, self.parts.d_tr, self.parts.x_ref_pool)

    def config(self, **overrides) -> DmpConfig:
        return self.ctx.config.dmp_config(self.ctx.seed_for("teacher"), self.ctx.seed_for("student"), **overrides)

    def distill(self, cfg: DmpConfig):
        """Select, soft-label and distill one student; returns (student, selection, report)."""
        d_tr = self.parts.d_tr
        selection = select_reference(self.candidates, self.teacher, cfg)
        soft = make_soft_labels(self.teacher, selection.features, cfg.teacher_temperature)
        layers = self.ctx.config.student_architecture(d_tr.n_features, d_tr.n_classes)
        student = distill(layers, soft, cfg)
        report = generalization_report(student, d_tr, self.parts.d_test, "sweep")
        return student, selection, report

    def bl_accuracy(self, student: Mlp) -> float:
        return bl_attack(student, self.parts.eval_members, self.parts.eval_nonmembers).accuracy

    def wb_accuracy(self, student: Mlp) -> float:
        parts: SplitParts = self.parts
        return nsh_attack(
            student,
            parts.attack_members_known,
            parts.attack_nonmembers_known,
            parts.eval_members,
            parts.eval_nonmembers,
            NshMode.WHITEBOX,
            self.ctx.config.attack_train_config(self.ctx.seed_for("attack")),
        ).accuracy


def entropy_sweep(ctx: RunContext) -> List[tuple]:
    """One student per entropy bucket of the reference pool.

    Writes tables/entropy_sweep.csv (bucket, mean_entropy, a_test, a_bl).
    """
    run = SweepRun(ctx)
    rows = []
    for bucket in range(ctx.config.n_buckets):
        cfg = run.config(selection=SelectionMode.ENTROPY_BUCKET, bucket_index=bucket)
        student, selection, report = run.distill(cfg)
        rows.append((bucket, selection.mean_entropy, report.get("sweep", "a_test"), run.bl_accuracy(student)))
        logger.info(f"Bucket {bucket}: mean entropy {selection.mean_entropy:.4f}, A_test {rows[-1][2]:.4f}")
    ctx.workspace.write_table("entropy_sweep", ["bucket", "mean_entropy", "a_test", "a_bl"], rows)
    return rows


def temperature_sweep(ctx: RunContext) -> List[tuple]:
    """One student per softmax temperature.

    Writes tables/temp_sweep.csv (temperature, e_gen, a_test, a_bl, a_wb).
    """
    run = SweepRun(ctx)
    rows = []
    for temperature in ctx.config.sweep_temperatures:
        student, _, report = run.distill(run.config(teacher_temperature=temperature))
        rows.append(
            (
                temperature,
                report.get("sweep", "e_gen"),
                report.get("sweep", "a_test"),
                run.bl_accuracy(student),
                run.wb_accuracy(student),
            )
        )
        logger.info(f"T={temperature:g}: E_gen {rows[-1][1]:.4f}")
    ctx.workspace.write_table("temp_sweep", ["temperature", "e_gen", "a_test", "a_bl", "a_wb"], rows)
    return rows


def ref_size_sweep(ctx: RunContext) -> List[tuple]:
    """One student per reference-set size.

    Writes tables/refsize_sweep.csv (ref_size, a_test, e_gen, a_bl).
    """
    run = SweepRun(ctx)
    rows = []
    for ref_size in ctx.config.sweep_ref_sizes:
        student, _, report = run.distill(run.config(ref_size=ref_size))
        rows.append((ref_size, report.get("sweep", "a_test"), report.get("sweep", "e_gen"), run.bl_accuracy(student)))
        logger.info(f"|X_ref|={ref_size}: A_test {rows[-1][1]:.4f}")
    ctx.workspace.write_table("refsize_sweep", ["ref_size", "a_test", "e_gen", "a_bl"], rows)
    return rows


def register_tool(subparsers):
    """Register the three sweeps."""
    add_subcommand(subparsers, "entropy-sweep", entropy_sweep, "Distill one student per reference entropy bucket")
    add_subcommand(subparsers, "temp-sweep", temperature_sweep, "Distill one student per softmax temperature")
    add_subcommand(subparsers, "refsize-sweep", ref_size_sweep, "Distill one student per reference-set size")
