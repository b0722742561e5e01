"""Artifact layout and shared plumbing of the CLI subcommands."""

import argparse
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict

import numpy as np

from config import RunConfig, derive_seed

from ..attacks import NshMode, bl_attack, nn_attack, nsh_attack
from ..data.synth import perturb_synth_ref
from ..data.io import load_dataset, load_soft_labels, save_dataset, save_soft_labels
from ..errors import InvalidInputError
from ..models.dataset import Dataset, SoftLabelSet, SplitParts
from ..models.network import Mlp
from ..models.report import ExperimentReport
from ..nncore.io import load_model, save_model
from ..utils.aggregation import save_report, write_csv


logger = logging.getLogger(__name__)


class Workspace:
    """Files under one output directory.

    data/dataset.txt, splits/<part>.txt, models/<name>.txt,
    softlabels/x_ref.txt, reports/<name>.csv (metric rows) and
    tables/<name>.csv (sweep and analysis tables).
    """

    def __init__(self, root: Path):
        self.root = Path(root)

    @property
    def dataset_path(self) -> Path:
        return self.root / "data" / "dataset.txt"

    def split_path(self, name: str) -> Path:
        return self.root / "splits" / f"{name}.txt"

    def model_path(self, name: str) -> Path:
        return self.root / "models" / f"{name}.txt"

    @property
    def soft_labels_path(self) -> Path:
        return self.root / "softlabels" / "x_ref.txt"

    def report_path(self, name: str) -> Path:
        return self.root / "reports" / f"{name}.csv"

    def table_path(self, name: str) -> Path:
        return self.root / "tables" / f"{name}.csv"

    def attack_set_path(self, name: str) -> Path:
        return self.root / "attacksets" / f"{name}.txt"

    def _require(self, path: Path, producer: str) -> Path:
        if not path.is_file():
            raise InvalidInputError(f"missing artifact {path}; run '{producer}' first")
        return path

    def load_dataset(self) -> Dataset:
        return load_dataset(self._require(self.dataset_path, "synth-data"))

    def save_dataset(self, data: Dataset) -> Path:
        return save_dataset(data, self.dataset_path)

    def load_split(self, name: str) -> Dataset:
        producer = "distill" if name == "x_ref_selected" else "split"
        return load_dataset(self._require(self.split_path(name), producer))

    def load_parts(self) -> SplitParts:
        return SplitParts(**{name: self.load_split(name) for name in SplitParts.model_fields})

    def save_split(self, name: str, data: Dataset) -> Path:
        return save_dataset(data, self.split_path(name))

    def load_model(self, name: str) -> Mlp:
        producer = "train" if name == "theta_up" else "distill"
        return load_model(self._require(self.model_path(name), producer))

    def has_model(self, name: str) -> bool:
        return self.model_path(name).is_file()

    def save_model(self, name: str, model: Mlp) -> Path:
        return save_model(model, self.model_path(name))

    def load_soft_labels(self) -> SoftLabelSet:
        return load_soft_labels(self._require(self.soft_labels_path, "distill"))

    def save_soft_labels(self, soft: SoftLabelSet) -> Path:
        return save_soft_labels(soft, self.soft_labels_path)

    def save_report(self, name: str, report: ExperimentReport) -> Path:
        path = save_report(report, self.report_path(name))
        logger.info(f"Wrote {len(report)} metric rows to {path}")
        return path

    def write_table(self, name: str, header, rows) -> Path:
        return write_csv(self.table_path(name), header, rows)


@dataclass
class RunContext:
    """Configuration, workspace and seed base of one subcommand invocation."""

    config: RunConfig
    workspace: Workspace
    subcommand: str

    def seed_for(self, component: str) -> int:
        return derive_seed(self.config.seed, self.subcommand, component)


def model_names(workspace: Workspace) -> Dict[str, str]:
    """Experiment id per available model file."""
    names = {"no_defense": "theta_up"}
    if workspace.has_model("theta_p"):
        names["dmp"] = "theta_p"
    return names


def run_attack_suite(
    ctx: RunContext,
    model: Mlp,
    parts: SplitParts,
    experiment_id: str,
    report: ExperimentReport,
    include_nn: bool = True,
) -> None:
    """BL, NN and both NSH attacks on one model; metrics go into the report."""
    config = ctx.config
    attack_config = config.attack_train_config(ctx.seed_for("attack"))

    bl = bl_attack(model, parts.eval_members, parts.eval_nonmembers)
    report.add(experiment_id, "a_bl", bl.accuracy)
    if bl.zero_one_accuracy is not None:
        report.add(experiment_id, "a_bl01", bl.zero_one_accuracy)

    if include_nn:
        shadow_recipe = config.teacher_train_config(ctx.seed_for("shadow"))
        nn = nn_attack(model, parts.shadow, parts.eval_members, parts.eval_nonmembers, shadow_recipe, attack_config)
        report.add(experiment_id, "a_nn", nn.accuracy)

    for mode, metric in ((NshMode.BLACKBOX, "a_bb"), (NshMode.WHITEBOX, "a_wb")):
        nsh = nsh_attack(
            model,
            parts.attack_members_known,
            parts.attack_nonmembers_known,
            parts.eval_members,
            parts.eval_nonmembers,
            mode,
            attack_config,
        )
        report.add(experiment_id, metric, nsh.accuracy)


def reference_pool(ctx: RunContext, parts_d_tr: Dataset, pool: Dataset) -> np.ndarray:
    """Reference candidates: the real pool, or perturbed copies of training rows."""
    if ctx.config.reference_source == "synthetic":
        return perturb_synth_ref(
            parts_d_tr, ctx.config.synthetic_flip_probability, pool.n_samples, ctx.seed_for("synthetic_ref")
        )
    return pool.features_only()


def common_arguments() -> argparse.ArgumentParser:
    """--config/--out/--seed shared by every subcommand."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=Path, default=None, help="key=value run configuration file")
    parser.add_argument("--out", type=Path, default=None, help="Output directory (overrides output_dir)")
    parser.add_argument("--seed", type=int, default=None, help="Global seed (overrides seed)")
    return parser


def add_subcommand(
    subparsers,
    name: str,
    handler: Callable[[RunContext], None],
    help_text: str,
) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, parents=[common_arguments()], help=help_text, description=help_text)
    parser.set_defaults(handler=handler, subcommand=name)
    return parser
