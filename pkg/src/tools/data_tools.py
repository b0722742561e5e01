"""Subcommands: synth-data and split."""

import logging
from pathlib import Path

from ..data import split, synth_purchase
from ..models.dataset import SplitParts
from .common import RunContext, add_subcommand


logger = logging.getLogger(__name__)


def synth_data(ctx: RunContext) -> Path:
    """Generate the synthetic purchase-style dataset into data/dataset.txt."""
    config = ctx.config
    data = synth_purchase(
        n_samples=config.n_samples,
        n_features=config.n_features,
        n_classes=config.n_classes,
        cluster_noise=config.cluster_noise,
        seed=ctx.seed_for("data"),
    )
    path = ctx.workspace.save_dataset(data)
    logger.info(f"Wrote {data} to {path}")
    return path


def split_dataset(ctx: RunContext) -> SplitParts:
    """Partition data/dataset.txt into the disjoint parts under splits/.

    Raises:
        InvalidInputError: If the dataset is missing or smaller than the plan
    """
    data = ctx.workspace.load_dataset()
    parts = split(data, ctx.config.split_plan(ctx.seed_for("split")))
    for name, part in parts.named().items():
        ctx.workspace.save_split(name, part)
        logger.debug(f"split {name}: {part.n_samples} rows")
    logger.info(f"Wrote {len(parts.named())} split files under {ctx.workspace.root / 'splits'}")
    return parts


def register_tool(subparsers):
    """Register synth-data and split."""
    add_subcommand(subparsers, "synth-data", synth_data, "Generate the synthetic binary classification dataset")
    add_subcommand(subparsers, "split", split_dataset, "Split the dataset into training, reference, test and attack parts")
