"""Synthetic data, seeded splits and dataset files."""

from .synth import perturb_synth_ref, synth_purchase
from .splits import split
from .io import (
    dumps_dataset,
    dumps_soft_labels,
    load_dataset,
    load_soft_labels,
    loads_dataset,
    loads_soft_labels,
    save_dataset,
    save_soft_labels,
)

__all__ = [
    "perturb_synth_ref",
    "synth_purchase",
    "split",
    "dumps_dataset",
    "dumps_soft_labels",
    "load_dataset",
    "load_soft_labels",
    "loads_dataset",
    "loads_soft_labels",
    "save_dataset",
    "save_soft_labels",
]
