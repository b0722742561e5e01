"""Seeded disjoint splits mirroring the DMP threat model."""

import logging

import numpy as np

from ..errors import InvalidInputError
from ..models.dataset import Dataset, SplitParts, SplitPlan


logger = logging.getLogger(__name__)


def split(data: Dataset, plan: SplitPlan) -> SplitParts:
    """Carve disjoint parts out of one dataset with a seeded shuffle.

    The adversary's known members are the first attack_members_known rows of
    D_tr; the remaining D_tr rows are the evaluation members, matched by an
    equally sized prefix of D_test as evaluation non-members.

    Args:
        data: Source dataset
        plan: Sizes and shuffle seed

    Returns:
        SplitParts with every named part

    Raises:
        InvalidInputError: If the plan needs more rows than available
    """
    if plan.total > data.n_samples:
        raise InvalidInputError(
            f"split plan needs {plan.total} rows but dataset has {data.n_samples} "
            f"(short by {plan.total - data.n_samples}): {plan.disjoint_sizes}"
        )
    if data.sample_ids is None:
        data = Dataset(
            features=data.features,
            labels=data.labels,
            n_classes=data.n_classes,
            feature_kind=data.feature_kind,
            sample_ids=np.arange(data.n_samples),
        )

    order = np.random.default_rng(plan.seed).permutation(data.n_samples)
    parts = {}
    offset = 0
    for name, size in plan.disjoint_sizes.items():
        parts[name] = data.subset(order[offset:offset + size])
        offset += size

    d_tr = parts["d_tr"]
    known = plan.attack_members_known
    n_eval = min(d_tr.n_samples - known, parts["d_test"].n_samples)

    logger.info(f"Split {data.n_samples} rows: {plan.disjoint_sizes}, eval pairs={n_eval}")
    return SplitParts(
        d_tr=d_tr,
        x_ref_pool=parts["x_ref_pool"],
        d_test=parts["d_test"],
        shadow=parts["shadow"],
        attack_members_known=d_tr.subset(np.arange(known)),
        attack_nonmembers_known=parts["attack_nonmembers_known"],
        eval_members=d_tr.subset(np.arange(known, known + n_eval)),
        eval_nonmembers=parts["d_test"].subset(np.arange(n_eval)),
    )
