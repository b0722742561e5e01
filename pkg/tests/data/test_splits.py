"""Unit tests for seeded splits."""

import numpy as np
import pytest

from src.data import split
from src.errors import InvalidInputError
from src.models.dataset import SplitPlan


PLAN = SplitPlan(seed=5, d_tr=80, x_ref_pool=60, d_test=40, shadow=40, attack_members_known=20,
                 attack_nonmembers_known=20)


class TestSplit:
    """Test cases for split."""

    def test_sizes(self, tiny_parts):
        """Test every part has its planned size."""
        assert tiny_parts.d_tr.n_samples == 80
        assert tiny_parts.x_ref_pool.n_samples == 60
        assert tiny_parts.d_test.n_samples == 40
        assert tiny_parts.shadow.n_samples == 40
        assert tiny_parts.attack_members_known.n_samples == 20
        assert tiny_parts.attack_nonmembers_known.n_samples == 20

    def test_disjoint_parts(self, tiny_parts):
        """Test the disjoint parts share no sample ids."""
        names = ["d_tr", "x_ref_pool", "d_test", "shadow", "attack_nonmembers_known"]
        seen = set()
        for name in names:
            ids = set(getattr(tiny_parts, name).sample_ids.tolist())
            assert not ids & seen, name
            seen |= ids

    def test_attack_sets(self, tiny_parts):
        """Test known and evaluation members come from D_tr without overlap."""
        d_tr = set(tiny_parts.d_tr.sample_ids.tolist())
        known = set(tiny_parts.attack_members_known.sample_ids.tolist())
        eval_members = set(tiny_parts.eval_members.sample_ids.tolist())
        eval_nonmembers = set(tiny_parts.eval_nonmembers.sample_ids.tolist())
        assert known <= d_tr and eval_members <= d_tr
        assert not known & eval_members
        assert eval_nonmembers <= set(tiny_parts.d_test.sample_ids.tolist())
        assert len(eval_members) == len(eval_nonmembers) == 40

    def test_deterministic(self, tiny_data, tiny_parts):
        """Test the same seed reproduces the split."""
        again = split(tiny_data, PLAN)
        assert np.array_equal(again.d_tr.sample_ids, tiny_parts.d_tr.sample_ids)

    def test_seed_changes_split(self, tiny_data, tiny_parts):
        """Test another seed shuffles differently."""
        other = split(tiny_data, PLAN.model_copy(update={"seed": 6}))
        assert not np.array_equal(other.d_tr.sample_ids, tiny_parts.d_tr.sample_ids)

    def test_shortfall(self, tiny_data):
        """Test a plan larger than the dataset raises."""
        plan = SplitPlan(d_tr=200, x_ref_pool=100, d_test=10, shadow=0, attack_members_known=0,
                         attack_nonmembers_known=0)
        with pytest.raises(InvalidInputError, match="short by"):
            split(tiny_data, plan)

    def test_known_members_bound(self):
        """Test known members cannot exceed half of D_tr."""
        with pytest.raises(ValueError):
            SplitPlan(d_tr=10, attack_members_known=6)
