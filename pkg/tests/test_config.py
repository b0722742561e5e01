"""Unit tests for run configuration files and seed derivation."""

from pathlib import Path

import pytest

from config import COMPONENT_OFFSETS, SEED_OFFSETS, RunConfig, derive_seed, load_run_config, parse_run_config
from src.errors import ConfigError
from src.models.dmp import SelectionMode
from src.models.network import LossKind


CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


class TestParseRunConfig:
    """Test cases for parse_run_config."""

    def test_defaults(self):
        """Test an empty file gives the documented defaults."""
        config = parse_run_config("")
        assert config == RunConfig()
        assert config.cluster_noise == 0.15
        assert config.hidden_layers == [256]
        assert config.selection == SelectionMode.LOWEST_ENTROPY

    def test_values_and_comments(self):
        """Test key=value lines, comments and list values."""
        config = parse_run_config(
            "# run\n"
            "seed = 7\n"
            "\n"
            "hidden_layers = 32,16\n"
            "sweep_temperatures = 1, 2.5\n"
            "selection = entropy_bucket\n"
            "student_temperature = none\n"
        )
        assert config.seed == 7
        assert config.hidden_layers == [32, 16]
        assert config.sweep_temperatures == [1.0, 2.5]
        assert config.selection == SelectionMode.ENTROPY_BUCKET
        assert config.student_temperature is None

    def test_duplicate_key(self):
        """Test a repeated key names both lines."""
        with pytest.raises(ConfigError, match="line 2") as exc_info:
            parse_run_config("seed=1\nseed=2\n")
        assert exc_info.value.key == "seed"
        assert "line 1" in str(exc_info.value)

    def test_unknown_key(self):
        """Test an unknown key is refused."""
        with pytest.raises(ConfigError, match="unknown key") as exc_info:
            parse_run_config("seed=1\nlearning_rate=0.1\n")
        assert exc_info.value.key == "learning_rate"

    def test_missing_equals(self):
        """Test a line without '=' is malformed."""
        with pytest.raises(ConfigError, match="line 1"):
            parse_run_config("seed 1\n")

    def test_invalid_value(self):
        """Test a value failing validation names its key and line."""
        with pytest.raises(ConfigError, match="line 2") as exc_info:
            parse_run_config("seed=1\ncluster_noise=0.7\n")
        assert exc_info.value.key == "cluster_noise"

    def test_negative_seed(self):
        """Test seeds must be non-negative."""
        with pytest.raises(ConfigError):
            parse_run_config("seed=-1\n")

    def test_bad_reference_source(self):
        """Test only real and synthetic reference sources are accepted."""
        with pytest.raises(ConfigError):
            parse_run_config("reference_source=public\n")


class TestLoadRunConfig:
    """Test cases for load_run_config."""

    def test_none(self):
        """Test no path gives the defaults."""
        assert load_run_config(None) == RunConfig()

    def test_missing_file(self, tmp_path):
        """Test a missing file raises."""
        with pytest.raises(ConfigError, match="not found"):
            load_run_config(tmp_path / "absent.cfg")

    def test_file(self, cli_config):
        """Test a file on disk is parsed."""
        config = load_run_config(cli_config)
        assert config.seed == 11
        assert config.n_features == 64

    @pytest.mark.parametrize("name", ["run.cfg", "smoke.cfg"])
    def test_shipped_configs(self, name):
        """Test the configs under configs/ parse and only override the noise explicitly."""
        text = (CONFIG_DIR / name).read_text()
        config = load_run_config(CONFIG_DIR / name)
        overrides_noise = any(line.startswith("cluster_noise") for line in text.splitlines())
        assert overrides_noise == (config.cluster_noise != RunConfig().cluster_noise)


class TestDeriveSeed:
    """Test cases for derive_seed."""

    def test_offsets(self):
        """Test the seed is the global seed plus both offsets."""
        assert derive_seed(5, "train", "teacher") == 5 + SEED_OFFSETS["train"] + COMPONENT_OFFSETS["teacher"]

    def test_wraps(self):
        """Test seeds wrap modulo 2^64."""
        assert derive_seed(2**64 - 1, "split", "data") == SEED_OFFSETS["split"] - 1

    def test_distinct_components(self):
        """Test components of one subcommand get distinct seeds."""
        seeds = {derive_seed(0, "distill", c) for c in COMPONENT_OFFSETS}
        assert len(seeds) == len(COMPONENT_OFFSETS)

    def test_unknown(self):
        """Test unknown names raise."""
        with pytest.raises(ConfigError):
            derive_seed(0, "deploy", "data")
        with pytest.raises(ConfigError):
            derive_seed(0, "train", "noise")


class TestBuilders:
    """Test cases for the RunConfig builders."""

    def test_student_recipe(self):
        """Test the student trains on KL divergence."""
        recipe = RunConfig().student_train_config(3)
        assert recipe.loss == LossKind.KL_DIVERGENCE
        assert recipe.seed == 3

    def test_dmp_config_overrides(self):
        """Test keyword overrides replace single fields."""
        config = parse_run_config("teacher_temperature=2\nref_size=50\n")
        dmp = config.dmp_config(1, 2, ref_size=20)
        assert dmp.teacher_temperature == 2.0
        assert dmp.ref_size == 20
        assert dmp.teacher_train.seed == 1
        assert dmp.student_train.seed == 2

    def test_split_plan(self):
        """Test the split plan carries every size."""
        plan = RunConfig().split_plan(9)
        assert plan.seed == 9
        assert plan.total == 10000 + 20000 + 5000 + 10000 + 5000

    def test_student_architecture(self):
        """Test the student falls back to the teacher's hidden layers."""
        config = parse_run_config("hidden_layers=8\nstudent_hidden_layers=4\n")
        assert config.architecture(10, 3)[0].output_dim == 8
        assert config.student_architecture(10, 3)[0].output_dim == 4
        assert RunConfig().student_architecture(10, 3)[0].output_dim == 256
