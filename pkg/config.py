"""Configuration settings and run configuration files for the DMP workbench."""

from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.errors import ConfigError
from src.models.dataset import SplitPlan
from src.models.dmp import DmpConfig, SelectionMode
from src.models.network import LayerSpec, LossKind, OptimizerKind, TrainConfig, build_architecture


class Settings(BaseSettings):
    """Process settings loaded from environment variables (prefix DMP_)."""

    # Logging Configuration
    log_level: str = "INFO"
    log_json: bool = True

    # Artifacts
    output_dir: str = "runs/default"

    # Numerics
    max_influence_parameters: int = 5000
    attack_hidden_units: int = 64

    model_config = SettingsConfigDict(
        env_prefix="DMP_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


# Per-subcommand seed offsets. Stable: changing one changes every artifact of that subcommand.
SEED_OFFSETS: Dict[str, int] = {
    "synth-data": 0,
    "split": 1000,
    "train": 2000,
    "distill": 3000,
    "attack": 4000,
    "ref-risk": 5000,
    "adaptive": 6000,
    "entropy-sweep": 7000,
    "temp-sweep": 8000,
    "refsize-sweep": 9000,
    "influence-check": 10000,
    "ratio-bound": 11000,
    "defenses": 12000,
    "distributions": 13000,
    "report": 14000,
}

# Offsets of the random components inside one subcommand.
COMPONENT_OFFSETS: Dict[str, int] = {
    "data": 0,
    "split": 1,
    "teacher": 2,
    "student": 3,
    "shadow": 4,
    "attack": 5,
    "synthetic_ref": 6,
    "oracle": 7,
    "reference": 8,
}


def derive_seed(global_seed: int, subcommand: str, component: str) -> int:
    """Seed of one random component: global seed plus the documented offsets, modulo 2^64.

    Raises:
        ConfigError: On an unknown subcommand or component
    """
    if subcommand not in SEED_OFFSETS:
        raise ConfigError(f"no seed offset for subcommand '{subcommand}'", subcommand)
    if component not in COMPONENT_OFFSETS:
        raise ConfigError(f"no seed offset for component '{component}'", component)
    return (global_seed + SEED_OFFSETS[subcommand] + COMPONENT_OFFSETS[component]) % 2**64


def _int_list(value) -> List[int]:
    if isinstance(value, str):
        return [int(part) for part in value.split(",") if part.strip()]
    return list(value)


def _float_list(value) -> List[float]:
    if isinstance(value, str):
        return [float(part) for part in value.split(",") if part.strip()]
    return list(value)


class RunConfig(BaseModel):
    """Every knob of an experiment run; one key=value line per field."""

    model_config = ConfigDict(extra="forbid")

    # Run
    seed: int = Field(default=0, ge=0, lt=2**64, description="Global seed")
    output_dir: Optional[str] = Field(None, description="Artifact directory (defaults to settings.output_dir)")

    # Synthetic dataset
    n_samples: int = Field(default=50000, ge=1)
    n_features: int = Field(default=600, ge=1)
    n_classes: int = Field(default=100, ge=1)
    cluster_noise: float = Field(default=0.15, ge=0, lt=0.5)

    # Split sizes
    d_tr: int = Field(default=10000, ge=1)
    x_ref_pool: int = Field(default=20000, ge=0)
    d_test: int = Field(default=5000, ge=1)
    shadow: int = Field(default=10000, ge=0)
    attack_members_known: int = Field(default=5000, ge=0)
    attack_nonmembers_known: int = Field(default=5000, ge=0)

    # Architecture (hidden widths, comma separated)
    hidden_layers: List[int] = Field(default_factory=lambda: [256])
    student_hidden_layers: Optional[List[int]] = Field(None, description="Defaults to hidden_layers")

    # Teacher recipe
    teacher_epochs: int = Field(default=30, ge=0)
    teacher_batch_size: int = Field(default=128, ge=1)
    teacher_learning_rate: float = Field(default=1e-3, gt=0)
    teacher_optimizer: OptimizerKind = OptimizerKind.ADAM
    teacher_weight_decay: float = Field(default=0.0, ge=0)
    teacher_dropout_rate: float = Field(default=0.0, ge=0, lt=1)
    teacher_label_smoothing: float = Field(default=0.0, ge=0, lt=1)
    teacher_confidence_penalty: float = Field(default=0.0, ge=0)

    # Student recipe
    student_epochs: int = Field(default=30, ge=0)
    student_batch_size: int = Field(default=128, ge=1)
    student_learning_rate: float = Field(default=1e-3, gt=0)
    student_optimizer: OptimizerKind = OptimizerKind.ADAM

    # Attack networks
    attack_epochs: int = Field(default=60, ge=0)
    attack_batch_size: int = Field(default=64, ge=1)
    attack_learning_rate: float = Field(default=1e-3, gt=0)

    # Defense
    teacher_temperature: float = Field(default=1.0, gt=0)
    student_temperature: Optional[float] = Field(None, gt=0)
    ref_size: int = Field(default=10000, ge=1)
    selection: SelectionMode = SelectionMode.LOWEST_ENTROPY
    bucket_index: int = Field(default=0, ge=0)
    n_buckets: int = Field(default=5, ge=1)
    reference_source: str = Field(default="real", pattern="^(real|synthetic)$")
    synthetic_flip_probability: float = Field(default=0.1, gt=0, lt=0.5)

    # Sweeps
    sweep_temperatures: List[float] = Field(default_factory=lambda: [2.0, 4.0, 6.0])
    sweep_ref_sizes: List[int] = Field(default_factory=lambda: [2000, 4000, 6000, 8000, 10000])

    # Baseline regularizers
    defense_weight_decay: float = Field(default=5e-4, ge=0)
    defense_dropout_rate: float = Field(default=0.5, ge=0, lt=1)
    defense_label_smoothing: float = Field(default=0.1, ge=0, lt=1)
    defense_confidence_penalty: float = Field(default=0.1, ge=0)

    # Small task for the theory checks
    analysis_n_samples: int = Field(default=400, ge=8)
    analysis_n_features: int = Field(default=20, ge=1)
    analysis_n_classes: int = Field(default=4, ge=2)
    analysis_cluster_noise: float = Field(default=0.3, ge=0, lt=0.5)
    analysis_hidden_layers: List[int] = Field(default_factory=list)
    analysis_epochs: int = Field(default=100, ge=0)
    analysis_learning_rate: float = Field(default=1e-2, gt=0)
    analysis_weight_decay: float = Field(default=1e-3, ge=0)
    influence_queries: int = Field(default=20, ge=3)
    influence_damping: float = Field(default=1e-3, gt=0)
    removed_index: int = Field(default=0, ge=0)

    @field_validator("hidden_layers", "analysis_hidden_layers", "sweep_ref_sizes", mode="before")
    @classmethod
    def parse_int_list(cls, v):
        return _int_list(v)

    @field_validator("student_hidden_layers", mode="before")
    @classmethod
    def parse_optional_int_list(cls, v):
        if v is None or (isinstance(v, str) and v.strip().lower() in ("", "none")):
            return None
        return _int_list(v)

    @field_validator("sweep_temperatures", mode="before")
    @classmethod
    def parse_float_list(cls, v):
        return _float_list(v)

    @field_validator("student_temperature", "output_dir", mode="before")
    @classmethod
    def parse_optional(cls, v):
        if isinstance(v, str) and v.strip().lower() in ("", "none"):
            return None
        return v

    @property
    def resolved_output_dir(self) -> Path:
        return Path(self.output_dir or settings.output_dir)

    def teacher_train_config(self, seed: int) -> TrainConfig:
        return TrainConfig(
            epochs=self.teacher_epochs,
            batch_size=self.teacher_batch_size,
            learning_rate=self.teacher_learning_rate,
            optimizer=self.teacher_optimizer,
            weight_decay=self.teacher_weight_decay,
            dropout_rate=self.teacher_dropout_rate,
            label_smoothing=self.teacher_label_smoothing,
            confidence_penalty=self.teacher_confidence_penalty,
            seed=seed,
        )

    def student_train_config(self, seed: int) -> TrainConfig:
        return TrainConfig(
            epochs=self.student_epochs,
            batch_size=self.student_batch_size,
            learning_rate=self.student_learning_rate,
            optimizer=self.student_optimizer,
            seed=seed,
            loss=LossKind.KL_DIVERGENCE,
        )

    def attack_train_config(self, seed: int) -> TrainConfig:
        return TrainConfig(
            epochs=self.attack_epochs,
            batch_size=self.attack_batch_size,
            learning_rate=self.attack_learning_rate,
            seed=seed,
        )

    def dmp_config(self, teacher_seed: int, student_seed: int, **overrides) -> DmpConfig:
        """DmpConfig for this run; keyword overrides replace single fields (sweeps)."""
        values = dict(
            teacher_temperature=self.teacher_temperature,
            student_temperature=self.student_temperature,
            ref_size=self.ref_size,
            selection=self.selection,
            bucket_index=self.bucket_index,
            n_buckets=self.n_buckets,
            teacher_train=self.teacher_train_config(teacher_seed),
            student_train=self.student_train_config(student_seed),
        )
        values.update(overrides)
        return DmpConfig(**values)

    def split_plan(self, seed: int) -> SplitPlan:
        return SplitPlan(
            seed=seed,
            d_tr=self.d_tr,
            x_ref_pool=self.x_ref_pool,
            d_test=self.d_test,
            shadow=self.shadow,
            attack_members_known=self.attack_members_known,
            attack_nonmembers_known=self.attack_nonmembers_known,
        )

    def architecture(self, n_features: int, n_classes: int) -> List[LayerSpec]:
        return build_architecture(n_features, self.hidden_layers, n_classes)

    def student_architecture(self, n_features: int, n_classes: int) -> List[LayerSpec]:
        hidden = self.student_hidden_layers if self.student_hidden_layers is not None else self.hidden_layers
        return build_architecture(n_features, hidden, n_classes)


def parse_run_config(text: str) -> RunConfig:
    """Parse key=value lines; blank lines and '#' comments are ignored.

    Raises:
        ConfigError: On a malformed line, a duplicate or unknown key, or an invalid value
    """
    values: Dict[str, str] = {}
    lines: Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}: expected key=value, found '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {number}: empty key")
        if key in values:
            raise ConfigError(f"line {number}: duplicate key '{key}' (first set on line {lines[key]})", key)
        if key not in RunConfig.model_fields:
            raise ConfigError(f"line {number}: unknown key '{key}'", key)
        values[key] = value
        lines[key] = number

    try:
        return RunConfig(**values)
    except ValidationError as e:
        error = e.errors()[0]
        key = str(error["loc"][0]) if error["loc"] else None
        where = f"line {lines[key]}: " if key in lines else ""
        raise ConfigError(f"{where}invalid value for '{key}': {error['msg']}", key)


def load_run_config(path: Optional[Union[str, Path]]) -> RunConfig:
    """Load a run configuration file; None gives all defaults.

    Raises:
        ConfigError: If the file is missing or invalid
    """
    if path is None:
        return RunConfig()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_run_config(path.read_text(encoding="utf-8"))
