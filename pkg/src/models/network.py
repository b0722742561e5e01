"""Network, training-recipe and prediction models."""

from enum import Enum
from typing import List, Sequence

import numpy as np
from pydantic import Field, field_validator, model_validator

from .common import ArrayModel, SUM_TOLERANCE, as_float_matrix, as_float_vector


class Activation(str, Enum):
    """Layer activation functions."""

    RELU = "relu"
    IDENTITY = "identity"


class OptimizerKind(str, Enum):
    """Optimizers supported by the trainer."""

    SGD = "sgd"
    ADAM = "adam"


class LossKind(str, Enum):
    """Training losses."""

    CROSS_ENTROPY = "cross_entropy"
    KL_DIVERGENCE = "kl_divergence"


class LayerSpec(ArrayModel):
    """One fully connected layer."""

    input_dim: int = Field(..., ge=1, description="Number of inputs")
    output_dim: int = Field(..., ge=1, description="Number of outputs")
    activation: Activation = Field(default=Activation.RELU, description="Activation applied after the affine map")

    def __str__(self) -> str:
        return f"{self.input_dim}->{self.output_dim} ({self.activation.value})"


class TrainConfig(ArrayModel):
    """Training recipe, including the regularizers used as baseline defenses."""

    epochs: int = Field(default=100, ge=0, description="Passes over the training data")
    batch_size: int = Field(default=128, ge=1, description="Minibatch size")
    learning_rate: float = Field(default=1e-3, gt=0, description="Step size")
    optimizer: OptimizerKind = Field(default=OptimizerKind.ADAM, description="Optimizer")
    beta1: float = Field(default=0.9, ge=0, lt=1, description="Adam first-moment decay")
    beta2: float = Field(default=0.999, ge=0, lt=1, description="Adam second-moment decay")
    eps: float = Field(default=1e-8, gt=0, description="Adam denominator guard")
    weight_decay: float = Field(default=0.0, ge=0, description="L2 penalty on weights (WD)")
    dropout_rate: float = Field(default=0.0, ge=0, lt=1, description="Hidden-unit dropout rate (DR)")
    label_smoothing: float = Field(default=0.0, ge=0, lt=1, description="Uniform label mass (LS)")
    confidence_penalty: float = Field(default=0.0, ge=0, description="Entropy bonus weight (CP)")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Seed for init, shuffling and dropout")
    loss: LossKind = Field(default=LossKind.CROSS_ENTROPY, description="Training loss")


class Mlp(ArrayModel):
    """Fully connected classifier with explicit float64 weights."""

    layers: List[LayerSpec] = Field(..., min_length=1, description="Ordered layer specifications")
    weights: List[np.ndarray] = Field(..., description="Per-layer (output_dim x input_dim) matrices")
    biases: List[np.ndarray] = Field(..., description="Per-layer bias vectors")

    @field_validator("weights", mode="before")
    @classmethod
    def coerce_weights(cls, v):
        return [as_float_matrix(w, "weights") for w in v]

    @field_validator("biases", mode="before")
    @classmethod
    def coerce_biases(cls, v):
        return [as_float_vector(b, "biases") for b in v]

    @model_validator(mode="after")
    def validate_structure(self):
        check_architecture(self.layers)
        if len(self.weights) != len(self.layers) or len(self.biases) != len(self.layers):
            raise ValueError("weights and biases must have one entry per layer")
        for i, (spec, w, b) in enumerate(zip(self.layers, self.weights, self.biases)):
            if w.shape != (spec.output_dim, spec.input_dim):
                raise ValueError(f"layer {i} weight shape {w.shape} does not match {spec}")
            if b.shape != (spec.output_dim,):
                raise ValueError(f"layer {i} bias shape {b.shape} does not match {spec}")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValueError(f"layer {i} has non-finite parameters")
        return self

    @classmethod
    def initialize(cls, layers: Sequence[LayerSpec], seed: int) -> "Mlp":
        """Create a network with seeded uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) init.

        Args:
            layers: Layer specifications
            seed: Initialization seed

        Returns:
            Freshly initialized Mlp
        """
        layers = list(layers)
        check_architecture(layers)
        rng = np.random.default_rng(seed)
        weights, biases = [], []
        for spec in layers:
            bound = 1.0 / np.sqrt(spec.input_dim)
            weights.append(rng.uniform(-bound, bound, size=(spec.output_dim, spec.input_dim)))
            biases.append(rng.uniform(-bound, bound, size=spec.output_dim))
        return cls(layers=layers, weights=weights, biases=biases)

    @property
    def input_dim(self) -> int:
        return self.layers[0].input_dim

    @property
    def n_classes(self) -> int:
        return self.layers[-1].output_dim

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    @property
    def hidden_widths(self) -> List[int]:
        return [spec.output_dim for spec in self.layers[:-1]]

    @property
    def n_parameters(self) -> int:
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases))

    def flat_parameters(self) -> np.ndarray:
        """Concatenate all parameters, layer by layer, weights row-major then bias."""
        parts = []
        for w, b in zip(self.weights, self.biases):
            parts.append(w.ravel())
            parts.append(b)
        return np.concatenate(parts)

    def with_flat_parameters(self, flat: np.ndarray) -> "Mlp":
        """Return a copy whose parameters are taken from a flat vector."""
        flat = np.asarray(flat, dtype=np.float64)
        if flat.shape != (self.n_parameters,):
            raise ValueError(f"expected {self.n_parameters} parameters, got {flat.shape}")
        weights, biases = [], []
        offset = 0
        for w, b in zip(self.weights, self.biases):
            weights.append(flat[offset:offset + w.size].reshape(w.shape).copy())
            offset += w.size
            biases.append(flat[offset:offset + b.size].copy())
            offset += b.size
        return Mlp(layers=list(self.layers), weights=weights, biases=biases)

    def clone(self) -> "Mlp":
        return Mlp(
            layers=list(self.layers),
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
        )

    def __str__(self) -> str:
        return "Mlp[" + ", ".join(str(spec) for spec in self.layers) + "]"


class Prediction(ArrayModel):
    """Temperature-scaled prediction for one sample."""

    probs: np.ndarray = Field(..., description="softmax(logits / temperature)")
    logits: np.ndarray = Field(..., description="Pre-softmax outputs")
    temperature: float = Field(default=1.0, gt=0, description="Softmax temperature")

    @model_validator(mode="after")
    def validate_probs(self):
        if self.probs.shape != self.logits.shape:
            raise ValueError("probs and logits must have the same length")
        if abs(float(self.probs.sum()) - 1.0) > SUM_TOLERANCE:
            raise ValueError("probs must sum to 1")
        return self


def check_architecture(layers: Sequence[LayerSpec]) -> None:
    """Validate layer chaining and the identity output layer.

    Raises:
        ValueError: If consecutive layers are incompatible or the last layer is not identity
    """
    if not layers:
        raise ValueError("architecture must contain at least one layer")
    for i in range(len(layers) - 1):
        if layers[i].output_dim != layers[i + 1].input_dim:
            raise ValueError(
                f"layer {i} output_dim {layers[i].output_dim} != layer {i + 1} input_dim {layers[i + 1].input_dim}"
            )
    if layers[-1].activation != Activation.IDENTITY:
        raise ValueError("final layer must use identity activation (logits)")


def build_architecture(n_features: int, hidden: Sequence[int], n_classes: int) -> List[LayerSpec]:
    """Build ReLU hidden layers followed by an identity output layer.

    Args:
        n_features: Input width
        hidden: Hidden layer widths (may be empty for a linear model)
        n_classes: Number of output classes

    Returns:
        List of LayerSpec
    """
    widths = [n_features, *hidden, n_classes]
    layers = []
    for i in range(len(widths) - 1):
        activation = Activation.IDENTITY if i == len(widths) - 2 else Activation.RELU
        layers.append(LayerSpec(input_dim=widths[i], output_dim=widths[i + 1], activation=activation))
    return layers

