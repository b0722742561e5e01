"""Pytest fixtures and shared test utilities."""

import numpy as np
import pytest

from src.analysis import retrain_oracle
from src.data import split, synth_purchase
from src.models.dataset import Dataset, FeatureKind, SplitPlan
from src.models.dmp import DmpConfig
from src.models.network import LossKind, Mlp, OptimizerKind, TrainConfig, build_architecture
from src.nncore.training import train_from_scratch


TINY_FEATURES = 24
TINY_CLASSES = 3

# Key=value config for end-to-end CLI runs; small enough to finish in seconds.
CLI_CONFIG = """\
# tiny end-to-end run
seed = 11
n_samples = 600
n_features = 64
n_classes = 4
cluster_noise = 0.3
d_tr = 160
x_ref_pool = 160
d_test = 80
shadow = 128
attack_members_known = 60
attack_nonmembers_known = 60
hidden_layers = 16
teacher_epochs = 20
teacher_batch_size = 32
teacher_learning_rate = 0.01
student_epochs = 20
student_batch_size = 32
student_learning_rate = 0.01
attack_epochs = 10
attack_batch_size = 16
ref_size = 80
n_buckets = 2
sweep_temperatures = 1,3
sweep_ref_sizes = 40,80
analysis_n_samples = 60
analysis_n_features = 6
analysis_n_classes = 2
analysis_epochs = 40
influence_queries = 10
"""


@pytest.fixture(scope="session")
def tiny_data() -> Dataset:
    """Well-separated binary dataset (240 rows, 24 features, 3 classes)."""
    return synth_purchase(n_samples=240, n_features=TINY_FEATURES, n_classes=TINY_CLASSES, cluster_noise=0.1, seed=3)


@pytest.fixture(scope="session")
def tiny_layers():
    return build_architecture(TINY_FEATURES, [16], TINY_CLASSES)


@pytest.fixture
def tiny_model(tiny_layers) -> Mlp:
    """Freshly initialized 24-16-3 network."""
    return Mlp.initialize(tiny_layers, seed=0)


@pytest.fixture(scope="session")
def tiny_recipe() -> TrainConfig:
    return TrainConfig(epochs=30, batch_size=32, learning_rate=1e-2, seed=1)


@pytest.fixture(scope="session")
def trained_model(tiny_layers, tiny_data, tiny_recipe) -> Mlp:
    """24-16-3 network trained on the tiny dataset."""
    return train_from_scratch(tiny_layers, tiny_data, tiny_recipe).model


@pytest.fixture(scope="session")
def tiny_parts(tiny_data):
    """Split of the tiny dataset with every part nonempty."""
    plan = SplitPlan(seed=5, d_tr=80, x_ref_pool=60, d_test=40, shadow=40, attack_members_known=20,
                     attack_nonmembers_known=20)
    return split(tiny_data, plan)


@pytest.fixture(scope="session")
def tiny_dmp_config() -> DmpConfig:
    return DmpConfig(
        teacher_temperature=2.0,
        ref_size=30,
        teacher_train=TrainConfig(epochs=20, batch_size=16, learning_rate=1e-2, seed=2),
        student_train=TrainConfig(epochs=20, batch_size=16, learning_rate=1e-2, seed=3, loss=LossKind.KL_DIVERGENCE),
    )


@pytest.fixture(scope="session")
def overfit_task():
    """Noisy task a wide network memorizes: (model, members, non-members)."""
    data = synth_purchase(n_samples=400, n_features=40, n_classes=4, cluster_noise=0.4, seed=21)
    members = data.subset(np.arange(200))
    nonmembers = data.subset(np.arange(200, 400))
    recipe = TrainConfig(epochs=150, batch_size=20, learning_rate=1e-2, seed=4)
    model = train_from_scratch(build_architecture(40, [64], 4), members, recipe).model
    return model, members, nonmembers


@pytest.fixture(scope="session")
def converged_pair():
    """Leave-one-out pair of a linear model run to convergence: (pair, queries, weight decay).

    Full-batch gradient descent with weight decay settles at the regularized
    optimum, where first-order influence estimates hold.
    """
    data = synth_purchase(n_samples=160, n_features=10, n_classes=3, cluster_noise=0.3, seed=17)
    d_tr = data.subset(np.arange(100))
    queries = data.subset(np.arange(100, 160))
    recipe = TrainConfig(
        epochs=1000, batch_size=100, learning_rate=0.3, optimizer=OptimizerKind.SGD, weight_decay=0.05, seed=0
    )
    pair = retrain_oracle(d_tr, 0, recipe, build_architecture(10, [], 3))
    return pair, queries, recipe.weight_decay


@pytest.fixture
def continuous_data() -> Dataset:
    rng = np.random.default_rng(0)
    return Dataset(
        features=rng.normal(size=(12, 4)),
        labels=np.arange(12) % 2,
        n_classes=2,
        feature_kind=FeatureKind.CONTINUOUS,
    )


@pytest.fixture(scope="session")
def shared_cli_config(tmp_path_factory):
    """Tiny run configuration shared by module-scoped CLI runs."""
    path = tmp_path_factory.mktemp("config") / "run.cfg"
    path.write_text(CLI_CONFIG, encoding="utf-8")
    return path


@pytest.fixture
def cli_config(tmp_path):
    """Path of a tiny run configuration file."""
    path = tmp_path / "run.cfg"
    path.write_text(CLI_CONFIG, encoding="utf-8")
    return path
