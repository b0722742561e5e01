"""Parameter update rules."""

from typing import List

import numpy as np

from ..models.network import Mlp, OptimizerKind, TrainConfig
from ..models.training import Gradients


class Optimizer:
    """Base class: updates an Mlp's arrays in place."""

    def __init__(self, config: TrainConfig):
        self.learning_rate = config.learning_rate

    def step(self, model: Mlp, grads: Gradients) -> None:
        raise NotImplementedError


class SGDOptimizer(Optimizer):
    """Plain stochastic gradient descent."""

    def step(self, model: Mlp, grads: Gradients) -> None:
        for i in range(model.n_layers):
            model.weights[i] -= self.learning_rate * grads.weights[i]
            model.biases[i] -= self.learning_rate * grads.biases[i]


class AdamOptimizer(Optimizer):
    """Adam with bias-corrected first and second moments."""

    def __init__(self, config: TrainConfig):
        super().__init__(config)
        self.beta1 = config.beta1
        self.beta2 = config.beta2
        self.eps = config.eps
        self.t = 0
        self.m: List[np.ndarray] = []
        self.v: List[np.ndarray] = []

    def _update(self, slot: int, param: np.ndarray, grad: np.ndarray) -> None:
        if slot == len(self.m):
            self.m.append(np.zeros_like(param))
            self.v.append(np.zeros_like(param))
        m, v = self.m[slot], self.v[slot]
        m *= self.beta1
        m += (1.0 - self.beta1) * grad
        v *= self.beta2
        v += (1.0 - self.beta2) * grad * grad
        m_hat = m / (1.0 - self.beta1 ** self.t)
        v_hat = v / (1.0 - self.beta2 ** self.t)
        param -= self.learning_rate * m_hat / (np.sqrt(v_hat) + self.eps)

    def step(self, model: Mlp, grads: Gradients) -> None:
        self.t += 1
        for i in range(model.n_layers):
            self._update(2 * i, model.weights[i], grads.weights[i])
            self._update(2 * i + 1, model.biases[i], grads.biases[i])


def create_optimizer(config: TrainConfig) -> Optimizer:
    """Instantiate the optimizer named by the recipe."""
    if config.optimizer == OptimizerKind.ADAM:
        return AdamOptimizer(config)
    return SGDOptimizer(config)
