#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Classificador softmax sem camadas ocultas: f(x, x̂) = softmax(ReLU(θ x̂ + B)).

O vetor de parâmetros guarda θ (K×p_in, por linhas) seguido de B (K).
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.special import softmax

from core.constants import PROBABILITY_CLAMP
from core.errors import DomainError, InputError
from models.objective.objective_handle import ObjectiveHandle

# Amostras avaliadas por vez na perda completa
EVAL_CHUNK = 4096


@dataclass
class LabeledData:
    """Entradas n×p_in e rótulos one-hot n×K, imutáveis após a construção."""

    inputs: np.ndarray = field(repr=False)
    labels: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.inputs = np.asarray(self.inputs, dtype=float)
        self.labels = np.asarray(self.labels, dtype=float)
        if self.inputs.ndim != 2 or self.labels.ndim != 2:
            raise InputError("Entradas e rótulos devem ser matrizes")
        if self.inputs.shape[0] != self.labels.shape[0]:
            raise InputError(
                f"{self.inputs.shape[0]} entradas para {self.labels.shape[0]} rótulos"
            )
        check_one_hot(self.labels)
        self.inputs.setflags(write=False)
        self.labels.setflags(write=False)

    @classmethod
    def from_class_indices(cls, inputs: np.ndarray, classes: np.ndarray, n_classes: int = 10) -> "LabeledData":
        classes = np.asarray(classes, dtype=np.int64)
        if classes.size and (classes.min() < 0 or classes.max() >= n_classes):
            raise InputError(f"Rótulos fora de 0..{n_classes - 1}")
        return cls(inputs=inputs, labels=np.eye(n_classes)[classes])

    @property
    def n_samples(self) -> int:
        return int(self.inputs.shape[0])

    @property
    def input_dim(self) -> int:
        return int(self.inputs.shape[1])

    @property
    def n_classes(self) -> int:
        return int(self.labels.shape[1])

    @property
    def class_indices(self) -> np.ndarray:
        return np.argmax(self.labels, axis=1)


def check_one_hot(labels: np.ndarray) -> None:
    """Cada linha deve ter exatamente um 1 e os demais 0."""
    labels = np.asarray(labels)
    ok = np.all((labels == 0) | (labels == 1), axis=-1) & (labels.sum(axis=-1) == 1)
    if not np.all(ok):
        raise InputError("Rótulo não está no formato one-hot")


@dataclass
class SoftmaxNetSpec:
    """Rede sem camadas ocultas sobre um conjunto de treino rotulado."""

    data: LabeledData
    n_classes: int = 10

    def __post_init__(self):
        if self.data.n_classes != self.n_classes:
            raise InputError(
                f"Rótulos com {self.data.n_classes} classes, esperado {self.n_classes}"
            )

    @property
    def input_dim(self) -> int:
        return self.data.input_dim

    @property
    def dim(self) -> int:
        return self.n_classes * self.input_dim + self.n_classes

    def unpack(self, X: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Separa k vetores de parâmetros em θ (k×K×p_in) e B (k×K)."""
        X = np.atleast_2d(X)
        if X.shape[1] != self.dim:
            raise InputError(f"Vetor de parâmetros de dimensão {X.shape[1]}, esperado {self.dim}")
        k, n_weights = X.shape[0], self.n_classes * self.input_dim
        theta = X[:, :n_weights].reshape(k, self.n_classes, self.input_dim)
        return theta, X[:, n_weights:]

    def pre_activation(self, X: np.ndarray, inputs: np.ndarray) -> np.ndarray:
        """θ x̂ + B para k parâmetros e m entradas: k×m×K."""
        theta, bias = self.unpack(X)
        return np.einsum('kcp,mp->kmc', theta, inputs) + bias[:, None, :]

    def _loss_chunk(self, X: np.ndarray, inputs: np.ndarray, labels: np.ndarray) -> np.ndarray:
        probs = softmax(np.maximum(self.pre_activation(X, inputs), 0.0), axis=-1)
        p_true = np.maximum(np.sum(probs * labels[None, :, :], axis=-1), PROBABILITY_CLAMP)
        return -np.log(p_true).sum(axis=1)

    def batch_loss(self, X: np.ndarray, indices: Optional[np.ndarray] = None) -> np.ndarray:
        if indices is not None:
            return self._loss_chunk(X, self.data.inputs[indices], self.data.labels[indices]) / len(indices)
        n = self.data.n_samples
        total = np.zeros(X.shape[0])
        for start in range(0, n, EVAL_CHUNK):
            stop = min(start + EVAL_CHUNK, n)
            total += self._loss_chunk(X, self.data.inputs[start:stop], self.data.labels[start:stop])
        return total / n

    def batch_grad(self, x: np.ndarray, indices: np.ndarray) -> np.ndarray:
        """
        Gradiente da entropia cruzada por amostra.

        Com a = ReLU(z) e f = softmax(a), dl/dz = (f - y)·1[z > 0].
        """
        inputs = self.data.inputs[indices]
        z = self.pre_activation(x.reshape(1, -1), inputs)[0]
        probs = softmax(np.maximum(z, 0.0), axis=-1)
        dz = (probs - self.data.labels[indices]) * (z > 0)
        d_theta = dz[:, :, None] * inputs[:, None, :]
        return np.concatenate([d_theta.reshape(len(indices), -1), dz], axis=1)

    def handle(self) -> ObjectiveHandle:
        return ObjectiveHandle(
            name="softmax_net",
            dim=self.dim,
            batch_loss=self.batch_loss,
            n_samples=self.data.n_samples,
            batch_grad=self.batch_grad,
        )


def softmax_forward(spec: SoftmaxNetSpec, x: np.ndarray, input_vector: np.ndarray) -> np.ndarray:
    """
    Probabilidades das K classes para uma entrada.

    Args:
        spec (SoftmaxNetSpec): Especificação da rede.
        x (np.ndarray): Parâmetros (θ, B) achatados.
        input_vector (np.ndarray): Entrada de dimensão p_in.

    Returns:
        np.ndarray: Vetor de K probabilidades.
    """
    input_vector = np.asarray(input_vector, dtype=float).ravel()
    if input_vector.shape[0] != spec.input_dim:
        raise InputError(f"Entrada de dimensão {input_vector.shape[0]}, esperado {spec.input_dim}")
    z = spec.pre_activation(np.asarray(x, dtype=float).reshape(1, -1), input_vector.reshape(1, -1))[0, 0]
    return softmax(np.maximum(z, 0.0))


def cross_entropy(f: np.ndarray, y: np.ndarray) -> float:
    """-log f_k* para o índice quente k*, com f limitado inferiormente por 1e-12."""
    y = np.asarray(y, dtype=float)
    check_one_hot(y)
    f = np.asarray(f, dtype=float)
    return float(-np.log(max(float(f[int(np.argmax(y))]), PROBABILITY_CLAMP)))


def predict(spec: SoftmaxNetSpec, x: np.ndarray, inputs: np.ndarray) -> np.ndarray:
    """Classe prevista por entrada; empates caem no menor índice."""
    x = np.asarray(x, dtype=float).reshape(1, -1)
    predictions = []
    for start in range(0, inputs.shape[0], EVAL_CHUNK):
        z = spec.pre_activation(x, inputs[start:start + EVAL_CHUNK])[0]
        predictions.append(np.argmax(softmax(np.maximum(z, 0.0), axis=-1), axis=-1))
    return np.concatenate(predictions)


def test_accuracy(spec: SoftmaxNetSpec, x: np.ndarray, test_set: LabeledData) -> float:
    """Fração das entradas de teste classificadas corretamente."""
    if test_set.n_samples == 0:
        raise DomainError("Conjunto de teste vazio")
    if test_set.input_dim != spec.input_dim:
        raise InputError(
            f"Conjunto de teste com entradas de dimensão {test_set.input_dim}, esperado {spec.input_dim}"
        )
    return float(np.mean(predict(spec, x, test_set.inputs) == test_set.class_indices))


# Evita que o pytest colete a função como teste ao importá-la
test_accuracy.__test__ = False
