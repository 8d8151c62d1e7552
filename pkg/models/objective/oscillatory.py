#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Função oscilatória unidimensional em forma de soma finita, onde o SGD
costuma ficar preso em mínimos locais.

    l_i(x) = exp(sin(2x^2)) + (1/10)(x - x̂_i - π/2)^2
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.errors import InputError
from models.base_model import BaseModel
from models.ensemble.ensemble import make_generator
from models.objective.objective_handle import ObjectiveHandle

# Ponto de referência usado pelo critério de sucesso
REFERENCE_MINIMIZER = math.pi / 2


@dataclass
class OscillatorySpec(BaseModel):
    """
    Amostras de ruído x̂_i ~ N(0, noise_variance) sorteadas na construção a
    partir de sample_seed, ou fornecidas explicitamente.
    """

    n_samples: int = 20
    sample_seed: int = 0
    noise_variance: float = 0.1
    samples: Optional[List[float]] = None
    _noise: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.samples is not None:
            noise = np.asarray(self.samples, dtype=float).ravel()
            self.n_samples = int(noise.shape[0])
        else:
            if int(self.n_samples) < 1:
                raise InputError(f"A função oscilatória exige n >= 1, recebido {self.n_samples}")
            rng = make_generator(np.random.SeedSequence(int(self.sample_seed)))
            noise = math.sqrt(self.noise_variance) * rng.standard_normal(int(self.n_samples))
        if noise.shape[0] < 1:
            raise InputError("A função oscilatória exige ao menos uma amostra")
        self._noise = noise
        self.samples = noise.tolist()

    @property
    def noise(self) -> np.ndarray:
        return self._noise

    def batch_loss(self, X: np.ndarray, indices: Optional[np.ndarray] = None) -> np.ndarray:
        x = X[:, 0][:, None]
        noise = self._noise if indices is None else self._noise[indices]
        per_sample = np.exp(np.sin(2.0 * x ** 2)) + 0.1 * (x - noise[None, :] - REFERENCE_MINIMIZER) ** 2
        return per_sample.mean(axis=1)

    def batch_grad(self, x: np.ndarray, indices: np.ndarray) -> np.ndarray:
        x0 = float(x[0])
        common = 4.0 * x0 * math.cos(2.0 * x0 ** 2) * math.exp(math.sin(2.0 * x0 ** 2))
        return (common + 0.2 * (x0 - self._noise[indices] - REFERENCE_MINIMIZER)).reshape(-1, 1)

    def handle(self) -> ObjectiveHandle:
        x_ref = np.array([REFERENCE_MINIMIZER])
        return ObjectiveHandle(
            name="oscillatory",
            dim=1,
            batch_loss=self.batch_loss,
            n_samples=self.n_samples,
            batch_grad=self.batch_grad,
            known_min=(x_ref, float(self.batch_loss(x_ref.reshape(1, 1))[0])),
        )


def _check_index(spec: OscillatorySpec, i: int) -> None:
    if not 0 <= i < spec.n_samples:
        raise InputError(f"Índice de amostra {i} fora de 0..{spec.n_samples - 1}")


def oscillatory_eval(spec: OscillatorySpec, x: float, i: int) -> float:
    """Perda l_i(x) da amostra i."""
    _check_index(spec, i)
    return float(spec.batch_loss(np.array([[float(x)]]), np.array([i]))[0])


def oscillatory_grad(spec: OscillatorySpec, x: float, i: int) -> float:
    """Derivada analítica de l_i em x."""
    _check_index(spec, i)
    return float(spec.batch_grad(np.array([float(x)]), np.array([i]))[0, 0])
