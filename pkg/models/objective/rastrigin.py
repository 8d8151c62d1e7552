#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Funções de teste sem forma de soma finita: Rastrigin deslocada e Ackley.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.errors import InputError
from models.base_model import BaseModel
from models.objective.objective_handle import ObjectiveHandle

# Cota de |L''| por coordenada: 2 + 10·(2π)^2
RASTRIGIN_C_L = 2.0 + 40.0 * math.pi ** 2


@dataclass
class RastriginSpec(BaseModel):
    """Rastrigin média por coordenada, deslocada por B e elevada por C."""

    dim: int = 1
    shift: float = 0.0
    lift: float = 0.0

    def __post_init__(self):
        if int(self.dim) < 1:
            raise InputError(f"Dimensão inválida para Rastrigin: {self.dim}")
        self.dim = int(self.dim)

    def batch_loss(self, X: np.ndarray, indices: Optional[np.ndarray] = None) -> np.ndarray:
        Z = X - self.shift
        return np.mean(Z ** 2 - 10.0 * np.cos(2.0 * np.pi * Z) + 10.0, axis=1) + self.lift

    def handle(self) -> ObjectiveHandle:
        return ObjectiveHandle(
            name="rastrigin",
            dim=self.dim,
            batch_loss=self.batch_loss,
            known_min=(np.full(self.dim, float(self.shift)), float(self.lift)),
            known_c_L=RASTRIGIN_C_L,
        )


def rastrigin_eval(spec: RastriginSpec, x) -> float:
    """(1/d) soma de [(x_i-B)^2 - 10cos(2π(x_i-B)) + 10] + C."""
    x = np.asarray(x, dtype=float).reshape(1, -1)
    if x.shape[1] != spec.dim:
        raise InputError(f"Ponto de dimensão {x.shape[1]}, esperado {spec.dim}")
    return float(spec.batch_loss(x)[0])


@dataclass
class AckleySpec(BaseModel):
    """Ackley deslocada, mínimo global 0 em x = shift·1."""

    dim: int = 2
    shift: float = 0.0

    def batch_loss(self, X: np.ndarray, indices: Optional[np.ndarray] = None) -> np.ndarray:
        Z = X - self.shift
        return (
            -20.0 * np.exp(-0.2 * np.sqrt(np.mean(Z ** 2, axis=1)))
            - np.exp(np.mean(np.cos(2.0 * np.pi * Z), axis=1))
            + 20.0
            + math.e
        )

    def handle(self) -> ObjectiveHandle:
        x_min = np.full(self.dim, float(self.shift))
        return ObjectiveHandle(
            name="ackley",
            dim=self.dim,
            batch_loss=self.batch_loss,
            known_min=(x_min, float(self.batch_loss(x_min.reshape(1, -1))[0])),
        )
