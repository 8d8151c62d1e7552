#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Quadráticas convexas: |x - c|^2 + offset, ou em soma finita
l_i(x) = ½|x - c_i|^2 + offset.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from core.errors import InputError
from models.base_model import BaseModel
from models.objective.objective_handle import ObjectiveHandle


@dataclass
class QuadraticSpec(BaseModel):
    """Centro c (ou centros c_i por amostra) e deslocamento vertical."""

    dim: int = 2
    center: Optional[List[float]] = None
    offset: float = 0.0
    sample_centers: Optional[List[List[float]]] = None

    def __post_init__(self):
        if self.sample_centers is not None:
            centers = np.asarray(self.sample_centers, dtype=float)
            if centers.ndim == 1:
                centers = centers.reshape(-1, 1)
            if centers.shape[0] < 1:
                raise InputError("A quadrática em soma finita exige ao menos um centro")
            self.dim = int(centers.shape[1])
            self._centers = centers
        else:
            center = np.zeros(int(self.dim)) if self.center is None else np.asarray(self.center, dtype=float)
            if center.shape != (int(self.dim),):
                raise InputError(f"Centro com forma {center.shape}, esperado ({self.dim},)")
            self._centers = center.reshape(1, -1)
        self.dim = int(self.dim)

    @property
    def is_finite_sum(self) -> bool:
        return self.sample_centers is not None

    def batch_loss(self, X: np.ndarray, indices: Optional[np.ndarray] = None) -> np.ndarray:
        if not self.is_finite_sum:
            return np.sum((X - self._centers[0]) ** 2, axis=1) + self.offset
        centers = self._centers if indices is None else self._centers[indices]
        sq = np.sum((X[:, None, :] - centers[None, :, :]) ** 2, axis=2)
        return 0.5 * sq.mean(axis=1) + self.offset

    def batch_grad(self, x: np.ndarray, indices: np.ndarray) -> np.ndarray:
        return x[None, :] - self._centers[indices]

    def handle(self) -> ObjectiveHandle:
        x_min = self._centers.mean(axis=0)
        return ObjectiveHandle(
            name="quadratic",
            dim=self.dim,
            batch_loss=self.batch_loss,
            n_samples=self._centers.shape[0] if self.is_finite_sum else 0,
            batch_grad=self.batch_grad if self.is_finite_sum else None,
            known_min=(x_min, float(self.batch_loss(x_min.reshape(1, -1))[0])),
            # Hessiana: 2I na forma simples, I na soma finita
            known_c_L=1.0 if self.is_finite_sum else 2.0,
        )
