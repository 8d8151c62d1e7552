#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Ponto de consenso de um lote de partículas.
"""

from dataclasses import dataclass, field

import numpy as np

from models.base_model import BaseModel


@dataclass(frozen=True)
class ConsensusPoint(BaseModel):
    """
    Média ponderada x̄* (ou argmin) de um lote.

    log_total_weight é log(soma de e^{-beta L_j}); vale nan no modo argmin,
    que não usa pesos.
    """

    x_star: np.ndarray
    log_total_weight: float
    source_batch: np.ndarray = field(repr=False)

    def in_hull(self, positions: np.ndarray, tol: float = 1e-12) -> bool:
        """
        Verifica, coordenada a coordenada, se x̄* está entre o mínimo e o
        máximo das posições do lote de origem.
        """
        subset = np.asarray(positions, dtype=float)[self.source_batch]
        low = subset.min(axis=0)
        high = subset.max(axis=0)
        scale = tol * np.maximum(1.0, np.abs(subset).max(axis=0))
        return bool(np.all(self.x_star >= low - scale) and np.all(self.x_star <= high + scale))
