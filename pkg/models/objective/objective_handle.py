#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Interface de avaliação das funções objetivo.

Todas as avaliações são vetorizadas sobre um lote de pontos: `batch_loss`
recebe uma matriz k×d e devolve k perdas. Para objetivos em forma de soma
finita, `indices` seleciona as amostras cuja média forma a perda; None
significa todas as amostras.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from core.errors import InputError, UnsupportedOperationError

BatchLoss = Callable[[np.ndarray, Optional[np.ndarray]], np.ndarray]
BatchGrad = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ObjectiveHandle:
    """
    Função objetivo L com as capacidades opcionais exigidas pelos métodos.

    Attributes:
        name (str): Nome para logs e relatórios.
        dim (int): Dimensão d.
        batch_loss (BatchLoss): (X k×d, índices ou None) -> k perdas.
        n_samples (int): n da soma finita, 0 se a função não tem essa forma.
        batch_grad (BatchGrad, opcional): (x, índices) -> gradientes por amostra, len(índices)×d.
        known_min (Tuple[np.ndarray, float], opcional): Minimizador conhecido e L nele.
        known_c_L (float, opcional): Cota para a curvatura usada no certificado.
    """

    name: str
    dim: int
    batch_loss: BatchLoss
    n_samples: int = 0
    batch_grad: Optional[BatchGrad] = None
    known_min: Optional[Tuple[np.ndarray, float]] = None
    known_c_L: Optional[float] = None

    @property
    def is_finite_sum(self) -> bool:
        return self.n_samples > 0

    @property
    def has_gradients(self) -> bool:
        return self.batch_grad is not None and self.is_finite_sum

    def _as_matrix(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise InputError(f"Pontos com forma {X.shape} para a função '{self.name}' de dimensão {self.dim}")
        return X

    def _check_indices(self, indices) -> np.ndarray:
        if not self.is_finite_sum:
            raise UnsupportedOperationError(f"A função objetivo '{self.name}' não é uma soma finita")
        indices = np.atleast_1d(np.asarray(indices, dtype=np.int64))
        if indices.size == 0 or indices.min() < 0 or indices.max() >= self.n_samples:
            raise InputError(f"Índices de amostra fora de 0..{self.n_samples - 1}")
        return indices

    def eval_batch(self, X, indices: Optional[Sequence[int]] = None) -> np.ndarray:
        """
        Avalia a perda (completa ou de mini-lote) em vários pontos.

        Args:
            X: Matriz k×d (ou um único vetor).
            indices (Sequence[int], opcional): Amostras do mini-lote.

        Returns:
            np.ndarray: Vetor com k perdas.
        """
        X = self._as_matrix(X)
        if indices is not None:
            indices = self._check_indices(indices)
        return np.asarray(self.batch_loss(X, indices), dtype=float)

    def eval_full(self, x) -> float:
        return float(self.eval_batch(x)[0])

    def eval_sample(self, x, i: int) -> float:
        return float(self.eval_batch(x, [i])[0])

    def grad_sample(self, x, i: int) -> np.ndarray:
        return self.grad_batch(x, [i])[0]

    def grad_batch(self, x, indices: Sequence[int]) -> np.ndarray:
        """Gradientes por amostra em um único ponto, len(indices)×d."""
        if self.batch_grad is None:
            raise UnsupportedOperationError(f"A função objetivo '{self.name}' não fornece gradientes")
        indices = self._check_indices(indices)
        x = self._as_matrix(x)[0]
        return np.asarray(self.batch_grad(x, indices), dtype=float)
