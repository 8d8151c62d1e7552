#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Ponto de consenso: média ponderada por e^{-beta L}, variante argmin e a
estimativa soft-min do princípio de Laplace.

Os pesos são sempre calculados relativos à menor perda do lote,
e^{-beta (L_j - min L)}, o que elimina o underflow para beta grande.
"""

from typing import Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from core.errors import DomainError, InputError
from models.report.consensus_point import ConsensusPoint


def _check_inputs(positions, losses, indices: Optional[Sequence[int]]):
    positions = np.asarray(positions, dtype=float)
    losses = np.asarray(losses, dtype=float).ravel()
    if positions.ndim == 1:
        positions = positions.reshape(-1, 1) if losses.shape[0] > 1 else positions.reshape(1, -1)
    if positions.shape[0] == 0 or losses.shape[0] == 0:
        raise DomainError("Lote de partículas vazio")
    if positions.shape[0] != losses.shape[0]:
        raise InputError(f"{positions.shape[0]} posições para {losses.shape[0]} perdas")
    if not np.all(np.isfinite(losses)):
        raise InputError("Perda não finita no lote")
    if indices is None:
        indices = np.arange(positions.shape[0])
    else:
        indices = np.asarray(indices, dtype=np.int64)
    return positions, losses, indices


def weighted_consensus(positions, losses, beta: float,
                       indices: Optional[Sequence[int]] = None) -> ConsensusPoint:
    """
    Média das posições com pesos e^{-beta L_j}.

    Args:
        positions: Posições do lote, k×d.
        losses: Perdas do lote, k.
        beta (float): Temperatura inversa.
        indices (Sequence[int], opcional): Índices das partículas no ensemble.

    Returns:
        ConsensusPoint: x̄* e log da soma dos pesos.
    """
    positions, losses, indices = _check_inputs(positions, losses, indices)
    if not beta > 0:
        raise InputError(f"beta deve ser positivo, recebido {beta}")

    l_min = losses.min()
    weights = np.exp(-beta * (losses - l_min))
    total = weights.sum()
    x_star = weights @ positions / total
    return ConsensusPoint(
        x_star=x_star,
        log_total_weight=float(-beta * l_min + np.log(total)),
        source_batch=indices,
    )


def argmin_consensus(positions, losses, indices: Optional[Sequence[int]] = None) -> ConsensusPoint:
    """Posição de menor perda; empates ficam com o primeiro do lote."""
    positions, losses, indices = _check_inputs(positions, losses, indices)
    best = int(np.argmin(losses))
    return ConsensusPoint(
        x_star=positions[best].copy(),
        log_total_weight=float("nan"),
        source_batch=indices,
    )


def log_mean_weight(losses, beta: float) -> float:
    """log da média de e^{-beta L_j}, em forma log-sum-exp."""
    losses = np.asarray(losses, dtype=float).ravel()
    if losses.shape[0] == 0:
        raise DomainError("Vetor de perdas vazio")
    return float(logsumexp(-beta * losses) - np.log(losses.shape[0]))


def laplace_estimate(losses, beta: float) -> float:
    """
    Soft-min -(1/beta) log((1/k) soma de e^{-beta L_j}).

    O resultado fica em [min L, média L]; o corte final só remove erro de
    arredondamento.
    """
    losses = np.asarray(losses, dtype=float).ravel()
    if losses.shape[0] == 0:
        raise DomainError("Vetor de perdas vazio")
    if not np.all(np.isfinite(losses)):
        raise InputError("Perda não finita")
    if not beta > 0:
        raise InputError(f"beta deve ser positivo, recebido {beta}")
    value = -log_mean_weight(losses, beta) / beta
    return float(np.clip(value, losses.min(), losses.mean()))
