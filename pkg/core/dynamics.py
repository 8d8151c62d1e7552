#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Esquemas de atualização das partículas, critério de parada e perturbação
de reinício.

Todas as atualizações agem coordenada a coordenada sobre o deslocamento
D = X - x̄*, e escrevem a nova posição como x̄* + D·fator. Assim um fator
nulo leva a partícula exatamente ao consenso e D = 0 fica parado.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from core.constants import ConsensusMode, RESTART_MIN_RELATIVE_DECREASE, Scheme
from core.consensus import argmin_consensus, weighted_consensus
from core.errors import InputError, ObjectiveEvaluationError
from models.ensemble.ensemble import Ensemble
from models.params.cbo_params import StallConfig
from models.report.consensus_point import ConsensusPoint
from services.log_service import get_logger

logger = get_logger("dynamics")

# (ensemble, alvos, x̄*, lambda, sigma, gamma, rng) -> None
UpdateFn = Callable[[Ensemble, np.ndarray, np.ndarray, float, float, float, np.random.Generator], None]


def _displacement(ensemble: Ensemble, target_indices: Sequence[int], x_star: np.ndarray, gamma: float):
    if not gamma > 0:
        raise InputError(f"gamma deve ser positivo, recebido {gamma}")
    x_star = np.asarray(x_star, dtype=float)
    if x_star.shape != (ensemble.dim,) or not np.all(np.isfinite(x_star)):
        raise InputError("Ponto de consenso inválido (dimensão errada ou não finito)")
    targets = np.asarray(target_indices, dtype=np.int64)
    return targets, x_star, ensemble.positions[targets] - x_star


def euler_update(ensemble: Ensemble, target_indices: Sequence[int], x_star: np.ndarray,
                 lam: float, sigma: float, gamma: float, rng: np.random.Generator) -> None:
    """
    Passo de Euler-Maruyama com ruído geométrico por componente:
    X_i <- X_i - λγ(X_i - x̄*_i) + σ√γ (X_i - x̄*_i) z_i.
    """
    targets, x_star, D = _displacement(ensemble, target_indices, x_star, gamma)
    z = rng.standard_normal(D.shape)
    ensemble.positions[targets] = x_star + D * ((1.0 - lam * gamma) + sigma * math.sqrt(gamma) * z)


def splitting_update(ensemble: Ensemble, target_indices: Sequence[int], x_star: np.ndarray,
                     lam: float, sigma: float, gamma: float, rng: np.random.Generator) -> None:
    """Fluxo exato da deriva, e^{-λγ}, seguido do ruído sobre o ponto contraído."""
    targets, x_star, D = _displacement(ensemble, target_indices, x_star, gamma)
    D_hat = D * math.exp(-lam * gamma)
    w = rng.standard_normal(D.shape)
    ensemble.positions[targets] = x_star + D_hat * (1.0 + sigma * math.sqrt(gamma) * w)


def exact_gbm_update(ensemble: Ensemble, target_indices: Sequence[int], x_star: np.ndarray,
                     lam: float, sigma: float, gamma: float, rng: np.random.Generator) -> None:
    """Solução exata do movimento browniano geométrico com x̄* congelado."""
    targets, x_star, D = _displacement(ensemble, target_indices, x_star, gamma)
    omega = rng.standard_normal(D.shape)
    ensemble.positions[targets] = x_star + D * np.exp((-lam - 0.5 * sigma ** 2) * gamma
                                                      + sigma * math.sqrt(gamma) * omega)


SCHEMES: Dict[str, UpdateFn] = {
    Scheme.EULER: euler_update,
    Scheme.SPLITTING: splitting_update,
    Scheme.EXACT_GBM: exact_gbm_update,
}


def get_update(scheme: str) -> UpdateFn:
    try:
        return SCHEMES[scheme]
    except KeyError:
        raise InputError(f"Esquema desconhecido: {scheme}") from None


def check_stop(prev_consensus: np.ndarray, new_consensus: np.ndarray, epsilon: float) -> bool:
    """
    Verdadeiro se (1/d)|Δx̄*|^2 <= ε; a fronteira é inclusiva até o
    arredondamento.
    """
    prev_consensus = np.asarray(prev_consensus, dtype=float).ravel()
    new_consensus = np.asarray(new_consensus, dtype=float).ravel()
    if prev_consensus.shape != new_consensus.shape:
        raise InputError(
            f"Consensos de dimensões diferentes: {prev_consensus.shape} e {new_consensus.shape}"
        )
    value = float(np.mean((new_consensus - prev_consensus) ** 2))
    return value <= epsilon or math.isclose(value, epsilon, rel_tol=1e-12)


@dataclass
class StallTracker:
    """
    Contadores da heurística de estagnação: sequência de passos parados,
    reinícios feitos e perdas registradas em cada estagnação.
    """

    config: StallConfig
    streak: int = 0
    restarts: int = 0
    losses: List[float] = field(default_factory=list)

    def observe(self, stalled_step: bool) -> bool:
        """Atualiza a sequência e diz se o consenso está parado."""
        self.streak = self.streak + 1 if stalled_step else 0
        return self.streak >= self.config.consecutive

    def record(self, loss: float) -> bool:
        """
        Registra L̂(x̄*) na estagnação.

        Returns:
            bool: False quando a perda não caiu o mínimo relativo desde o
                registro anterior, sinal de parada.
        """
        improved = True
        if self.losses:
            previous = self.losses[-1]
            improved = loss < previous - RESTART_MIN_RELATIVE_DECREASE * abs(previous)
        self.losses.append(float(loss))
        return improved

    def reset_streak(self) -> None:
        self.streak = 0


def stall_kick(ensemble: Ensemble, config: StallConfig, rng: np.random.Generator,
               tracker: Optional[StallTracker] = None) -> bool:
    """
    Soma N(0, kick_sigma^2) a todas as coordenadas de todas as partículas.

    Args:
        ensemble (Ensemble): Ensemble a perturbar.
        config (StallConfig): Configuração de estagnação.
        rng (np.random.Generator): Fluxo de perturbações.
        tracker (StallTracker, opcional): Contador de reinícios.

    Returns:
        bool: False se os reinícios se esgotaram (nada é alterado).
    """
    if not config.enabled:
        raise InputError("Perturbação de reinício chamada com a estagnação desativada")
    if tracker is not None and tracker.restarts >= config.max_restarts:
        return False
    ensemble.positions += config.kick_sigma * rng.standard_normal(ensemble.positions.shape)
    if tracker is not None:
        tracker.restarts += 1
        logger.info(f"Consenso parado: reinício {tracker.restarts} de {config.max_restarts}")
    return True


def evaluate_members(obj, positions: np.ndarray, members: np.ndarray,
                     data_indices: Optional[np.ndarray], iteration: int) -> np.ndarray:
    """
    Perdas das partículas de um lote, abortando com diagnóstico se alguma
    não for finita.
    """
    losses = obj.eval_batch(positions[members], data_indices)
    bad = np.flatnonzero(~np.isfinite(losses))
    if bad.size:
        error = ObjectiveEvaluationError(int(members[bad[0]]), iteration, float(losses[bad[0]]))
        logger.error(str(error))
        raise error
    return losses


def compute_consensus(mode: str, positions: np.ndarray, members: np.ndarray,
                      losses: np.ndarray, beta: float) -> ConsensusPoint:
    if mode == ConsensusMode.ARGMIN:
        return argmin_consensus(positions[members], losses, members)
    return weighted_consensus(positions[members], losses, beta, members)
