#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Métodos de comparação: SGD com mini-lotes e o CBO original com ruído
isotrópico, ambos produzindo o mesmo RunReport do CBO por componente.
"""

import math
import time
from typing import Callable, Optional

import numpy as np

from core.batching import sample_data_batch
from core.constants import HeavisideMode, MethodType, StopReason
from core.errors import InputError, ObjectiveEvaluationError, UnsupportedOperationError
from models.batch.batch_plan import DataBatch
from models.ensemble.ensemble import Ensemble, InitSpec, split_streams
from models.objective.objective_handle import ObjectiveHandle
from models.params.cbo_params import CboParams, IsotropicCboParams, SgdParams
from models.report.run_report import ConsensusRecord, RunReport
from services.log_service import get_logger
from services.optimizer_service import BatchCallback, run_optimizer

logger = get_logger("baseline")

# Pontos guardados no traço do SGD: um a cada SGD_TRACE_STRIDE passos
SGD_TRACE_STRIDE = 100


def sgd_step(x: np.ndarray, obj: ObjectiveHandle, batch: DataBatch, gamma: float) -> np.ndarray:
    """
    x - (γ/m) soma dos gradientes por amostra do lote.

    Args:
        x (np.ndarray): Iterado atual.
        obj (ObjectiveHandle): Objetivo com gradientes por amostra.
        batch (DataBatch): Lote de dados.
        gamma (float): Taxa de aprendizado.

    Returns:
        np.ndarray: Novo iterado.
    """
    if not obj.has_gradients:
        raise UnsupportedOperationError(f"A função objetivo '{obj.name}' não fornece gradientes por amostra")
    x = np.asarray(x, dtype=float)
    return x - gamma * obj.grad_batch(x, batch.indices).mean(axis=0)


def run_sgd(obj: ObjectiveHandle, params: SgdParams, init_spec: InitSpec, seed: Optional[int] = None,
            step_callback: Optional[Callable[[int, np.ndarray, DataBatch], Optional[bool]]] = None) -> RunReport:
    """
    Cadeia única de SGD com orçamento fixo de iterações.

    O ponto inicial é a primeira amostra de init_spec com o fluxo de
    inicialização da semente, como a primeira partícula do CBO.
    """
    params.validate()
    if not obj.has_gradients:
        raise UnsupportedOperationError(f"A função objetivo '{obj.name}' não fornece gradientes por amostra")
    seed = params.seed if seed is None else seed
    streams = split_streams(seed)
    x = init_spec.sample(1, obj.dim, streams.init)[0]
    m = min(params.batch_size, obj.n_samples)

    report = RunReport(method=MethodType.SGD, seed=int(seed), stop_reason=StopReason.MAX_ITERS,
                       iterations_used=params.max_iters)
    start = time.perf_counter()
    batch = None

    for t in range(params.max_iters):
        batch = sample_data_batch(obj.n_samples, m, streams.data)
        x = sgd_step(x, obj, batch, params.gamma)
        if not np.all(np.isfinite(x)):
            bad = int(np.flatnonzero(~np.isfinite(x))[0])
            error = ObjectiveEvaluationError(0, t, float(x[bad]))
            logger.error(str(error))
            raise error
        if t % SGD_TRACE_STRIDE == 0:
            loss = float(obj.eval_batch(x, batch.indices)[0])
            report.consensus_trace.append(ConsensusRecord(t, 0, x.copy(), loss))
        if step_callback is not None and step_callback(t, x, batch):
            report.stop_reason = StopReason.CALLBACK
            report.iterations_used = t + 1
            break

    last_t = report.iterations_used - 1
    if not report.consensus_trace or report.consensus_trace[-1].iteration != last_t:
        indices = batch.indices if batch is not None else None
        report.consensus_trace.append(ConsensusRecord(max(last_t, 0), 0, x.copy(),
                                                      float(obj.eval_batch(x, indices)[0])))
    report.wall_time = time.perf_counter() - start
    report.final_positions = x.reshape(1, -1).copy()
    logger.info(f"Fim sgd (semente {seed}): {report.iterations_used} iterações")
    return report


def heaviside_logistic(s: np.ndarray, epsilon: float) -> np.ndarray:
    """Regularização H(s) = (1 + tanh(s/ε))/2."""
    return 0.5 * (1.0 + np.tanh(np.asarray(s, dtype=float) / epsilon))


def isotropic_cbo_step(ensemble: Ensemble, target_indices, x_star: np.ndarray, params: IsotropicCboParams,
                       rng: np.random.Generator, sigma: Optional[float] = None,
                       loss_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> None:
    """
    X <- X - λγ H(L(X) - L(x̄*)) (X - x̄*) + σ√γ |X - x̄*| z, com z normal em R^d.

    Args:
        ensemble (Ensemble): Ensemble a atualizar.
        target_indices: Partículas atualizadas.
        x_star (np.ndarray): Consenso.
        params (IsotropicCboParams): Parâmetros.
        rng (np.random.Generator): Fluxo de ruído.
        sigma (float, opcional): σ do cronograma; padrão params.sigma.
        loss_fn (Callable, opcional): Perda vetorizada, exigida com H logístico.
    """
    if not params.gamma > 0:
        raise InputError(f"gamma deve ser positivo, recebido {params.gamma}")
    x_star = np.asarray(x_star, dtype=float)
    if x_star.shape != (ensemble.dim,) or not np.all(np.isfinite(x_star)):
        raise InputError("Ponto de consenso inválido (dimensão errada ou não finito)")
    sigma = params.sigma if sigma is None else sigma
    targets = np.asarray(target_indices, dtype=np.int64)
    D = ensemble.positions[targets] - x_star

    if params.heaviside_mode == HeavisideMode.LOGISTIC:
        if loss_fn is None:
            raise InputError("O modo logístico exige a função de perda")
        gap = loss_fn(ensemble.positions[targets]) - loss_fn(x_star.reshape(1, -1))[0]
        H = heaviside_logistic(gap, params.heaviside_epsilon)[:, None]
    else:
        H = 1.0

    norms = np.linalg.norm(D, axis=1, keepdims=True)
    z = rng.standard_normal(D.shape)
    ensemble.positions[targets] = (x_star + D * (1.0 - params.lam * params.gamma * H)
                                   + sigma * math.sqrt(params.gamma) * norms * z)


def run_isotropic_cbo(obj: ObjectiveHandle, params: CboParams, init_spec: InitSpec, seed: int,
                      heaviside_mode: str = HeavisideMode.OFF, heaviside_epsilon: float = 0.1,
                      callback: Optional[BatchCallback] = None) -> RunReport:
    """
    CBO isotrópico no mesmo laço (lotes, consenso, parada) do CBO por componente.

    Com H logístico as perdas usadas em H são as completas.
    """
    iso = IsotropicCboParams.from_cbo_params(params, heaviside_mode, heaviside_epsilon).validate()

    def update(ensemble, targets, x_star, lam, sigma, gamma, rng):
        isotropic_cbo_step(ensemble, targets, x_star, iso, rng, sigma=sigma, loss_fn=obj.eval_batch)

    return run_optimizer(obj, params, init_spec, seed, update_fn=update, callback=callback,
                         method=MethodType.ISOTROPIC_CBO)
