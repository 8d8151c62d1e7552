#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Laço completo do CBO com mini-lotes em dois níveis.

A cada iteração externa k os lotes de partículas são cortados pelo
escalonador com resto; para cada lote theta: sorteio do lote de dados,
perdas, consenso, atualização, registro, critério de parada e heurística
de estagnação.
"""

import time
from typing import Callable, Optional

import numpy as np

from core.batching import next_particle_batches, sample_data_batch
from core.constants import StopReason, UpdateMode
from core.dynamics import (
    StallTracker, UpdateFn, check_stop, compute_consensus, evaluate_members, get_update, stall_kick
)
from models.batch.batch_plan import BatchPlan
from models.ensemble.ensemble import Ensemble, InitSpec, split_streams
from models.objective.objective_handle import ObjectiveHandle
from models.params.cbo_params import CboParams
from models.report.consensus_point import ConsensusPoint
from models.report.run_report import ConsensusRecord, RunReport
from services.log_service import get_logger

logger = get_logger("optimizer")

# (k, theta, ensemble, consenso, perda estimada) -> True para interromper
BatchCallback = Callable[[int, int, Ensemble, ConsensusPoint, float], Optional[bool]]


def data_batch_size(obj: ObjectiveHandle, batch_data: Optional[int]) -> Optional[int]:
    """
    Tamanho efetivo do lote de dados, ou None para a perda completa.

    Um m maior que n é reduzido a n, que equivale à perda completa.
    """
    if batch_data is None or not obj.is_finite_sum:
        return None
    m = min(int(batch_data), obj.n_samples)
    if m < int(batch_data):
        logger.warning(f"Lote de dados {batch_data} maior que n={obj.n_samples}; usando a perda completa")
    return m if m < obj.n_samples else None


def make_ensemble(init_spec: InitSpec, n_particles: int, dim: int, seed: int):
    """Ensemble inicial e os fluxos aleatórios da semente."""
    streams = split_streams(seed)
    positions = init_spec.sample(n_particles, dim, streams.init)
    return Ensemble(positions=positions, seed=int(seed), rng=streams.noise), streams


def run_optimizer(obj: ObjectiveHandle, params: CboParams, init_spec: InitSpec, seed: int,
                  update_fn: Optional[UpdateFn] = None, callback: Optional[BatchCallback] = None,
                  method: str = "cbo") -> RunReport:
    """
    Executa o CBO do início ao critério de parada.

    Args:
        obj (ObjectiveHandle): Função objetivo.
        params (CboParams): Parâmetros validados.
        init_spec (InitSpec): Distribuição inicial.
        seed (int): Semente mestre.
        update_fn (UpdateFn, opcional): Substitui o esquema de params.scheme.
        callback (BatchCallback, opcional): Chamado após cada lote.
        method (str): Nome registrado no relatório.

    Returns:
        RunReport: Traço de consenso, motivo de parada e contadores.
    """
    params.validate()
    ensemble, streams = make_ensemble(init_spec, params.n_particles, obj.dim, seed)
    update = update_fn or get_update(params.scheme)
    m = data_batch_size(obj, params.batch_data)
    plan = BatchPlan.initial(params.n_particles, params.batch_particles)
    tracker = StallTracker(params.stall) if params.stall.enabled else None
    all_particles = np.arange(params.n_particles)

    report = RunReport(method=method, seed=int(seed))
    logger.info(
        f"Início {method}: '{obj.name}' d={obj.dim}, N={params.n_particles}, M={params.batch_particles}, "
        f"m={m or 'completo'}, semente={seed}"
    )

    prev_consensus = None
    last_record = None
    step = 0
    stop_reason = None
    iterations_used = params.max_iters
    start = time.perf_counter()

    for k in range(params.max_iters):
        sigma_k = params.sigma_at(k)
        beta_k = params.beta_at(k)
        batches, plan = next_particle_batches(plan, streams.batching)

        for theta, batch in enumerate(batches):
            members = np.sort(batch)
            data_indices = sample_data_batch(obj.n_samples, m, streams.data).indices if m else None

            losses = evaluate_members(obj, ensemble.positions, members, data_indices, k)
            point = compute_consensus(params.consensus_mode, ensemble.positions, members, losses, beta_k)
            targets = members if params.update_mode == UpdateMode.PARTIAL else all_particles
            update(ensemble, targets, point.x_star, params.lam, sigma_k, params.gamma, ensemble.rng)

            loss_estimate = float(obj.eval_batch(point.x_star, data_indices)[0])
            last_record = ConsensusRecord(k, theta, point.x_star, loss_estimate)
            if step % params.trace_stride == 0:
                report.consensus_trace.append(last_record)
            step += 1

            if callback is not None and callback(k, theta, ensemble, point, loss_estimate):
                stop_reason = StopReason.CALLBACK
                break

            if prev_consensus is not None:
                converged = check_stop(prev_consensus, point.x_star, params.epsilon_stop)
                if tracker is None:
                    if converged:
                        stop_reason = StopReason.CRITERION_MET
                        break
                elif converged or tracker.observe(
                        check_stop(prev_consensus, point.x_star, params.stall.epsilon_stall)):
                    if not tracker.record(loss_estimate):
                        stop_reason = StopReason.CRITERION_MET
                        break
                    if not stall_kick(ensemble, params.stall, streams.kick, tracker):
                        stop_reason = StopReason.RESTARTS_EXHAUSTED
                        break
                    tracker.reset_streak()
                    prev_consensus = None
                    continue
            prev_consensus = point.x_star

        if stop_reason is not None:
            iterations_used = k + 1
            break

    if stop_reason is None:
        stop_reason = StopReason.MAX_ITERS
    if last_record is not None and (not report.consensus_trace or report.consensus_trace[-1] is not last_record):
        report.consensus_trace.append(last_record)

    report.stop_reason = stop_reason
    report.iterations_used = iterations_used
    report.wall_time = time.perf_counter() - start
    report.final_positions = ensemble.positions.copy()
    if tracker is not None:
        report.restarts = tracker.restarts
        report.stall_losses = list(tracker.losses)

    logger.info(
        f"Fim {method} (semente {seed}): {stop_reason} após {iterations_used} iterações, "
        f"L̂(x̄*)={report.final_loss_estimate:.6g}"
    )
    return report
