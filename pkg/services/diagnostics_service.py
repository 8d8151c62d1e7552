#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Diagnósticos de campo médio: certificado (mu, nu), taxas de decaimento com
consenso congelado, modelo semi-discreto e a lacuna do princípio de Laplace.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.batching import sample_data_batch
from core.constants import ANCHORED_FIT_FRACTION, ANCHORED_REPLICATE_GROUPS, Scheme
from core.consensus import laplace_estimate, log_mean_weight
from core.dynamics import compute_consensus, evaluate_members, get_update
from core.errors import DomainError, InputError, UnsupportedOperationError
from models.ensemble.ensemble import Ensemble, InitSpec, split_streams
from models.objective.objective_handle import ObjectiveHandle
from models.params.cbo_params import CboParams, IsotropicCboParams
from models.report.diagnostics import AnchoredDecayResult, ConvergenceCertificate, MomentTrace
from services.baseline_service import isotropic_cbo_step
from services.log_service import get_logger
from services.optimizer_service import data_batch_size, make_ensemble

logger = get_logger("diagnostics")

# Menor ensemble aceito pelo experimento ancorado
MIN_ANCHORED_PARTICLES = 1000

NU_THRESHOLD = 0.75


def compute_certificate(ensemble: Ensemble, obj: ObjectiveHandle, params: CboParams,
                        l_min: float, c_l: float) -> ConvergenceCertificate:
    """
    Calcula mu e nu da condição de decaimento exponencial da variância.

    Args:
        ensemble (Ensemble): Distribuição inicial amostrada.
        obj (ObjectiveHandle): Função objetivo.
        params (CboParams): lambda, sigma e beta.
        l_min (float): L_m, no máximo a menor perda amostrada.
        c_l (float): Cota de curvatura fornecida pelo usuário.

    Returns:
        ConvergenceCertificate: Valores, sinalizadores e entradas ecoadas.
    """
    if not c_l > 0:
        raise InputError(f"c_L deve ser positivo, recebido {c_l}")
    losses = obj.eval_batch(ensemble.positions)
    if not np.all(np.isfinite(losses)):
        raise InputError("Perda não finita no ensemble inicial")
    tolerance = 1e-12 * max(1.0, abs(float(losses.min())))
    if l_min > losses.min() + tolerance:
        raise InputError(f"L_m={l_min} excede a menor perda amostrada {losses.min()}")

    lam, sigma, beta = params.lam, params.sigma, params.beta
    log_mass0 = log_mean_weight(losses, beta)
    # log(e^{-beta L_m} / M_L(0)) <= 0
    log_ratio = -beta * l_min - log_mass0
    variance0 = ensemble.variance()

    mu = 2.0 * lam - 0.5 * sigma ** 2 - sigma ** 2 * math.exp(log_ratio)
    if mu > 0:
        nu = 2.0 * variance0 * beta * c_l * (2.0 * lam + sigma ** 2) / mu * math.exp(2.0 * log_ratio)
    else:
        nu = float("nan")
        logger.warning(f"mu={mu:.6g} <= 0: nu indefinido")

    return ConvergenceCertificate(
        mu=mu, nu=nu, mu_positive=mu > 0, nu_ok=bool(mu > 0 and nu <= NU_THRESHOLD),
        variance0=variance0, log_mass0=log_mass0, l_min=float(l_min), c_l=float(c_l),
        lam=lam, sigma=sigma, beta=beta,
    )


def expected_anchored_slope(scheme: str, lam: float, sigma: float, dim: int, gamma: float) -> float:
    """Log do multiplicador por passo de E|X - a|^2 com consenso congelado."""
    if scheme == Scheme.EULER:
        return math.log((1.0 - lam * gamma) ** 2 + sigma ** 2 * gamma)
    if scheme == Scheme.SPLITTING:
        return -2.0 * lam * gamma + math.log(1.0 + sigma ** 2 * gamma)
    if scheme == Scheme.EXACT_GBM:
        return (-2.0 * lam + sigma ** 2) * gamma
    if scheme == Scheme.ISOTROPIC_EULER:
        return math.log((1.0 - lam * gamma) ** 2 + dim * sigma ** 2 * gamma)
    raise InputError(f"Esquema desconhecido: {scheme}")


def _ols_slope(y: np.ndarray) -> float:
    t = np.arange(y.shape[0], dtype=float)
    return float(np.polyfit(t, y, 1)[0])


def anchored_decay_experiment(scheme: str, lam: float, sigma: float, d: int, n_particles: int,
                              n_steps: int, gamma: float, seed: int,
                              init_std: float = 1.0) -> AnchoredDecayResult:
    """
    Simula o esquema com x̄* = a fixo e ajusta a inclinação de log E|X - a|^2.

    O ajuste por mínimos quadrados usa os últimos 80% dos passos; o erro
    padrão vem da dispersão das inclinações de 10 grupos de partículas.

    Args:
        scheme (str): euler, splitting, exact_gbm ou isotropic_euler.
        lam, sigma, gamma (float): Parâmetros do passo.
        d (int): Dimensão.
        n_particles (int): Pelo menos 1000.
        n_steps (int): Número de passos.
        seed (int): Semente mestre.
        init_std (float): Desvio da nuvem inicial em torno de a.

    Returns:
        AnchoredDecayResult: Inclinação, erro padrão e valor esperado.
    """
    if scheme not in Scheme.anchored():
        raise InputError(f"Esquema desconhecido: {scheme}")
    if n_particles < MIN_ANCHORED_PARTICLES:
        raise InputError(f"O experimento ancorado exige ao menos {MIN_ANCHORED_PARTICLES} partículas")
    if n_steps < 2:
        raise InputError("O experimento ancorado exige ao menos 2 passos")

    streams = split_streams(seed)
    anchor = np.ones(d)
    ensemble = Ensemble(positions=anchor + init_std * streams.init.standard_normal((n_particles, d)),
                        seed=seed, rng=streams.noise)
    if not np.any(ensemble.positions != anchor):
        raise DomainError("Ensemble degenerado: todas as partículas estão no ponto de ancoragem")

    everyone = np.arange(n_particles)
    groups = np.array_split(everyone, ANCHORED_REPLICATE_GROUPS)
    if scheme == Scheme.ISOTROPIC_EULER:
        iso = IsotropicCboParams(lam=lam, sigma=sigma, gamma=gamma, batch_particles=n_particles)

        def update(ens, targets, x_star, lam_, sigma_, gamma_, rng):
            isotropic_cbo_step(ens, targets, x_star, iso, rng)
    else:
        update = get_update(scheme)

    log_total = np.empty(n_steps + 1)
    log_groups = np.empty((ANCHORED_REPLICATE_GROUPS, n_steps + 1))
    for t in range(n_steps + 1):
        sq = np.sum((ensemble.positions - anchor) ** 2, axis=1)
        moments = np.array([sq[g].mean() for g in groups])
        if not np.all(moments > 0) or not np.all(np.isfinite(moments)):
            raise DomainError(f"Segundo momento degenerado no passo {t}")
        log_total[t] = math.log(sq.mean())
        log_groups[:, t] = np.log(moments)
        if t < n_steps:
            update(ensemble, everyone, anchor, lam, sigma, gamma, ensemble.rng)

    first = int((1.0 - ANCHORED_FIT_FRACTION) * n_steps)
    slope = _ols_slope(log_total[first:])
    group_slopes = np.array([_ols_slope(row[first:]) for row in log_groups])
    stderr = float(group_slopes.std(ddof=1) / math.sqrt(len(groups)))
    expected = expected_anchored_slope(scheme, lam, sigma, d, gamma)

    logger.debug(f"Ancorado {scheme} d={d}: inclinação {slope:.6g} ± {stderr:.2g}, esperado {expected:.6g}")
    return AnchoredDecayResult(
        scheme=scheme, lam=lam, sigma=sigma, dim=d, gamma=gamma, n_particles=n_particles,
        n_steps=n_steps, slope=slope, stderr=stderr, expected=expected, log_moments=log_total.tolist(),
    )


def semidiscrete_trace(obj: ObjectiveHandle, params: CboParams, init_spec: InitSpec, seed: int,
                       refresh_every: int, n_refreshes: int) -> MomentTrace:
    """
    Dinâmica com x̄* recalculado só a cada refresh_every sub-passos, com
    todas as partículas em cada cálculo e em cada atualização.

    Com refresh_every=1 e M=N reproduz o laço padrão com a mesma semente.
    Os cronogramas são indexados pelo número de sub-passos.
    """
    params.validate()
    if int(refresh_every) < 1:
        raise InputError(f"refresh_every deve ser pelo menos 1, recebido {refresh_every}")
    ensemble, streams = make_ensemble(init_spec, params.n_particles, obj.dim, seed)
    update = get_update(params.scheme)
    m = data_batch_size(obj, params.batch_data)
    everyone = np.arange(params.n_particles)

    trace = MomentTrace()
    x_star = None
    for s in range(int(refresh_every) * int(n_refreshes)):
        sigma_s = params.sigma_at(s)
        beta_s = params.beta_at(s)
        if s % refresh_every == 0:
            data_indices = sample_data_batch(obj.n_samples, m, streams.data).indices if m else None
            losses = evaluate_members(obj, ensemble.positions, everyone, data_indices, s)
            x_star = compute_consensus(params.consensus_mode, ensemble.positions, everyone,
                                       losses, beta_s).x_star
            trace.append(s, ensemble.variance(), log_mean_weight(losses, beta_s), x_star)
        update(ensemble, everyone, x_star, params.lam, sigma_s, params.gamma, ensemble.rng)
    return trace


def laplace_gap_experiment(obj: ObjectiveHandle, sampler_spec: InitSpec, betas: Sequence[float],
                           n_samples: int, seed: int,
                           include_minimizer: bool = False) -> List[Tuple[float, float]]:
    """
    Lacuna entre a estimativa soft-min de uma amostra fixa e L_m conhecido.

    Args:
        obj (ObjectiveHandle): Objetivo com minimizador conhecido.
        sampler_spec (InitSpec): Distribuição das amostras.
        betas (Sequence[float]): Temperaturas inversas.
        n_samples (int): Tamanho da amostra.
        seed (int): Semente.
        include_minimizer (bool): Substitui a primeira amostra por x*.

    Returns:
        List[Tuple[float, float]]: Pares (beta, lacuna).
    """
    if obj.known_min is None:
        raise UnsupportedOperationError(f"A função objetivo '{obj.name}' não tem minimizador conhecido")
    x_min, l_min = obj.known_min
    samples = sampler_spec.sample(int(n_samples), obj.dim, split_streams(seed).init)
    if include_minimizer:
        samples[0] = x_min
    losses = obj.eval_batch(samples)
    return [(float(beta), laplace_estimate(losses, beta) - l_min) for beta in betas]


def certificate_for(obj: ObjectiveHandle, params: CboParams, init_spec: InitSpec, seed: int,
                    l_min: Optional[float] = None, c_l: Optional[float] = None) -> ConvergenceCertificate:
    """Certificado para o ensemble inicial da semente, com L_m e c_L do objetivo quando omitidos."""
    if l_min is None:
        if obj.known_min is None:
            raise UnsupportedOperationError(f"Informe L_m: '{obj.name}' não tem mínimo conhecido")
        l_min = obj.known_min[1]
    if c_l is None:
        if obj.known_c_L is None:
            raise UnsupportedOperationError(f"Informe c_L: '{obj.name}' não tem cota de curvatura conhecida")
        c_l = obj.known_c_L
    ensemble, _ = make_ensemble(init_spec, params.n_particles, obj.dim, seed)
    return compute_certificate(ensemble, obj, params, l_min, c_l)
