#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Testes dos diagnósticos de campo médio.
"""

import math

import numpy as np
import pytest

from core.errors import InputError, UnsupportedOperationError
from models.ensemble.ensemble import Ensemble, InitSpec
from models.objective.objective_handle import ObjectiveHandle
from models.objective.quadratic import QuadraticSpec
from models.objective.rastrigin import RastriginSpec
from models.params.cbo_params import CboParams
from services.diagnostics_service import (
    anchored_decay_experiment, certificate_for, compute_certificate, expected_anchored_slope,
    laplace_gap_experiment, semidiscrete_trace
)
from services.optimizer_service import run_optimizer


class TestCertificate:
    """mu = 2λ - σ²/2 - σ² e^{-βL_m}/M_L(0) e nu."""

    def test_point_mass_at_minimizer(self):
        obj = RastriginSpec(dim=2).handle()
        ensemble = Ensemble(positions=np.zeros((10, 2)))
        cert = compute_certificate(ensemble, obj, CboParams(lam=1.0, sigma=0.1), 0.0, obj.known_c_L)
        assert cert.mu == pytest.approx(1.985)
        assert cert.nu == 0.0
        assert cert.mu_positive and cert.nu_ok and cert.certified

    def test_noise_free(self):
        obj = RastriginSpec(dim=1).handle()
        ensemble = Ensemble(positions=np.zeros((3, 1)))
        cert = compute_certificate(ensemble, obj, CboParams(lam=0.7, sigma=0.0), 0.0, 1.0)
        assert cert.mu == pytest.approx(1.4)
        assert cert.nu == 0.0

    def test_two_point_ensemble(self):
        obj = QuadraticSpec(dim=1).handle()
        ensemble = Ensemble(positions=np.array([[0.0], [1.0]]))
        params = CboParams(lam=1.0, sigma=0.5, beta=2.0)
        cert = compute_certificate(ensemble, obj, params, 0.0, 2.0)
        # M_L(0) = (1 + e^{-2})/2, V(0) = 1/4
        ratio = 2.0 / (1.0 + math.exp(-2.0))
        mu = 2.0 - 0.125 - 0.25 * ratio
        nu = 2.0 * 0.25 * 2.0 * 2.0 * (2.0 + 0.25) / mu * ratio ** 2
        assert cert.mu == pytest.approx(mu)
        assert cert.nu == pytest.approx(nu)
        assert cert.variance0 == pytest.approx(0.25)
        assert cert.log_mass0 == pytest.approx(math.log((1.0 + math.exp(-2.0)) / 2.0))

    def test_negative_mu_leaves_nu_undefined(self):
        obj = RastriginSpec(dim=1).handle()
        ensemble = Ensemble(positions=np.zeros((3, 1)))
        cert = compute_certificate(ensemble, obj, CboParams(lam=0.1, sigma=1.0), 0.0, 1.0)
        assert cert.mu < 0
        assert not cert.mu_positive
        assert not cert.nu_defined
        assert not cert.certified

    def test_monotone_in_parameters(self, rng):
        obj = RastriginSpec(dim=2).handle()
        ensemble = Ensemble(positions=rng.uniform(-1.0, 1.0, size=(200, 2)))
        mus = [compute_certificate(ensemble, obj, CboParams(lam=1.0, sigma=s), 0.0, 1.0).mu
               for s in (0.0, 0.2, 0.5, 1.0)]
        assert all(a > b for a, b in zip(mus, mus[1:]))
        by_lambda = [compute_certificate(ensemble, obj, CboParams(lam=lam, sigma=0.5), 0.0, 1.0).mu
                     for lam in (0.5, 1.0, 2.0)]
        assert all(a < b for a, b in zip(by_lambda, by_lambda[1:]))

    def test_invalid_inputs(self):
        obj = RastriginSpec(dim=1).handle()
        ensemble = Ensemble(positions=np.full((3, 1), 0.5))
        with pytest.raises(InputError):
            compute_certificate(ensemble, obj, CboParams(), 0.0, 0.0)
        with pytest.raises(InputError):
            compute_certificate(ensemble, obj, CboParams(), 100.0, 1.0)

    def test_certificate_for_uses_known_values(self):
        obj = RastriginSpec(dim=2).handle()
        cert = certificate_for(obj, CboParams(n_particles=50), InitSpec(), seed=1)
        assert cert.l_min == 0.0
        assert cert.c_l == obj.known_c_L
        without = ObjectiveHandle(name="plain", dim=1, batch_loss=lambda X, idx: np.sum(X ** 2, axis=1))
        with pytest.raises(UnsupportedOperationError):
            certificate_for(without, CboParams(n_particles=5, batch_particles=5), InitSpec(), seed=1)


class TestAnchoredDecay:
    """Inclinação de log E|X - a|^2 com consenso congelado."""

    def test_noise_free_euler_is_exact(self):
        result = anchored_decay_experiment("euler", 1.0, 0.0, 3, 1000, 20, 0.1, seed=0)
        assert result.slope == pytest.approx(2.0 * math.log(0.9), abs=1e-10)
        assert result.expected == pytest.approx(-0.21072103131565253)
        assert result.within()

    @pytest.mark.parametrize("scheme", ["euler", "splitting", "exact_gbm", "isotropic_euler"])
    @pytest.mark.parametrize("dim", [1, 5, 20])
    def test_matches_closed_form(self, scheme, dim):
        result = anchored_decay_experiment(scheme, 1.0, 0.3, dim, 10000, 200, 0.01, seed=dim)
        assert result.within(), (result.slope, result.expected, result.stderr)

    def test_exact_gbm_rate(self):
        result = anchored_decay_experiment("exact_gbm", 1.0, 1.0, 1, 10000, 50, 0.01, seed=3)
        assert result.expected == pytest.approx(-0.01)
        assert result.within()

    def test_isotropic_noise_grows_with_dimension(self):
        iso = anchored_decay_experiment("isotropic_euler", 1.0, 0.45, 20, 10000, 200, 0.01, seed=1)
        comp = anchored_decay_experiment("euler", 1.0, 0.45, 20, 10000, 200, 0.01, seed=1)
        assert iso.expected == pytest.approx(math.log(1.0206))
        assert iso.slope > 0 > comp.slope
        assert iso.multiplier > 1.0 > comp.multiplier

    def test_component_wise_rate_ignores_dimension(self):
        assert expected_anchored_slope("euler", 1.0, 0.3, 1, 0.01) == expected_anchored_slope("euler", 1.0, 0.3, 50, 0.01)
        slopes = [expected_anchored_slope("isotropic_euler", 1.0, 0.3, d, 0.01) for d in (1, 5, 20)]
        assert slopes[0] < slopes[1] < slopes[2]

    def test_contraction_when_drift_dominates(self):
        decay = anchored_decay_experiment("exact_gbm", 1.0, 1.0, 100, 10000, 100, 0.05, seed=7)
        assert decay.log_moments[-1] - decay.log_moments[0] <= -math.log(10.0)

    def test_growth_when_noise_dominates(self):
        # 2λ = 0.6 < σ² = 2.25: o segundo momento esperado cresce e^{8.25} em 100 passos
        assert 100 * expected_anchored_slope("exact_gbm", 0.3, 1.5, 1, 0.05) >= math.log(10.0)
        # A média amostral de log-normais com variância alta fica abaixo da esperança;
        # 3 * 10^6 coordenadas ainda mostram o crescimento de 10x
        growth = anchored_decay_experiment("exact_gbm", 0.3, 1.5, 300, 10000, 100, 0.05, seed=7)
        assert growth.log_moments[-1] - growth.log_moments[0] >= math.log(10.0)

    def test_growth_tracks_expectation_with_mild_noise(self):
        # Variância de log bem menor: a média amostral segue a esperança de perto
        growth = anchored_decay_experiment("exact_gbm", 0.05, 1.0, 100, 10000, 100, 0.025, seed=7)
        assert growth.log_moments[-1] - growth.log_moments[0] >= math.log(5.0)
        assert growth.slope > 0

    def test_slope_changes_sign_at_twice_lambda(self):
        # Tempo total curto (50 passos de 0.004): a média amostral ainda acompanha a esperança
        def slope(sigma_sq):
            return anchored_decay_experiment("exact_gbm", 1.0, math.sqrt(sigma_sq), 100, 10000, 50,
                                             0.004, seed=11).slope

        low, high = 1.9, 2.1
        assert slope(low) < 0 < slope(high)
        for _ in range(4):
            middle = 0.5 * (low + high)
            if slope(middle) < 0:
                low = middle
            else:
                high = middle
        assert 1.9 <= low < high <= 2.1
        assert high - low == pytest.approx(0.2 / 16)

    def test_invalid_inputs(self):
        with pytest.raises(InputError):
            anchored_decay_experiment("rk4", 1.0, 0.3, 1, 1000, 10, 0.01, seed=0)
        with pytest.raises(InputError):
            anchored_decay_experiment("euler", 1.0, 0.3, 1, 999, 10, 0.01, seed=0)
        with pytest.raises(InputError):
            anchored_decay_experiment("euler", 1.0, 0.3, 1, 1000, 1, 0.01, seed=0)
        with pytest.raises(InputError):
            expected_anchored_slope("rk4", 1.0, 0.3, 1, 0.01)


class TestSemidiscrete:
    """Consenso recalculado a cada refresh_every sub-passos."""

    def test_refresh_every_step_matches_optimizer(self):
        obj = RastriginSpec(dim=2).handle()
        params = CboParams(n_particles=30, batch_particles=30, update_mode="full", sigma=0.8,
                           gamma=0.05, epsilon_stop=1e-300, max_iters=15)
        trace = semidiscrete_trace(obj, params, InitSpec(), seed=6, refresh_every=1, n_refreshes=15)
        report = run_optimizer(obj, params, InitSpec(), seed=6)
        assert trace.times == list(range(15))
        for x_star, record in zip(trace.consensus, report.consensus_trace):
            np.testing.assert_allclose(x_star, record.x_star, rtol=1e-12)

    def test_variance_decays_when_drift_dominates(self):
        obj = QuadraticSpec(dim=10).handle()
        params = CboParams(lam=1.0, sigma=0.5, gamma=0.05, n_particles=1000, batch_particles=1000,
                           update_mode="full")
        trace = semidiscrete_trace(obj, params, InitSpec(kind="gaussian", std=1.0), seed=2,
                                   refresh_every=5, n_refreshes=20)
        variance = np.array(trace.variance)
        assert np.all(np.diff(variance[5:]) < 0)
        assert variance[-1] < 1e-2 * variance[0]

    def test_variance_grows_when_noise_dominates(self):
        obj = QuadraticSpec(dim=100).handle()
        params = CboParams(lam=0.05, sigma=1.0, gamma=0.025, n_particles=2000, batch_particles=2000,
                           update_mode="full", scheme="exact_gbm")
        trace = semidiscrete_trace(obj, params, InitSpec(kind="gaussian", std=1.0), seed=2,
                                   refresh_every=5, n_refreshes=20)
        assert trace.variance[-1] > 2.0 * trace.variance[0]

    def test_rows(self):
        obj = QuadraticSpec(dim=2).handle()
        params = CboParams(n_particles=10, batch_particles=10, update_mode="full")
        trace = semidiscrete_trace(obj, params, InitSpec(), seed=0, refresh_every=3, n_refreshes=4)
        assert [row["time"] for row in trace.rows()] == [0, 3, 6, 9]
        with pytest.raises(InputError):
            semidiscrete_trace(obj, params, InitSpec(), seed=0, refresh_every=0, n_refreshes=4)


class TestLaplaceGap:
    """Estimativa soft-min contra o mínimo conhecido."""

    def test_gap_shrinks_with_beta(self):
        obj = RastriginSpec(dim=1).handle()
        gaps = laplace_gap_experiment(obj, InitSpec(low=-3.0, high=3.0), [1.0, 10.0, 100.0, 1000.0],
                                      10000, seed=0)
        values = [gap for _, gap in gaps]
        assert all(v > 0 for v in values)
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] < 0.05

    def test_minimizer_in_sample(self):
        obj = RastriginSpec(dim=1).handle()
        ((beta, gap),) = laplace_gap_experiment(obj, InitSpec(), [1e4], 1000, seed=0, include_minimizer=True)
        assert beta == 1e4
        assert 0.0 <= gap <= math.log(1000) / 1e4

    def test_constant_loss(self):
        obj = ObjectiveHandle(name="flat", dim=1, batch_loss=lambda X, idx: np.full(X.shape[0], 2.0),
                              known_min=(np.zeros(1), 2.0))
        gaps = laplace_gap_experiment(obj, InitSpec(), [1.0, 50.0], 100, seed=0)
        assert [gap for _, gap in gaps] == [0.0, 0.0]

    def test_requires_known_minimum(self):
        obj = ObjectiveHandle(name="plain", dim=1, batch_loss=lambda X, idx: np.sum(X ** 2, axis=1))
        with pytest.raises(UnsupportedOperationError):
            laplace_gap_experiment(obj, InitSpec(), [1.0], 10, seed=0)
