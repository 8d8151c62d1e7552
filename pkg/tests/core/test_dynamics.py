#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Testes dos esquemas de atualização, do critério de parada e da
perturbação de reinício.
"""

import math

import numpy as np
import pytest

from core.dynamics import (
    StallTracker, check_stop, compute_consensus, euler_update, evaluate_members, exact_gbm_update,
    get_update, splitting_update, stall_kick
)
from core.errors import InputError, ObjectiveEvaluationError
from models.ensemble.ensemble import Ensemble
from models.objective.objective_handle import ObjectiveHandle
from models.params.cbo_params import StallConfig


class ZeroNoise:
    """Gerador que devolve apenas zeros, para isolar a deriva."""

    def standard_normal(self, size=None):
        return np.zeros(size)


class FixedNoise:
    """Gerador que devolve sempre a mesma matriz de sorteios."""

    def __init__(self, draws):
        self.draws = np.asarray(draws, dtype=float)

    def standard_normal(self, size=None):
        assert tuple(size) == self.draws.shape
        return self.draws.copy()


def make_ensemble(positions, seed=0):
    return Ensemble(positions=np.asarray(positions, dtype=float), seed=seed)


class TestEulerUpdate:
    """Passo de Euler-Maruyama com ruído por componente."""

    def test_noise_free_full_drift_lands_on_consensus(self, rng):
        ensemble = make_ensemble(rng.normal(size=(6, 3)))
        x_star = np.array([0.5, -1.0, 2.0])
        euler_update(ensemble, np.arange(6), x_star, lam=2.0, sigma=0.0, gamma=0.5, rng=rng)
        np.testing.assert_array_equal(ensemble.positions, np.tile(x_star, (6, 1)))

    def test_coordinate_at_consensus_is_fixed(self, rng):
        x_star = np.array([1.0, 2.0])
        ensemble = make_ensemble([[1.0, 5.0], [3.0, 2.0]])
        euler_update(ensemble, [0, 1], x_star, lam=1.0, sigma=5.0, gamma=0.1, rng=rng)
        assert ensemble.positions[0, 0] == 1.0
        assert ensemble.positions[1, 1] == 2.0

    def test_only_targets_move(self, rng):
        start = rng.normal(size=(5, 2))
        ensemble = make_ensemble(start)
        euler_update(ensemble, [1, 3], np.zeros(2), lam=1.0, sigma=1.0, gamma=0.1, rng=rng)
        np.testing.assert_array_equal(ensemble.positions[[0, 2, 4]], start[[0, 2, 4]])
        assert not np.allclose(ensemble.positions[[1, 3]], start[[1, 3]])

    def test_one_step_second_moment(self, rng):
        lam, sigma, gamma = 1.0, 0.3, 0.01
        ensemble = make_ensemble(np.ones((100000, 1)))
        euler_update(ensemble, np.arange(100000), np.zeros(1), lam, sigma, gamma, rng)
        expected = (1.0 - lam * gamma) ** 2 + sigma ** 2 * gamma
        assert np.mean(ensemble.positions ** 2) == pytest.approx(expected, rel=0.02)

    def test_invalid_inputs(self, rng):
        ensemble = make_ensemble(np.zeros((2, 2)))
        with pytest.raises(InputError):
            euler_update(ensemble, [0], np.zeros(2), 1.0, 1.0, 0.0, rng)
        with pytest.raises(InputError):
            euler_update(ensemble, [0], np.zeros(3), 1.0, 1.0, 0.1, rng)
        with pytest.raises(InputError):
            euler_update(ensemble, [0], np.array([0.0, np.nan]), 1.0, 1.0, 0.1, rng)


class TestSplittingUpdate:
    """Fluxo exato da deriva seguido do ruído."""

    def test_noise_free_step_scales_by_exponential(self, rng):
        start = rng.normal(size=(4, 3))
        x_star = rng.normal(size=3)
        ensemble = make_ensemble(start)
        splitting_update(ensemble, np.arange(4), x_star, lam=1.5, sigma=0.0, gamma=0.2, rng=rng)
        np.testing.assert_allclose(ensemble.positions - x_star, (start - x_star) * math.exp(-0.3),
                                   rtol=1e-14)

    def test_stiff_drift_collapses(self, rng):
        start = rng.normal(size=(4, 2))
        x_star = np.zeros(2)
        ensemble = make_ensemble(start)
        splitting_update(ensemble, np.arange(4), x_star, lam=500.0, sigma=0.0, gamma=0.1, rng=rng)
        distance = np.abs(ensemble.positions - x_star)
        assert np.all(distance <= math.exp(-50.0) * np.abs(start - x_star) * (1.0 + 1e-12))

    def test_gap_to_euler_is_second_order(self, rng):
        start = rng.normal(size=(3, 2))
        x_star = np.zeros(2)
        gaps = []
        for h in (1e-2, 1e-3):
            euler = make_ensemble(start)
            split = make_ensemble(start)
            euler_update(euler, np.arange(3), x_star, lam=1.0, sigma=0.0, gamma=h, rng=rng)
            splitting_update(split, np.arange(3), x_star, lam=1.0, sigma=0.0, gamma=h, rng=rng)
            gaps.append(np.max(np.abs(euler.positions - split.positions)))
        assert gaps[0] / gaps[1] == pytest.approx(100.0, rel=0.05)


class TestExactGbmUpdate:
    """Solução exata do movimento browniano geométrico."""

    def test_zero_draw_gives_deterministic_factor(self, rng):
        start = rng.normal(size=(5, 2))
        x_star = np.array([0.3, 0.7])
        ensemble = make_ensemble(start)
        lam, sigma, gamma = 1.0, 0.8, 0.05
        exact_gbm_update(ensemble, np.arange(5), x_star, lam, sigma, gamma, ZeroNoise())
        factor = math.exp((-lam - 0.5 * sigma ** 2) * gamma)
        np.testing.assert_allclose(ensemble.positions - x_star, (start - x_star) * factor, rtol=1e-14)

    def test_sign_of_displacement_is_kept(self, rng):
        start = rng.normal(size=(200, 3))
        ensemble = make_ensemble(start)
        exact_gbm_update(ensemble, np.arange(200), np.zeros(3), 1.0, 3.0, 0.5, rng)
        np.testing.assert_array_equal(np.sign(ensemble.positions), np.sign(start))

    def test_one_step_mean_multiplier(self, rng):
        lam, sigma, gamma = 1.0, 1.0, 0.1
        ensemble = make_ensemble(np.ones((100000, 1)))
        exact_gbm_update(ensemble, np.arange(100000), np.zeros(1), lam, sigma, gamma, rng)
        assert np.mean(ensemble.positions) == pytest.approx(math.exp(-lam * gamma), rel=0.02)

    def test_get_update(self):
        assert get_update("euler") is euler_update
        assert get_update("splitting") is splitting_update
        assert get_update("exact_gbm") is exact_gbm_update
        with pytest.raises(InputError):
            get_update("runge_kutta")


class TestCoordinateDecoupling:
    """Cada coordenada depende só de X_i, x̄*_i e do i-ésimo sorteio."""

    @pytest.mark.parametrize("update", [euler_update, splitting_update, exact_gbm_update])
    def test_permuting_coordinates_permutes_output(self, rng, update):
        start = rng.normal(size=(4, 5))
        x_star = rng.normal(size=5)
        draws = rng.normal(size=(4, 5))
        perm = np.array([3, 0, 4, 1, 2])

        plain = make_ensemble(start)
        update(plain, np.arange(4), x_star, 1.0, 0.7, 0.1, FixedNoise(draws))
        permuted = make_ensemble(start[:, perm])
        update(permuted, np.arange(4), x_star[perm], 1.0, 0.7, 0.1, FixedNoise(draws[:, perm]))

        np.testing.assert_allclose(permuted.positions, plain.positions[:, perm], rtol=1e-14)

    @pytest.mark.parametrize("update", [euler_update, splitting_update, exact_gbm_update])
    def test_changing_one_coordinate_leaves_others(self, rng, update):
        start = rng.normal(size=(3, 4))
        x_star = rng.normal(size=4)
        draws = rng.normal(size=(3, 4))
        plain = make_ensemble(start)
        update(plain, np.arange(3), x_star, 1.0, 0.7, 0.1, FixedNoise(draws))

        other_start, other_star, other_draws = start.copy(), x_star.copy(), draws.copy()
        other_start[:, 2] += 1.0
        other_star[2] -= 0.5
        other_draws[:, 2] *= -1.0
        changed = make_ensemble(other_start)
        update(changed, np.arange(3), other_star, 1.0, 0.7, 0.1, FixedNoise(other_draws))

        keep = [0, 1, 3]
        np.testing.assert_allclose(changed.positions[:, keep], plain.positions[:, keep], rtol=1e-14)
        assert not np.allclose(changed.positions[:, 2], plain.positions[:, 2])


class TestCheckStop:
    """Critério (1/d)|Δx̄*|² <= ε."""

    def test_identical_vectors(self):
        assert check_stop(np.ones(3), np.ones(3), 1e-12)

    def test_boundary_is_inclusive(self):
        assert check_stop(np.zeros(4), np.array([0.2, 0.0, 0.0, 0.0]), 0.01)

    def test_above_threshold(self):
        assert not check_stop(np.zeros(1), np.array([0.2]), 0.01)

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            check_stop(np.zeros(2), np.zeros(3), 0.1)


class TestStallKick:
    """Perturbação browniana de todas as partículas."""

    def test_zero_kick_leaves_ensemble(self, rng):
        start = rng.normal(size=(10, 3))
        ensemble = make_ensemble(start)
        assert stall_kick(ensemble, StallConfig(enabled=True, kick_sigma=0.0), rng)
        np.testing.assert_array_equal(ensemble.positions, start)

    def test_degenerate_ensemble_gets_kick_variance(self, rng):
        ensemble = make_ensemble(np.full((20000, 2), 3.0))
        stall_kick(ensemble, StallConfig(enabled=True, kick_sigma=0.5), rng)
        np.testing.assert_allclose(ensemble.positions.var(axis=0, ddof=1), 0.25, rtol=0.05)

    def test_mean_displacement_is_centered(self, rng):
        start = rng.normal(size=(25000, 4))
        ensemble = make_ensemble(start)
        stall_kick(ensemble, StallConfig(enabled=True, kick_sigma=0.7), rng)
        displacement = ensemble.positions - start
        assert abs(displacement.mean()) <= 3.0 * 0.7 / math.sqrt(displacement.size)

    def test_restarts_are_counted_and_exhausted(self, rng):
        config = StallConfig(enabled=True, kick_sigma=1.0, max_restarts=2)
        tracker = StallTracker(config)
        ensemble = make_ensemble(np.zeros((3, 1)))
        assert stall_kick(ensemble, config, rng, tracker)
        assert stall_kick(ensemble, config, rng, tracker)
        frozen = ensemble.positions.copy()
        assert not stall_kick(ensemble, config, rng, tracker)
        assert tracker.restarts == 2
        np.testing.assert_array_equal(ensemble.positions, frozen)

    def test_disabled_config(self, rng):
        with pytest.raises(InputError):
            stall_kick(make_ensemble(np.zeros((2, 1))), StallConfig(enabled=False), rng)


class TestStallTracker:
    """Contagem de passos parados e perdas nas estagnações."""

    def test_consecutive_steps(self):
        tracker = StallTracker(StallConfig(enabled=True, consecutive=3))
        assert [tracker.observe(s) for s in (True, True, False, True, True, True)] == \
            [False, False, False, False, False, True]
        tracker.reset_streak()
        assert tracker.streak == 0

    def test_record_requires_relative_decrease(self):
        tracker = StallTracker(StallConfig(enabled=True))
        assert tracker.record(10.0)
        assert tracker.record(5.0)
        assert not tracker.record(5.0)
        assert tracker.losses == [10.0, 5.0, 5.0]


class TestEvaluateMembers:
    """Perdas de um lote e diagnóstico de valores não finitos."""

    def test_non_finite_loss_names_particle(self):
        def batch_loss(X, indices=None):
            return np.where(X[:, 0] > 1.5, np.inf, X[:, 0])

        obj = ObjectiveHandle(name="broken", dim=1, batch_loss=batch_loss)
        positions = np.array([[0.0], [1.0], [2.0], [3.0]])
        with pytest.raises(ObjectiveEvaluationError) as info:
            evaluate_members(obj, positions, np.array([1, 2, 3]), None, iteration=7)
        assert info.value.particle == 2
        assert info.value.iteration == 7
        assert info.value.to_record() == {"particle": 2, "iteration": 7, "value": math.inf}

    def test_compute_consensus_modes(self):
        positions = np.array([[0.0], [1.0], [2.0]])
        members = np.array([0, 2])
        losses = np.array([3.0, 1.0])
        argmin = compute_consensus("argmin", positions, members, losses, 1.0)
        np.testing.assert_array_equal(argmin.x_star, [2.0])
        weighted = compute_consensus("weighted", positions, members, losses, 1e-12)
        np.testing.assert_allclose(weighted.x_star, [1.0])
