#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Parâmetros do método CBO, cronogramas de annealing e configuração de reinícios.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

from core.constants import (
    ConsensusMode, HeavisideMode, Scheme, ScheduleKind, STALL_CONSECUTIVE, UpdateMode
)
from models.base_model import BaseModel
from utils.validation import (
    raise_on_errors, validate_form, validate_integer, validate_min_value,
    validate_positive, validate_select
)


@dataclass
class Schedule(BaseModel):
    """
    Cronograma de um parâmetro ao longo das iterações externas k.

    O valor base (sigma_0 ou beta_0) vem do próprio CboParams.
    """

    kind: str = ScheduleKind.CONSTANT
    decay: float = 1.0

    def at(self, base: float, k: int) -> float:
        """
        Valor do parâmetro na iteração k.

        log_decay usa log(k+2) para não dividir por zero em k=0.
        """
        if self.kind == ScheduleKind.CONSTANT:
            return base
        if self.kind == ScheduleKind.LOG_DECAY:
            return base / math.log(k + 2)
        if self.kind == ScheduleKind.LOG_GROWTH:
            return base * math.log(k + 2)
        if self.kind == ScheduleKind.GEOMETRIC:
            return base * self.decay ** k
        raise ValueError(f"Tipo de cronograma desconhecido: {self.kind}")

    def validate(self, prefix: str = "schedule") -> None:
        errors = validate_form(self.to_dict(), {
            "kind": [lambda v: validate_select(v, ScheduleKind.values(), "kind")],
            "decay": [lambda v: validate_positive(v, "decay")],
        })
        raise_on_errors(errors, prefix)


@dataclass
class StallConfig(BaseModel):
    """Detecção de consenso parado e perturbação browniana de todas as partículas."""

    enabled: bool = False
    epsilon_stall: float = 1e-6
    kick_sigma: float = 1.0
    max_restarts: int = 10
    consecutive: int = STALL_CONSECUTIVE

    def validate(self, prefix: str = "stall") -> None:
        errors = validate_form(self.to_dict(), {
            "epsilon_stall": [lambda v: validate_positive(v, "epsilon_stall")],
            "kick_sigma": [lambda v: validate_min_value(v, 0.0, "kick_sigma")],
            "max_restarts": [
                lambda v: validate_integer(v, "max_restarts"),
                lambda v: validate_min_value(v, 0, "max_restarts"),
            ],
            "consecutive": [
                lambda v: validate_integer(v, "consecutive"),
                lambda v: validate_min_value(v, 1, "consecutive"),
            ],
        })
        raise_on_errors(errors, prefix)


@dataclass
class CboParams(BaseModel):
    """Parâmetros do algoritmo CBO com mini-lotes em dois níveis."""

    lam: float = 1.0
    sigma: float = 1.0
    beta: float = 30.0
    gamma: float = 0.01
    n_particles: int = 100
    batch_particles: int = 20
    # None significa usar todos os dados (perda completa)
    batch_data: Optional[int] = None
    update_mode: str = UpdateMode.PARTIAL
    consensus_mode: str = ConsensusMode.WEIGHTED
    scheme: str = Scheme.EULER
    epsilon_stop: float = 1e-3
    max_iters: int = 10000
    sigma_schedule: Schedule = field(default_factory=Schedule)
    beta_schedule: Schedule = field(default_factory=Schedule)
    stall: StallConfig = field(default_factory=StallConfig)
    # Grava um ponto de consenso a cada trace_stride lotes
    trace_stride: int = 1

    def validate(self, prefix: str = "params") -> "CboParams":
        """
        Valida os parâmetros, lançando ConfigError com o nome do campo.

        Returns:
            CboParams: A própria instância, para encadeamento.
        """
        errors = validate_form(self.to_dict(), {
            "lam": [lambda v: validate_positive(v, "lambda")],
            "sigma": [lambda v: validate_min_value(v, 0.0, "sigma")],
            "beta": [lambda v: validate_positive(v, "beta")],
            "gamma": [lambda v: validate_positive(v, "gamma")],
            "n_particles": [
                lambda v: validate_integer(v, "n_particles"),
                lambda v: validate_min_value(v, 1, "n_particles"),
            ],
            "batch_particles": [
                lambda v: validate_integer(v, "batch_particles"),
                lambda v: validate_min_value(v, 1, "batch_particles"),
                lambda v: (f"O campo batch_particles ({v}) não pode exceder n_particles ({self.n_particles})."
                           if v > self.n_particles else None),
            ],
            "batch_data": [
                lambda v: validate_integer(v, "batch_data"),
                lambda v: validate_min_value(v, 1, "batch_data"),
            ],
            "update_mode": [lambda v: validate_select(v, UpdateMode.values(), "update_mode")],
            "consensus_mode": [lambda v: validate_select(v, ConsensusMode.values(), "consensus_mode")],
            "scheme": [lambda v: validate_select(v, Scheme.values(), "scheme")],
            "epsilon_stop": [lambda v: validate_positive(v, "epsilon_stop")],
            "max_iters": [
                lambda v: validate_integer(v, "max_iters"),
                lambda v: validate_min_value(v, 1, "max_iters"),
            ],
            "trace_stride": [
                lambda v: validate_integer(v, "trace_stride"),
                lambda v: validate_min_value(v, 1, "trace_stride"),
            ],
        })
        raise_on_errors(errors, prefix)
        self.sigma_schedule.validate(f"{prefix}.sigma_schedule")
        self.beta_schedule.validate(f"{prefix}.beta_schedule")
        self.stall.validate(f"{prefix}.stall")
        return self

    def sigma_at(self, k: int) -> float:
        return self.sigma_schedule.at(self.sigma, k)

    def beta_at(self, k: int) -> float:
        return self.beta_schedule.at(self.beta, k)


@dataclass
class IsotropicCboParams(BaseModel):
    """Parâmetros do CBO original com ruído isotrópico."""

    lam: float = 1.0
    sigma: float = 1.0
    beta: float = 30.0
    gamma: float = 0.01
    batch_particles: int = 20
    heaviside_mode: str = HeavisideMode.OFF
    heaviside_epsilon: float = 0.1

    @classmethod
    def from_cbo_params(cls, params: CboParams, heaviside_mode: str = HeavisideMode.OFF,
                        heaviside_epsilon: float = 0.1) -> "IsotropicCboParams":
        """Mesmos parâmetros do CBO por componente, para comparação direta."""
        return cls(
            lam=params.lam, sigma=params.sigma, beta=params.beta, gamma=params.gamma,
            batch_particles=params.batch_particles, heaviside_mode=heaviside_mode,
            heaviside_epsilon=heaviside_epsilon,
        )

    def validate(self, prefix: str = "params") -> "IsotropicCboParams":
        errors = validate_form(self.to_dict(), {
            "lam": [lambda v: validate_positive(v, "lambda")],
            "sigma": [lambda v: validate_min_value(v, 0.0, "sigma")],
            "beta": [lambda v: validate_positive(v, "beta")],
            "gamma": [lambda v: validate_positive(v, "gamma")],
            "batch_particles": [
                lambda v: validate_integer(v, "batch_particles"),
                lambda v: validate_min_value(v, 1, "batch_particles"),
            ],
            "heaviside_mode": [lambda v: validate_select(v, HeavisideMode.values(), "heaviside_mode")],
            "heaviside_epsilon": [lambda v: validate_positive(v, "heaviside_epsilon")],
        })
        raise_on_errors(errors, prefix)
        return self


@dataclass
class SgdParams(BaseModel):
    """Parâmetros do SGD com mini-lotes."""

    gamma: float = 0.01
    batch_size: int = 20
    max_iters: int = 10000
    seed: int = 0

    def validate(self, prefix: str = "params") -> "SgdParams":
        errors = validate_form(self.to_dict(), {
            "gamma": [lambda v: validate_positive(v, "gamma")],
            "batch_size": [
                lambda v: validate_integer(v, "batch_size"),
                lambda v: validate_min_value(v, 1, "batch_size"),
            ],
            "max_iters": [
                lambda v: validate_integer(v, "max_iters"),
                lambda v: validate_min_value(v, 0, "max_iters"),
            ],
        })
        raise_on_errors(errors, prefix)
        return self
