#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Resultados dos diagnósticos de campo médio.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from models.base_model import BaseModel


@dataclass
class MomentTrace(BaseModel):
    """
    Momentos do ensemble nos instantes de atualização do consenso.

    times conta sub-passos; log_mass é log da média de e^{-beta L(X)}.
    """

    times: List[int] = field(default_factory=list)
    variance: List[float] = field(default_factory=list)
    log_mass: List[float] = field(default_factory=list)
    consensus: List[np.ndarray] = field(default_factory=list)

    def append(self, time: int, variance: float, log_mass: float, consensus: np.ndarray) -> None:
        self.times.append(int(time))
        self.variance.append(float(variance))
        self.log_mass.append(float(log_mass))
        self.consensus.append(np.array(consensus, dtype=float))

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {"time": t, "variance": v, "log_mass": lm}
            for t, v, lm in zip(self.times, self.variance, self.log_mass)
        ]


@dataclass
class ConvergenceCertificate(BaseModel):
    """Quantidades mu e nu da condição de convergência em campo médio."""

    mu: float
    nu: float
    mu_positive: bool
    nu_ok: bool
    variance0: float
    log_mass0: float
    l_min: float
    c_l: float
    lam: float
    sigma: float
    beta: float

    @property
    def nu_defined(self) -> bool:
        return not math.isnan(self.nu)

    @property
    def certified(self) -> bool:
        return self.mu_positive and self.nu_ok


@dataclass
class AnchoredDecayResult(BaseModel):
    """Inclinação ajustada de log E|X - a|^2 por passo, com consenso congelado."""

    scheme: str
    lam: float
    sigma: float
    dim: int
    gamma: float
    n_particles: int
    n_steps: int
    slope: float
    stderr: float
    expected: float
    log_moments: List[float] = field(default_factory=list, repr=False)

    @property
    def multiplier(self) -> float:
        return math.exp(self.slope)

    def within(self, rel: float = 0.02, n_se: float = 3.0) -> bool:
        """Concordância com a forma fechada: max(rel relativo, n_se erros padrão)."""
        tolerance = max(rel * abs(self.expected), n_se * self.stderr)
        return abs(self.slope - self.expected) <= tolerance
