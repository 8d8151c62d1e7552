#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Relatório de uma execução de otimização.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from models.base_model import BaseModel


@dataclass
class ConsensusRecord(BaseModel):
    """Um ponto do traço de consenso: iteração k, lote theta, x̄* e perda estimada."""

    iteration: int
    batch: int
    x_star: np.ndarray
    loss_estimate: float


@dataclass
class RunReport(BaseModel):
    """
    Resultado completo de uma execução (CBO, CBO isotrópico ou SGD).

    O último ponto de consenso sempre consta do traço, mesmo com
    trace_stride > 1.
    """

    method: str
    seed: int
    stop_reason: str = ""
    iterations_used: int = 0
    wall_time: float = 0.0
    consensus_trace: List[ConsensusRecord] = field(default_factory=list)
    restarts: int = 0
    # Perdas estimadas em x̄* registradas em cada detecção de estagnação
    stall_losses: List[float] = field(default_factory=list)
    final_positions: Optional[np.ndarray] = field(default=None, repr=False)
    # Registro de diagnóstico quando a execução foi abortada
    failure: Optional[Dict[str, Any]] = None

    @property
    def final_consensus(self) -> np.ndarray:
        if not self.consensus_trace:
            raise ValueError("Relatório sem pontos de consenso")
        return self.consensus_trace[-1].x_star

    @property
    def final_loss_estimate(self) -> float:
        if not self.consensus_trace:
            return float("nan")
        return self.consensus_trace[-1].loss_estimate

    @property
    def wall_ms(self) -> float:
        return self.wall_time * 1000.0
