#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Modelo para representar uma repetição de um experimento de sucesso.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from core.constants import StopReason
from models.base_model import BaseModel
from models.report.run_report import RunReport


@dataclass
class RunRecord(BaseModel):
    """Uma linha do CSV por execução e da tabela runs."""

    _table = "runs"
    _columns = ["id", "experiment", "method", "repetition", "seed", "success",
                "final_distance", "iterations", "wall_ms", "stop_reason"]

    experiment: str
    method: str
    repetition: int
    seed: int
    success: bool
    final_distance: float
    iterations: int
    wall_ms: float
    stop_reason: str
    id: Optional[int] = None

    def __post_init__(self):
        self.success = bool(self.success)
        # NaN é gravado como NULL pelo SQLite
        self.final_distance = float("nan") if self.final_distance is None else float(self.final_distance)

    @classmethod
    def from_report(cls, experiment: str, repetition: int, report: RunReport,
                    minimizer: Optional[np.ndarray], threshold: float, timing: bool = True) -> "RunRecord":
        """
        Avalia o sucesso de uma execução contra o minimizador conhecido.

        Sucesso exige |x̄*_i - x*_i| < threshold em todas as coordenadas;
        uma execução abortada nunca tem sucesso. Sem minimizador
        conhecido não há sucesso nem distância.

        Args:
            experiment (str): Nome do experimento.
            repetition (int): Índice da repetição.
            report (RunReport): Resultado da execução.
            minimizer (np.ndarray, opcional): Minimizador conhecido x*.
            threshold (float): Meia largura da caixa de sucesso.
            timing (bool): Se False, o tempo é gravado como 0.

        Returns:
            RunRecord: Registro da execução.
        """
        if (minimizer is None or report.stop_reason == StopReason.OBJECTIVE_FAILURE
                or not report.consensus_trace):
            success, distance = False, float("nan")
        else:
            gap = np.abs(np.asarray(report.final_consensus, dtype=float) - np.asarray(minimizer, dtype=float))
            success = bool(np.all(gap < threshold))
            distance = float(np.linalg.norm(gap))
        return cls(
            experiment=experiment,
            method=report.method,
            repetition=repetition,
            seed=report.seed,
            success=success,
            final_distance=distance,
            iterations=report.iterations_used,
            wall_ms=report.wall_ms if timing else 0.0,
            stop_reason=report.stop_reason,
        )

    @classmethod
    def get_by_method(cls, db_manager, experiment: str, method: str) -> List['RunRecord']:
        """
        Obtém as repetições de um método, na ordem das repetições.

        Args:
            db_manager: Gerenciador de banco de dados.
            experiment (str): Nome do experimento.
            method (str): Nome do método.

        Returns:
            List[RunRecord]: Registros encontrados.
        """
        return cls.get_all(db_manager, "experiment = ? AND method = ?", (experiment, method), "repetition")

    @property
    def has_distance(self) -> bool:
        return not math.isnan(self.final_distance)
