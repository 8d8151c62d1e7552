#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tabela de taxas de sucesso por método.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from models.base_model import BaseModel


def _finite_mean(values: List[float]) -> float:
    """Média ignorando NaN (execuções abortadas não têm distância)."""
    finite = np.asarray(values, dtype=float)
    finite = finite[np.isfinite(finite)]
    return float(finite.mean()) if finite.size else float("nan")


@dataclass
class SuccessRow(BaseModel):
    """Agregado de R execuções de um método."""

    method: str
    runs: int
    success_rate: float
    mean_distance: float
    mean_iterations: float
    mean_wall_ms: float

    @classmethod
    def from_records(cls, method: str, records: List) -> "SuccessRow":
        """
        Agrega registros de execução (RunRecord) de um mesmo método.
        """
        if not records:
            return cls(method, 0, 0.0, float("nan"), float("nan"), float("nan"))
        return cls(
            method=method,
            runs=len(records),
            success_rate=float(np.mean([1.0 if r.success else 0.0 for r in records])),
            mean_distance=_finite_mean([r.final_distance for r in records]),
            mean_iterations=float(np.mean([r.iterations for r in records])),
            mean_wall_ms=float(np.mean([r.wall_ms for r in records])),
        )


@dataclass
class SuccessTable(BaseModel):
    """Linhas por método, na ordem da configuração."""

    experiment: str
    rows: List[SuccessRow] = field(default_factory=list)

    def get(self, method: str) -> Optional[SuccessRow]:
        for row in self.rows:
            if row.method == method:
                return row
        return None

    def rates(self) -> Dict[str, float]:
        return {row.method: row.success_rate for row in self.rows}
