#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Estado do escalonador de lotes de partículas (resto R_k) e lote de dados A.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from models.base_model import BaseModel


@dataclass(frozen=True)
class BatchPlan(BaseModel):
    """
    Estado imutável do escalonador de lotes.

    O resto guarda os índices da permutação anterior que não completaram
    um lote de tamanho M; eles abrem a fila do próximo ciclo.
    """

    n_particles: int
    batch_size: int
    remainder: Tuple[int, ...] = ()

    @classmethod
    def initial(cls, n_particles: int, batch_size: int) -> "BatchPlan":
        return cls(n_particles=int(n_particles), batch_size=int(batch_size))


@dataclass(frozen=True)
class DataBatch(BaseModel):
    """Subconjunto de m índices distintos de amostras."""

    indices: np.ndarray = field(repr=False)

    def __post_init__(self):
        indices = np.array(self.indices, dtype=np.int64)
        indices.setflags(write=False)
        object.__setattr__(self, "indices", indices)

    @property
    def size(self) -> int:
        return int(self.indices.shape[0])
