#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Mini-lotes em dois níveis: lotes de partículas com resto carregado entre
permutações e lotes de dados para a estimativa não viesada da perda.
"""

from typing import List, Tuple

import numpy as np

from core.errors import ConfigError, UnsupportedOperationError
from models.batch.batch_plan import BatchPlan, DataBatch


def next_particle_batches(plan: BatchPlan, rng: np.random.Generator) -> Tuple[List[np.ndarray], BatchPlan]:
    """
    Corta os lotes de partículas da próxima iteração externa.

    Uma permutação nova de {0..N-1} é anexada ao resto; saem
    q = floor((N + |R|)/M) lotes consecutivos e a cauda vira o novo resto.

    Args:
        plan (BatchPlan): Estado atual do escalonador.
        rng (np.random.Generator): Fluxo de sorteio de lotes.

    Returns:
        Tuple[List[np.ndarray], BatchPlan]: Lotes (somente leitura) e o novo estado.
    """
    n, m = plan.n_particles, plan.batch_size
    if m < 1:
        raise ConfigError("O tamanho do lote de partículas deve ser pelo menos 1", field="batch_particles")
    if m > n:
        raise ConfigError(
            f"O tamanho do lote ({m}) excede o número de partículas ({n})", field="batch_particles"
        )

    queue = np.concatenate([np.asarray(plan.remainder, dtype=np.int64), rng.permutation(n)])
    q = queue.shape[0] // m

    batches = []
    for theta in range(q):
        batch = queue[theta * m:(theta + 1) * m].copy()
        batch.setflags(write=False)
        batches.append(batch)

    remainder = tuple(int(i) for i in queue[q * m:])
    return batches, BatchPlan(n_particles=n, batch_size=m, remainder=remainder)


def sample_data_batch(n: int, m: int, rng: np.random.Generator) -> DataBatch:
    """
    Sorteia m índices distintos de {0..n-1}, uniforme sobre os m-subconjuntos.
    """
    if m < 1:
        raise ConfigError("O tamanho do lote de dados deve ser pelo menos 1", field="batch_data")
    if m > n:
        raise ConfigError(
            f"O tamanho do lote de dados ({m}) excede o número de amostras ({n})", field="batch_data"
        )
    return DataBatch(indices=rng.choice(n, size=m, replace=False))


def minibatch_loss(obj, x: np.ndarray, batch: DataBatch) -> float:
    """
    Média das perdas por amostra no lote: (1/m) soma de l_i(x).

    Args:
        obj (ObjectiveHandle): Função objetivo em forma de soma finita.
        x (np.ndarray): Ponto de avaliação.
        batch (DataBatch): Índices das amostras.

    Returns:
        float: Estimativa da perda.
    """
    if not obj.is_finite_sum:
        raise UnsupportedOperationError(f"A função objetivo '{obj.name}' não é uma soma finita")
    x = np.asarray(x, dtype=float).reshape(1, -1)
    return float(obj.batch_loss(x, batch.indices)[0])
