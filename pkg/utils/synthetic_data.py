#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Conjunto sintético de blobs gaussianos com 10 classes, usado no lugar do
MNIST quando os arquivos IDX não estão disponíveis.
"""

from typing import Tuple

import numpy as np

from core.errors import InputError
from models.ensemble.ensemble import make_generator
from models.objective.softmax_net import LabeledData


def make_blobs(n_train: int, n_test: int, dim: int = 64, n_classes: int = 10,
               spread: float = 0.5, seed: int = 0) -> Tuple[LabeledData, LabeledData]:
    """
    Gera treino e teste a partir dos mesmos centros.

    Os centros são uniformes em [0, 1]^dim; cada amostra é um centro mais
    ruído N(0, spread²) por coordenada. As classes se alternam (i mod K),
    então toda classe aparece nos dois conjuntos.

    Args:
        n_train (int): Amostras de treino.
        n_test (int): Amostras de teste.
        dim (int): Dimensão das entradas.
        n_classes (int): Número de classes.
        spread (float): Desvio do ruído.
        seed (int): Semente.

    Returns:
        Tuple[LabeledData, LabeledData]: (treino, teste).
    """
    if n_train < 1 or n_test < 0:
        raise InputError(f"Tamanhos inválidos: treino {n_train}, teste {n_test}")
    if dim < 1 or n_classes < 2:
        raise InputError(f"dim={dim} e n_classes={n_classes} inválidos")
    if spread < 0:
        raise InputError(f"spread deve ser não negativo, recebido {spread}")

    rng = make_generator(np.random.SeedSequence(seed))
    centers = rng.uniform(0.0, 1.0, size=(n_classes, dim))

    def draw(n: int) -> LabeledData:
        classes = np.arange(n) % n_classes
        inputs = centers[classes] + spread * rng.standard_normal((n, dim))
        return LabeledData.from_class_indices(inputs, classes, n_classes)

    return draw(n_train), draw(n_test)
