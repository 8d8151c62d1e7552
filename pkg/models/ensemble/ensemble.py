#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Modelo para representar o ensemble de partículas e sua distribuição inicial.
"""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from core.constants import InitKind
from core.errors import InputError
from models.base_model import BaseModel

# Número de fluxos aleatórios derivados da semente mestre
N_STREAMS = 5

MAX_SEED = 2 ** 64


class RngStreams(NamedTuple):
    """Fluxos independentes derivados de uma única semente."""
    init: np.random.Generator
    noise: np.random.Generator
    batching: np.random.Generator
    data: np.random.Generator
    kick: np.random.Generator


def make_generator(seed_sequence: np.random.SeedSequence) -> np.random.Generator:
    """Gerador baseado em contador (Philox), reprodutível entre plataformas."""
    return np.random.Generator(np.random.Philox(seed_sequence))


def split_streams(seed: int) -> RngStreams:
    """
    Divide a semente mestre em fluxos independentes.

    Args:
        seed (int): Semente de 64 bits.

    Returns:
        RngStreams: Fluxos para inicialização, ruído, lotes de partículas, lotes de dados
            e perturbações.
    """
    if not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) < MAX_SEED:
        raise InputError(f"A semente deve ser um inteiro de 64 bits, recebido {seed!r}")
    children = np.random.SeedSequence(int(seed)).spawn(N_STREAMS)
    return RngStreams(*(make_generator(child) for child in children))


@dataclass
class InitSpec(BaseModel):
    """Especificação da distribuição inicial rho_0."""

    kind: str = InitKind.UNIFORM
    low: float = -3.0
    high: float = 3.0
    mean: float = 0.0
    std: float = 1.0
    # Para o tipo explícito: posições completas ou um valor constante
    positions: Optional[List[List[float]]] = None
    value: Optional[float] = None

    def sample(self, n_particles: int, dim: int, rng: np.random.Generator) -> np.ndarray:
        """
        Gera as posições iniciais.

        Args:
            n_particles (int): Número de partículas N.
            dim (int): Dimensão d.
            rng (np.random.Generator): Fluxo de inicialização.

        Returns:
            np.ndarray: Matriz N×d.
        """
        if self.kind == InitKind.UNIFORM:
            if not self.high > self.low:
                raise InputError("A caixa uniforme exige high > low")
            return rng.uniform(self.low, self.high, size=(n_particles, dim))

        if self.kind == InitKind.GAUSSIAN:
            if self.std < 0:
                raise InputError("O desvio padrão inicial deve ser não negativo")
            return self.mean + self.std * rng.standard_normal((n_particles, dim))

        if self.kind == InitKind.EXPLICIT:
            if self.positions is not None:
                positions = np.array(self.positions, dtype=float)
                if positions.ndim == 1:
                    positions = positions.reshape(1, -1)
                if positions.shape[0] == 1 and n_particles > 1:
                    positions = np.repeat(positions, n_particles, axis=0)
                if positions.shape != (n_particles, dim):
                    raise InputError(
                        f"Posições explícitas com forma {positions.shape}, esperado {(n_particles, dim)}"
                    )
                return positions
            return np.full((n_particles, dim), float(self.value or 0.0))

        raise InputError(f"Tipo de inicialização desconhecido: {self.kind}")


@dataclass
class Ensemble:
    """
    Posições das N partículas em R^d e o fluxo aleatório que as move.

    O ensemble pertence a um único laço de otimização por vez.
    """

    positions: np.ndarray
    seed: int = 0
    rng: np.random.Generator = field(default=None, repr=False)

    def __post_init__(self):
        self.positions = np.array(self.positions, dtype=float)
        if self.positions.ndim != 2 or self.positions.shape[0] < 1 or self.positions.shape[1] < 1:
            raise InputError(f"As posições devem formar uma matriz N×d, recebido {self.positions.shape}")
        if not np.all(np.isfinite(self.positions)):
            raise InputError("As posições iniciais contêm valores não finitos")
        if self.rng is None:
            self.rng = split_streams(self.seed).noise

    @classmethod
    def create(cls, init_spec: InitSpec, n_particles: int, dim: int, seed: int) -> "Ensemble":
        """
        Constrói um ensemble reprodutível a partir da semente.

        Args:
            init_spec (InitSpec): Distribuição inicial.
            n_particles (int): Número de partículas.
            dim (int): Dimensão.
            seed (int): Semente mestre.

        Returns:
            Ensemble: Ensemble com o fluxo de ruído já separado.
        """
        if n_particles < 1 or dim < 1:
            raise InputError("N e d devem ser inteiros positivos")
        streams = split_streams(seed)
        positions = init_spec.sample(n_particles, dim, streams.init)
        return cls(positions=positions, seed=int(seed), rng=streams.noise)

    @property
    def n_particles(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    def variance(self) -> float:
        """V = média de |X - E X|^2 sobre as partículas."""
        centered = self.positions - self.positions.mean(axis=0)
        return float(np.mean(np.sum(centered ** 2, axis=1)))
