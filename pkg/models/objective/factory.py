#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Construção das funções objetivo a partir da seção "objective" da configuração.
"""

from typing import Optional

from core.constants import ObjectiveType
from core.errors import ConfigError
from models.experiment.experiment_config import ObjectiveConfig
from models.objective.objective_handle import ObjectiveHandle
from models.objective.oscillatory import OscillatorySpec
from models.objective.quadratic import QuadraticSpec
from models.objective.rastrigin import AckleySpec, RastriginSpec
from models.objective.softmax_net import LabeledData, SoftmaxNetSpec


def build_spec(config: ObjectiveConfig, data: Optional[LabeledData] = None):
    """
    Cria a especificação do objetivo configurado.

    Args:
        config (ObjectiveConfig): Seção "objective".
        data (LabeledData, opcional): Dados de treino, exigidos por softmax_net.

    Returns:
        A especificação (RastriginSpec, OscillatorySpec, ...), que expõe handle().
    """
    if config.type == ObjectiveType.RASTRIGIN:
        return RastriginSpec(dim=config.dim, shift=config.shift, lift=config.lift)
    if config.type == ObjectiveType.ACKLEY:
        return AckleySpec(dim=config.dim, shift=config.shift)
    if config.type == ObjectiveType.OSCILLATORY:
        return OscillatorySpec(
            n_samples=config.n_samples,
            sample_seed=config.sample_seed,
            noise_variance=config.noise_variance,
            samples=config.samples,
        )
    if config.type == ObjectiveType.QUADRATIC:
        return QuadraticSpec(
            dim=config.dim,
            center=config.center,
            offset=config.offset,
            sample_centers=config.sample_centers,
        )
    if config.type == ObjectiveType.SOFTMAX_NET:
        if data is None:
            raise ConfigError("O objetivo softmax_net exige dados de treino", field="training")
        return SoftmaxNetSpec(data=data, n_classes=config.n_classes)
    raise ConfigError(f"Tipo de objetivo desconhecido: {config.type}", field="objective.type")


def build_objective(config: ObjectiveConfig, data: Optional[LabeledData] = None) -> ObjectiveHandle:
    return build_spec(config, data).handle()
