# models/experiment/__init__.py
"""
Pacote para a configuração de experimentos.
"""

from models.experiment.experiment_config import (
    DiagnosticsConfig, ExperimentConfig, ExperimentSection, MethodConfig,
    ObjectiveConfig, SuccessConfig, TrainingConfig
)

__all__ = [
    'DiagnosticsConfig',
    'ExperimentConfig',
    'ExperimentSection',
    'MethodConfig',
    'ObjectiveConfig',
    'SuccessConfig',
    'TrainingConfig'
]
