# models/params/__init__.py
"""
Pacote para os parâmetros dos métodos de otimização.
"""

from models.params.cbo_params import CboParams, IsotropicCboParams, Schedule, SgdParams, StallConfig

__all__ = ['CboParams', 'IsotropicCboParams', 'Schedule', 'SgdParams', 'StallConfig']
