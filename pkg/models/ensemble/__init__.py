# models/ensemble/__init__.py
"""
Pacote para o ensemble de partículas.
"""

from models.ensemble.ensemble import Ensemble, InitSpec, RngStreams, split_streams

__all__ = ['Ensemble', 'InitSpec', 'RngStreams', 'split_streams']
