# models/objective/__init__.py
"""
Pacote para as funções objetivo.
"""

from models.objective.objective_handle import ObjectiveHandle
from models.objective.oscillatory import OscillatorySpec, oscillatory_eval, oscillatory_grad
from models.objective.quadratic import QuadraticSpec
from models.objective.rastrigin import AckleySpec, RastriginSpec, rastrigin_eval
from models.objective.softmax_net import (
    LabeledData, SoftmaxNetSpec, cross_entropy, softmax_forward, test_accuracy
)

__all__ = [
    'AckleySpec',
    'LabeledData',
    'ObjectiveHandle',
    'OscillatorySpec',
    'QuadraticSpec',
    'RastriginSpec',
    'SoftmaxNetSpec',
    'cross_entropy',
    'oscillatory_eval',
    'oscillatory_grad',
    'rastrigin_eval',
    'softmax_forward',
    'test_accuracy'
]
