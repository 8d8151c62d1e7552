# models/report/__init__.py
"""
Pacote para os relatórios de execuções e diagnósticos.
"""

from models.report.consensus_point import ConsensusPoint
from models.report.diagnostics import AnchoredDecayResult, ConvergenceCertificate, MomentTrace
from models.report.run_report import ConsensusRecord, RunReport
from models.report.success_table import SuccessRow, SuccessTable

__all__ = [
    'AnchoredDecayResult',
    'ConsensusPoint',
    'ConsensusRecord',
    'ConvergenceCertificate',
    'MomentTrace',
    'RunReport',
    'SuccessRow',
    'SuccessTable'
]
