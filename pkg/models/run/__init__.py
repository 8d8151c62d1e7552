# models/run/__init__.py
"""
Pacote para o registro persistido de execuções.
"""

from models.run.run_record import RunRecord

__all__ = ['RunRecord']
