# models/batch/__init__.py
"""
Pacote para o escalonamento de lotes de partículas e de dados.
"""

from models.batch.batch_plan import BatchPlan, DataBatch

__all__ = ['BatchPlan', 'DataBatch']
