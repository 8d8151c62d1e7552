# models/__init__.py
"""
Pacote para os modelos de dados da biblioteca
"""

from models.base_model import BaseModel

__all__ = [
    'BaseModel'
]
