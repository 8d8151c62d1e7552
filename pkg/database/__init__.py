# database/__init__.py
"""
Módulo para o armazenamento das execuções em SQLite
"""
from database.db_manager import DatabaseManager

__all__ = ['DatabaseManager']
