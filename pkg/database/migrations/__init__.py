# database/migrations/__init__.py
"""
Módulo para migrações de esquema do banco de dados
"""