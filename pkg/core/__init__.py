# core/__init__.py
"""
Núcleo da biblioteca: constantes, exceções, consenso, lotes e dinâmica
das partículas. A interface de linha de comando fica em core.app.
"""
