#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hierarquia de exceções da biblioteca.
"""

from typing import Any, Dict, Optional


class CboError(Exception):
    """Erro base de todas as falhas conhecidas da biblioteca."""


class DomainError(CboError, ValueError):
    """Entrada fora do domínio da operação (ex.: conjunto vazio)."""


class InputError(CboError, ValueError):
    """Entrada inválida (valores não finitos, dimensões incompatíveis)."""


class UnsupportedOperationError(CboError):
    """A função objetivo não oferece o recurso solicitado."""


class ConfigError(CboError, ValueError):
    """Erro de configuração, identificando o campo responsável."""

    def __init__(self, message: str, field: Optional[str] = None,
                 suggestion: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.suggestion = suggestion
        self.line = line
        super().__init__(message)


class FormatError(CboError, ValueError):
    """Arquivo em formato inesperado (ex.: número mágico IDX errado)."""

    def __init__(self, message: str, value: Any = None):
        self.value = value
        super().__init__(message)


class LengthError(FormatError):
    """Arquivo truncado ou com tamanho incoerente com o cabeçalho."""


class ConsistencyError(CboError, ValueError):
    """Arquivos que deveriam concordar entre si não concordam."""


class ObjectiveEvaluationError(CboError, RuntimeError):
    """A função objetivo retornou um valor não finito durante a execução."""

    def __init__(self, particle: int, iteration: int, value: float):
        self.particle = particle
        self.iteration = iteration
        self.value = value
        super().__init__(
            f"Valor não finito ({value}) da função objetivo na partícula {particle}, "
            f"iteração {iteration}"
        )

    def to_record(self) -> Dict[str, Any]:
        """Registro de diagnóstico da execução abortada."""
        return {"particle": self.particle, "iteration": self.iteration, "value": self.value}
