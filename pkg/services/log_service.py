#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuração dos logs da biblioteca: uma árvore de loggers com raiz "cbo",
saída no console e, opcionalmente, em arquivo diário.
"""

import logging
import os
from datetime import datetime
from typing import Optional

ROOT_LOGGER = "cbo"
LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def get_logger(area: str = "") -> logging.Logger:
    """
    Logger filho da árvore da biblioteca.

    Args:
        area (str): Nome da área, ex.: "optimizer" vira "cbo.optimizer".
    """
    return logging.getLogger(f"{ROOT_LOGGER}.{area}" if area else ROOT_LOGGER)


class LogService:
    """Classe para configurar os logs da biblioteca em console e arquivo"""

    def __init__(self, log_dir: Optional[str] = "logs", log_level: int = logging.INFO,
                 console: bool = True):
        self.log_dir = log_dir
        self.log_level = log_level
        self.console = console
        self.log_file = None
        self.logger = get_logger()

        self._configurar_logger()

    @classmethod
    def from_config(cls, config: dict, level_name: Optional[str] = None) -> "LogService":
        """
        Cria o serviço a partir da seção "logging" da configuração da aplicação.

        Args:
            config (dict): Configuração da aplicação.
            level_name (str, opcional): Nível vindo da linha de comando, prevalece sobre o arquivo.
        """
        section = config.get("logging", {})
        level = logging.getLevelName((level_name or section.get("level", "INFO")).upper())
        if not isinstance(level, int):
            level = logging.INFO
        log_dir = section.get("dir", "logs") if section.get("to_file", True) else None
        return cls(log_dir=log_dir, log_level=level, console=section.get("console", True))

    def _configurar_logger(self):
        """Configura o logger raiz da biblioteca, substituindo handlers anteriores"""
        self.logger.setLevel(self.log_level)
        self.logger.propagate = False

        # Remover handlers existentes para evitar duplicados
        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)
            handler.close()

        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

        if self.console:
            stream_handler = logging.StreamHandler()
            stream_handler.setFormatter(formatter)
            self.logger.addHandler(stream_handler)

        if self.log_dir:
            os.makedirs(self.log_dir, exist_ok=True)
            hoje = datetime.now().strftime("%Y-%m-%d")
            self.log_file = os.path.join(self.log_dir, f"cbo_{hoje}.log")
            file_handler = logging.FileHandler(self.log_file, encoding='utf-8')
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

