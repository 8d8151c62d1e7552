#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Testes da configuração dos logs: nível, handlers e arquivo diário.
"""

import logging

import pytest

from services.log_service import LogService, get_logger


@pytest.fixture(autouse=True)
def restore_root_logger():
    logger = logging.getLogger("cbo")
    yield
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()


class TestGetLogger:
    def test_children_of_library_root(self):
        assert get_logger().name == "cbo"
        assert get_logger("optimizer").name == "cbo.optimizer"


class TestLogService:
    """Configuração a partir da seção "logging"."""

    def test_file_and_level_from_config(self, tmp_path):
        config = {"logging": {"level": "debug", "console": False, "to_file": True,
                              "dir": str(tmp_path / "logs")}}
        service = LogService.from_config(config)
        assert service.logger.level == logging.DEBUG
        assert service.logger.propagate is False
        get_logger("test").info("mensagem de teste")
        for handler in service.logger.handlers:
            handler.flush()
        with open(service.log_file, encoding="utf-8") as f:
            assert "mensagem de teste" in f.read()
        assert service.log_file.startswith(str(tmp_path / "logs"))

    def test_command_line_level_wins(self):
        config = {"logging": {"level": "DEBUG", "to_file": False}}
        service = LogService.from_config(config, "warning")
        assert service.logger.level == logging.WARNING

    def test_unknown_level_falls_back_to_info(self):
        service = LogService.from_config({"logging": {"level": "verboso", "to_file": False}})
        assert service.logger.level == logging.INFO

    def test_no_file_when_disabled(self, tmp_path):
        service = LogService.from_config({"logging": {"to_file": False, "dir": str(tmp_path)}})
        assert service.log_file is None
        assert not list(tmp_path.iterdir())

    def test_reconfiguring_replaces_handlers(self, tmp_path):
        LogService(log_dir=str(tmp_path), console=True)
        service = LogService(log_dir=str(tmp_path), console=True)
        assert len(service.logger.handlers) == 2
        service = LogService(log_dir=None, console=False)
        assert service.logger.handlers == []
