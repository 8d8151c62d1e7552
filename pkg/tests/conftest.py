#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuração comum dos testes.

Testes marcados com @pytest.mark.slow (experimentos com centenas de
execuções) só rodam com a opção --runslow.
"""

import os
import sys

import numpy as np
import pytest

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT_DIR not in sys.path:
    sys.path.insert(0, ROOT_DIR)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="executa também os testes lentos")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: experimento longo, exige --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="use --runslow para executar")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(42)
