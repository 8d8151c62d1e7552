#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Arquivo de configuração global da aplicação.
Contém configurações padrão e carrega personalização de config.json, se existir.
"""

import copy
import json
import os

# Configurações padrão
DEFAULT_CONFIG = {
    # Configurações de log
    "logging": {
        "level": "INFO",
        "console": True,
        "to_file": True,
        "dir": "logs"
    },

    # Diretórios de trabalho
    "paths": {
        "results": "results"
    },

    # Execução dos experimentos
    "runtime": {
        # Nome do banco de execuções dentro do diretório de saída
        "runs_db": "runs.db"
    }
}

# Versão da aplicação
APP_VERSION = "1.0.0"


def load_config():
    """Carrega configurações personalizadas de um arquivo JSON, se disponível."""
    config = copy.deepcopy(DEFAULT_CONFIG)

    config_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config.json')

    if os.path.exists(config_path):
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                user_config = json.load(f)

            # Mesclar configurações personalizadas com as padrões
            for section, settings in user_config.items():
                if section in config and isinstance(settings, dict):
                    config[section].update(settings)
                else:
                    config[section] = settings

        except (OSError, ValueError) as e:
            print(f"Erro ao carregar configurações: {e}")

    return config


# Carregar configurações na inicialização
CONFIG = load_config()
