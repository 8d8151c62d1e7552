#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Ponto de entrada da linha de comando dos experimentos CBO.

    python main.py run configs/quadratic_smoke.json
"""

import os
import sys


def setup_environment() -> None:
    """Coloca a raiz do projeto no sys.path, para rodar de qualquer diretório."""
    root_dir = os.path.dirname(os.path.abspath(__file__))
    if root_dir not in sys.path:
        sys.path.insert(0, root_dir)


if __name__ == "__main__":
    setup_environment()

    # Importa após configurar o ambiente
    from core.app import main

    main(sys.argv[1:])
