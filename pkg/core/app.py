#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Classe principal da aplicação de linha de comando.

Subcomandos: run (taxas de sucesso), train (classificador), diag
(diagnósticos de campo médio) e validate (só valida a configuração).
Códigos de saída: 0 sucesso, 2 erro de configuração, 3 falha em execução.
"""

import argparse
import dataclasses
import sys
from typing import List, Optional

from config import APP_VERSION
from core.constants import ExitCode, ExperimentKind
from core.errors import CboError, ConfigError
from models.experiment.experiment_config import ExperimentConfig
from services.log_service import LogService, get_logger
from utils.config_reader import get_config, load_config

logger = get_logger("app")

# Tipo de experimento exigido por cada subcomando
COMMAND_KINDS = {
    "run": ExperimentKind.SUCCESS,
    "train": ExperimentKind.TRAINING,
    "diag": ExperimentKind.DIAGNOSTICS,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbo",
        description="Otimização baseada em consenso com ruído por componente e mini-lotes",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Nível de log (padrão: seção logging da configuração)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("run", "Experimento de taxa de sucesso"),
        ("train", "Treino do classificador softmax"),
        ("diag", "Diagnósticos de campo médio"),
        ("validate", "Valida a configuração sem executar"),
    ]:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("config", help="Arquivo JSON do experimento")
        if name != "validate":
            sub.add_argument("--output-dir", help="Substitui experiment.output_dir")
            sub.add_argument("--workers", type=int, help="Substitui experiment.workers")
    return parser


class App:
    """Classe principal da aplicação."""

    def __init__(self):
        """Inicializa a aplicação."""
        self.config = get_config()
        self.log_service = None

    def setup_logging(self, level_name: Optional[str] = None):
        """Configura os logs a partir da seção logging e da linha de comando."""
        self.log_service = LogService.from_config(self.config, level_name)
        return self.log_service

    @staticmethod
    def _apply_overrides(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
        changes = {}
        if getattr(args, "output_dir", None):
            changes["output_dir"] = args.output_dir
        if getattr(args, "workers", None) is not None:
            if args.workers < 1:
                raise ConfigError("--workers deve ser pelo menos 1", field="experiment.workers")
            changes["workers"] = args.workers
        if changes:
            config.experiment = dataclasses.replace(config.experiment, **changes)
        return config

    def dispatch(self, args: argparse.Namespace) -> None:
        """Carrega a configuração e executa o subcomando."""
        config = self._apply_overrides(load_config(args.config), args)

        if args.command == "validate":
            logger.info(
                f"Configuração válida: '{config.experiment.name}' ({config.experiment.kind}), "
                f"{len(config.methods)} método(s)"
            )
            return

        expected = COMMAND_KINDS[args.command]
        if config.experiment.kind != expected:
            raise ConfigError(
                f"O subcomando '{args.command}' exige experiment.kind = {expected}, "
                f"recebido {config.experiment.kind}",
                field="experiment.kind",
            )

        # Importado aqui para que validate não carregue matplotlib
        from services import experiment_service
        if args.command == "run":
            experiment_service.run_success_experiment(config)
        elif args.command == "train":
            experiment_service.run_training_experiment(config)
        else:
            experiment_service.run_diagnostics(config)

    def run(self, argv: Optional[List[str]] = None) -> int:
        """
        Executa a aplicação.

        Args:
            argv (List[str], opcional): Argumentos; padrão sys.argv[1:].

        Returns:
            int: Código de saída.
        """
        args = build_parser().parse_args(argv)
        self.setup_logging(args.log_level)
        try:
            self.dispatch(args)
        except ConfigError as e:
            hint = f" (você quis dizer '{e.suggestion}'?)" if e.suggestion and e.suggestion not in str(e) else ""
            logger.error(f"Erro de configuração: {e}{hint}")
            return ExitCode.CONFIG_ERROR
        except CboError as e:
            logger.error(f"Falha na execução: {e}")
            return ExitCode.RUNTIME_FAILURE
        except Exception:
            logger.exception("Falha inesperada")
            return ExitCode.RUNTIME_FAILURE
        return ExitCode.OK


def main(argv: Optional[List[str]] = None):
    """Função principal que inicializa e executa a aplicação."""
    sys.exit(App().run(argv))


if __name__ == "__main__":
    main()
