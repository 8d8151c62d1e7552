#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Gravação e releitura dos CSV de resultados de um experimento.

Todos os arquivos ficam em <output_dir>/<nome>_<sufixo>.csv, com cabeçalho,
separador ',', UTF-8 e floats em repr.
"""

import os
from typing import Any, Dict, List, Optional

from core.errors import CboError, FormatError
from models.report.success_table import SuccessRow, SuccessTable
from models.run.run_record import RunRecord
from services.log_service import get_logger
from utils.file_utils import read_csv_file, write_csv_file, write_json_file

logger = get_logger("export")

RUN_COLUMNS = ["method", "repetition", "seed", "success", "final_distance", "iterations", "wall_ms", "stop_reason"]
SUMMARY_COLUMNS = ["method", "runs", "success_rate", "mean_distance", "mean_iterations", "mean_wall_ms"]
TRAINING_COLUMNS = ["epoch", "test_accuracy", "train_loss_estimate", "wall_ms"]


class ExportService:
    """Serviço para exportar os resultados de um experimento"""

    def __init__(self, output_dir: str, experiment: str):
        self.output_dir = output_dir
        self.experiment = experiment

    def path(self, suffix: str, extension: str = "csv") -> str:
        return os.path.join(self.output_dir, f"{self.experiment}_{suffix}.{extension}")

    def export_rows(self, suffix: str, rows: List[Dict[str, Any]], columns: List[str]) -> str:
        """
        Grava linhas num CSV.

        Args:
            suffix (str): Sufixo do nome do arquivo.
            rows (List[Dict[str, Any]]): Linhas, já na ordem final.
            columns (List[str]): Colunas, na ordem do cabeçalho.

        Returns:
            str: Caminho do arquivo gravado.
        """
        file_path = self.path(suffix)
        if not write_csv_file(file_path, [{c: row[c] for c in columns} for row in rows], columns):
            raise CboError(f"Falha ao gravar {file_path}")
        logger.debug(f"{len(rows)} linhas gravadas em {file_path}")
        return file_path

    def export_runs(self, records: List[RunRecord]) -> str:
        """CSV por execução, ordenado por método (ordem da configuração) e repetição."""
        return self.export_rows("runs", [r.to_dict() for r in records], RUN_COLUMNS)

    def export_summary(self, table: SuccessTable) -> str:
        return self.export_rows("summary", [row.to_dict() for row in table.rows], SUMMARY_COLUMNS)

    def export_training(self, method: str, rows: List[Dict[str, Any]]) -> str:
        return self.export_rows(f"{method}_training", rows, TRAINING_COLUMNS)

    def export_config(self, echo: Dict[str, Any]) -> str:
        """Grava a configuração completa, com os padrões preenchidos."""
        file_path = self.path("config", "json")
        if not write_json_file(file_path, echo):
            raise CboError(f"Falha ao gravar {file_path}")
        return file_path


def _read(file_path: str, columns: List[str]) -> List[Dict[str, str]]:
    rows = read_csv_file(file_path)
    if rows is None:
        raise CboError(f"Falha ao ler {file_path}")
    if rows and list(rows[0].keys()) != columns:
        raise FormatError(f"{file_path}: colunas {list(rows[0].keys())}, esperado {columns}",
                          value=list(rows[0].keys()))
    return rows


def read_runs(file_path: str, experiment: Optional[str] = None) -> List[RunRecord]:
    """Relê um CSV por execução gravado por ExportService.export_runs."""
    name = experiment or os.path.basename(file_path).rsplit("_runs.csv", 1)[0]
    return [
        RunRecord(
            experiment=name,
            method=row["method"],
            repetition=int(row["repetition"]),
            seed=int(row["seed"]),
            success=bool(int(row["success"])),
            final_distance=float(row["final_distance"]),
            iterations=int(row["iterations"]),
            wall_ms=float(row["wall_ms"]),
            stop_reason=row["stop_reason"],
        )
        for row in _read(file_path, RUN_COLUMNS)
    ]


def read_summary(file_path: str, experiment: str = "") -> SuccessTable:
    """Relê um CSV de resumo gravado por ExportService.export_summary."""
    rows = [
        SuccessRow(
            method=row["method"],
            runs=int(row["runs"]),
            success_rate=float(row["success_rate"]),
            mean_distance=float(row["mean_distance"]),
            mean_iterations=float(row["mean_iterations"]),
            mean_wall_ms=float(row["mean_wall_ms"]),
        )
        for row in _read(file_path, SUMMARY_COLUMNS)
    ]
    return SuccessTable(experiment=experiment, rows=rows)


def read_training(file_path: str) -> List[Dict[str, float]]:
    """Relê um CSV de treino: epoch inteiro, demais colunas float."""
    return [
        {"epoch": int(row["epoch"]), **{c: float(row[c]) for c in TRAINING_COLUMNS[1:]}}
        for row in _read(file_path, TRAINING_COLUMNS)
    ]
