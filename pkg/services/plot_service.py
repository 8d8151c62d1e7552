#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Figuras opcionais dos experimentos (backend Agg, sem janela).
"""

import os
from typing import Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from models.report.diagnostics import MomentTrace  # noqa: E402
from models.report.success_table import SuccessTable  # noqa: E402
from services.log_service import get_logger  # noqa: E402
from utils.file_utils import ensure_directory  # noqa: E402

logger = get_logger("plots")

DPI = 150


def _save(figure, file_path: str) -> Optional[str]:
    if not ensure_directory(os.path.dirname(file_path) or "."):
        plt.close(figure)
        return None
    figure.tight_layout()
    figure.savefig(file_path, dpi=DPI)
    plt.close(figure)
    logger.debug(f"Figura gravada em {file_path}")
    return file_path


def plot_success_rates(table: SuccessTable, file_path: str) -> Optional[str]:
    """Barras com a taxa de sucesso de cada método."""
    figure, axis = plt.subplots(figsize=(6, 4))
    methods = [row.method for row in table.rows]
    rates = [row.success_rate for row in table.rows]
    axis.bar(methods, rates, color="tab:blue")
    axis.set_ylim(0.0, 1.0)
    axis.set_ylabel("taxa de sucesso")
    axis.set_title(table.experiment)
    axis.grid(True, axis="y", linestyle="--", alpha=0.3)
    return _save(figure, file_path)


def plot_training_curves(curves: Dict[str, List[Dict[str, float]]], file_path: str) -> Optional[str]:
    """Acurácia de teste por época, uma curva por método."""
    figure, axis = plt.subplots(figsize=(6, 4))
    for method, rows in curves.items():
        axis.plot([r["epoch"] for r in rows], [r["test_accuracy"] for r in rows], marker="o", label=method)
    axis.set_xlabel("época")
    axis.set_ylabel("acurácia de teste")
    axis.set_ylim(0.0, 1.0)
    axis.legend()
    axis.grid(True, linestyle="--", alpha=0.3)
    return _save(figure, file_path)


def plot_moment_trace(trace: MomentTrace, file_path: str) -> Optional[str]:
    """Variância V e massa log M_L ao longo dos sub-passos."""
    figure, (top, bottom) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    top.semilogy(trace.times, trace.variance, color="tab:blue")
    top.set_ylabel("V")
    bottom.plot(trace.times, trace.log_mass, color="tab:orange")
    bottom.set_ylabel("log M_L")
    bottom.set_xlabel("sub-passo")
    for axis in (top, bottom):
        axis.grid(True, linestyle="--", alpha=0.3)
    return _save(figure, file_path)


def plot_anchored_moments(labels: Sequence[str], log_moments: Sequence[Sequence[float]],
                          file_path: str) -> Optional[str]:
    """log E|X - a|^2 por passo, uma curva por esquema e dimensão."""
    figure, axis = plt.subplots(figsize=(6, 4))
    for label, values in zip(labels, log_moments):
        axis.plot(range(len(values)), values, label=label)
    axis.set_xlabel("passo")
    axis.set_ylabel("log E|X - a|²")
    axis.legend(fontsize="small")
    axis.grid(True, linestyle="--", alpha=0.3)
    return _save(figure, file_path)
