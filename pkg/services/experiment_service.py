#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Execução dos experimentos configurados: taxas de sucesso, treino do
classificador e diagnósticos de campo médio.

Toda a aleatoriedade vem da política de sementes da configuração
(base_seed + r·seed_stride para a repetição r).
"""

import dataclasses
import math
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Dict, List, Tuple

import numpy as np

from config import APP_VERSION
from core.constants import MethodType, ObjectiveType, StopReason
from core.errors import ConfigError, ObjectiveEvaluationError
from database.db_manager import DatabaseManager
from models.ensemble.ensemble import split_streams
from models.experiment.experiment_config import ExperimentConfig, MethodConfig
from models.objective.factory import build_objective
from models.objective.objective_handle import ObjectiveHandle
from models.objective.softmax_net import LabeledData, SoftmaxNetSpec, test_accuracy
from models.params.cbo_params import CboParams
from models.report.run_report import RunReport
from models.report.success_table import SuccessRow, SuccessTable
from models.run.run_record import RunRecord
from services import plot_service
from services.baseline_service import run_isotropic_cbo, run_sgd
from services.diagnostics_service import (
    anchored_decay_experiment, certificate_for, laplace_gap_experiment, semidiscrete_trace
)
from services.export_service import ExportService
from services.log_service import get_logger
from services.optimizer_service import data_batch_size, make_ensemble, run_optimizer
from utils.config_reader import config_echo
from utils.idx_reader import load_idx
from utils.synthetic_data import make_blobs

logger = get_logger("experiment")


def run_method(obj: ObjectiveHandle, config: ExperimentConfig, method: MethodConfig, seed: int,
               callback=None, step_callback=None) -> RunReport:
    """
    Executa um método da configuração com a semente dada.

    Uma perda não finita encerra a execução com stop_reason
    objective_failure e o registro do erro em failure.
    """
    try:
        if method.type == MethodType.CBO:
            report = run_optimizer(obj, method.cbo, config.init, seed, callback=callback)
        elif method.type == MethodType.ISOTROPIC_CBO:
            report = run_isotropic_cbo(obj, method.cbo, config.init, seed, method.heaviside_mode,
                                       method.heaviside_epsilon, callback=callback)
        else:
            report = run_sgd(obj, method.sgd, config.init, seed, step_callback=step_callback)
    except ObjectiveEvaluationError as error:
        report = RunReport(method=method.name, seed=int(seed), stop_reason=StopReason.OBJECTIVE_FAILURE,
                           iterations_used=error.iteration, failure=error.to_record())
    report.method = method.name
    return report


def _run_repetition(config: ExperimentConfig, method_index: int, repetition: int) -> RunRecord:
    """Uma repetição independente; executada no processo trabalhador."""
    method = config.methods[method_index]
    obj = build_objective(config.objective)
    seed = config.experiment.seed_for(repetition)
    report = run_method(obj, config, method, seed)
    minimizer = obj.known_min[0] if obj.known_min is not None else None
    record = RunRecord.from_report(config.experiment.name, repetition, report, minimizer,
                                   config.success.threshold, config.experiment.timing)
    logger.debug(
        f"{method.name} r={repetition} semente={seed}: sucesso={record.success} "
        f"distância={record.final_distance:.4g} iterações={record.iterations}"
    )
    return record


def _persist(config: ExperimentConfig, records: List[RunRecord]) -> None:
    with DatabaseManager(output_dir=config.experiment.output_dir) as db:
        if not db.setup_database():
            logger.error("Não foi possível preparar o banco de execuções; registros não persistidos")
            return
        for record in records:
            if not record.save(db):
                logger.error(f"Falha ao persistir {record.method} r={record.repetition}")


def run_success_experiment(config: ExperimentConfig) -> SuccessTable:
    """
    R execuções independentes por método e a tabela de taxas de sucesso.

    Grava <nome>_runs.csv, <nome>_summary.csv e <nome>_config.json no
    diretório de saída; as repetições rodam num pool de processos quando
    workers > 1, mas só o processo principal grava arquivos.

    Args:
        config (ExperimentConfig): Configuração validada.

    Returns:
        SuccessTable: Uma linha por método, na ordem da configuração.
    """
    experiment = config.experiment
    obj = build_objective(config.objective)
    if config.success.enabled and obj.known_min is None:
        raise ConfigError(f"O critério de sucesso exige um minimizador conhecido, ausente em '{obj.name}'",
                          field="success")
    for method in config.methods:
        if method.type == MethodType.SGD and not obj.has_gradients:
            raise ConfigError(f"O método '{method.name}' (sgd) exige gradientes, ausentes em '{obj.name}'",
                              field="methods")

    exporter = ExportService(experiment.output_dir, experiment.name)
    exporter.export_config(config_echo(config))
    logger.info(
        f"Experimento '{experiment.name}' (v{APP_VERSION}): {len(config.methods)} método(s), "
        f"R={experiment.repetitions}, {experiment.workers} processo(s)"
    )

    jobs = [(i, r) for i in range(len(config.methods)) for r in range(experiment.repetitions)]
    results: Dict[Tuple[int, int], RunRecord] = {}
    if experiment.workers > 1:
        with ProcessPoolExecutor(max_workers=experiment.workers) as executor:
            futures = {executor.submit(_run_repetition, config, i, r): (i, r) for i, r in jobs}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
    else:
        for i, r in jobs:
            results[(i, r)] = _run_repetition(config, i, r)

    # Ordem determinística: método (ordem da configuração), depois repetição
    records = [results[job] for job in jobs]
    rows = []
    for i, method in enumerate(config.methods):
        method_records = [results[(i, r)] for r in range(experiment.repetitions)]
        rows.append(SuccessRow.from_records(method.name, method_records))
    table = SuccessTable(experiment=experiment.name, rows=rows)

    exporter.export_runs(records)
    exporter.export_summary(table)
    if experiment.persist:
        _persist(config, records)
    if experiment.plots:
        plot_service.plot_success_rates(table, exporter.path("success", "png"))

    for row in table.rows:
        logger.info(
            f"{row.method}: sucesso {row.success_rate:.2%} em {row.runs} execuções, "
            f"distância média {row.mean_distance:.4g}, {row.mean_iterations:.1f} iterações"
        )
    return table


def load_training_data(config: ExperimentConfig) -> Tuple[LabeledData, LabeledData]:
    """Treino e teste a partir dos arquivos IDX ou do gerador sintético."""
    training = config.training
    if training.uses_files:
        train = load_idx(training.train_images, training.train_labels, training.max_train or None)
        test = load_idx(training.test_images, training.test_labels, training.max_test or None)
        return train.to_labeled(), test.to_labeled()
    logger.info("Arquivos IDX não informados; usando blobs gaussianos sintéticos")
    return make_blobs(training.synthetic_train, training.synthetic_test, dim=training.synthetic_dim,
                      n_classes=config.objective.n_classes, spread=training.synthetic_spread,
                      seed=training.synthetic_seed)


def _train_method(spec: SoftmaxNetSpec, test: LabeledData, config: ExperimentConfig,
                  method: MethodConfig) -> List[Dict[str, float]]:
    """
    Treina um método e avalia a acurácia de teste em x̄* a cada época.

    Uma época são ceil(n/m) sorteios de lote de dados (um por lote de
    partículas no CBO, um por passo no SGD); com a perda completa, um
    sorteio por época.
    """
    obj = spec.handle()
    epochs = config.training.epochs
    seed = config.experiment.seed_for(0)
    timing = config.experiment.timing
    batch_data = method.sgd.batch_size if method.type == MethodType.SGD else method.cbo.batch_data
    m = data_batch_size(obj, batch_data)
    draws_per_epoch = math.ceil(obj.n_samples / m) if m else 1

    if method.is_particle_method:
        ensemble, _ = make_ensemble(config.init, method.cbo.n_particles, obj.dim, seed)
        x0 = ensemble.positions.mean(axis=0)
    else:
        x0 = config.init.sample(1, obj.dim, split_streams(seed).init)[0]
    rows = [{"epoch": 0, "test_accuracy": test_accuracy(spec, x0, test),
             "train_loss_estimate": float(obj.eval_batch(x0)[0]), "wall_ms": 0.0}]
    logger.info(f"{method.name} época 0: acurácia {rows[0]['test_accuracy']:.4f}")
    if epochs == 0:
        return rows

    start = time.perf_counter()
    draws = 0

    def end_of_draw(x_star: np.ndarray, loss_estimate: float) -> bool:
        nonlocal draws
        draws += 1
        if draws % draws_per_epoch:
            return False
        epoch = draws // draws_per_epoch
        rows.append({
            "epoch": epoch,
            "test_accuracy": test_accuracy(spec, x_star, test),
            "train_loss_estimate": loss_estimate,
            "wall_ms": (time.perf_counter() - start) * 1000.0 if timing else 0.0,
        })
        logger.info(f"{method.name} época {epoch}: acurácia {rows[-1]['test_accuracy']:.4f}")
        return epoch >= epochs

    budget = epochs * draws_per_epoch
    if method.is_particle_method:
        # Cada iteração externa tem ao menos um lote, logo um sorteio
        method = dataclasses.replace(method, cbo=dataclasses.replace(
            method.cbo, max_iters=max(method.cbo.max_iters, budget)))
        report = run_method(obj, config, method, seed,
                            callback=lambda k, theta, ens, point, loss: end_of_draw(point.x_star, loss))
    else:
        method = dataclasses.replace(method, sgd=dataclasses.replace(method.sgd, max_iters=budget))
        report = run_method(
            obj, config, method, seed,
            step_callback=lambda t, x, batch: end_of_draw(x, float(obj.eval_batch(x, batch.indices)[0])),
        )

    if report.stop_reason not in (StopReason.CALLBACK, StopReason.MAX_ITERS):
        logger.warning(f"{method.name} parou antes da época {epochs}: {report.stop_reason}")
    return rows


def run_training_experiment(config: ExperimentConfig) -> Dict[str, List[Dict[str, float]]]:
    """
    Treina o classificador softmax com cada método configurado.

    Grava <nome>_<método>_training.csv com as colunas epoch, test_accuracy,
    train_loss_estimate e wall_ms.

    Returns:
        Dict[str, List[Dict[str, float]]]: Linhas por método.
    """
    experiment = config.experiment
    train, test = load_training_data(config)
    if test.n_samples == 0:
        raise ConfigError("O conjunto de teste está vazio", field="training")
    spec = SoftmaxNetSpec(data=train, n_classes=config.objective.n_classes)
    logger.info(f"Treino '{experiment.name}': n={train.n_samples}, teste={test.n_samples}, d={spec.dim}")

    exporter = ExportService(experiment.output_dir, experiment.name)
    exporter.export_config(config_echo(config))
    curves = {}
    for method in config.methods:
        curves[method.name] = _train_method(spec, test, config, method)
        exporter.export_training(method.name, curves[method.name])
    if experiment.plots:
        plot_service.plot_training_curves(curves, exporter.path("training", "png"))
    return curves


def _diagnostic_params(config: ExperimentConfig) -> CboParams:
    for method in config.methods:
        if method.is_particle_method:
            return method.cbo
    return CboParams().validate()


def run_diagnostics(config: ExperimentConfig) -> Dict[str, str]:
    """
    Diagnósticos de campo médio habilitados na seção diagnostics.

    Usa os parâmetros do primeiro método de partículas (ou os padrões) e a
    semente base.

    Returns:
        Dict[str, str]: Caminho do CSV gravado por diagnóstico.
    """
    experiment = config.experiment
    diagnostics = config.diagnostics
    data = load_training_data(config)[0] if config.objective.type == ObjectiveType.SOFTMAX_NET else None
    obj = build_objective(config.objective, data)
    params = _diagnostic_params(config)
    seed = experiment.seed_for(0)
    exporter = ExportService(experiment.output_dir, experiment.name)
    exporter.export_config(config_echo(config))
    outputs: Dict[str, str] = {}

    if diagnostics.certificate.enabled:
        cert = certificate_for(obj, params, config.init, seed,
                               diagnostics.certificate.l_min, diagnostics.certificate.c_l)
        row = cert.to_dict()
        row["certified"] = cert.certified
        outputs["certificate"] = exporter.export_rows("certificate", [row], list(row.keys()))
        logger.info(f"Certificado: mu={cert.mu:.6g}, nu={cert.nu:.6g}, certificado={cert.certified}")

    if diagnostics.anchored.enabled:
        anchored = diagnostics.anchored
        results = [
            anchored_decay_experiment(scheme, anchored.lam, anchored.sigma, d, anchored.n_particles,
                                      anchored.n_steps, anchored.gamma, seed)
            for scheme in anchored.schemes for d in anchored.dims
        ]
        columns = ["scheme", "dim", "lam", "sigma", "gamma", "n_particles", "n_steps",
                   "slope", "stderr", "expected", "within"]
        rows = [{**r.to_dict(), "within": r.within()} for r in results]
        outputs["anchored"] = exporter.export_rows("anchored", rows, columns)
        if experiment.plots:
            plot_service.plot_anchored_moments([f"{r.scheme} d={r.dim}" for r in results],
                                               [r.log_moments for r in results],
                                               exporter.path("anchored", "png"))

    if diagnostics.semidiscrete.enabled:
        trace = semidiscrete_trace(obj, params, config.init, seed,
                                   diagnostics.semidiscrete.refresh_every, diagnostics.semidiscrete.n_refreshes)
        outputs["semidiscrete"] = exporter.export_rows("semidiscrete", trace.rows(),
                                                       ["time", "variance", "log_mass"])
        if experiment.plots:
            plot_service.plot_moment_trace(trace, exporter.path("semidiscrete", "png"))

    if diagnostics.laplace.enabled:
        laplace = diagnostics.laplace
        gaps = laplace_gap_experiment(obj, laplace.sampler, laplace.betas, laplace.n_samples, seed,
                                      laplace.include_minimizer)
        outputs["laplace"] = exporter.export_rows("laplace", [{"beta": b, "gap": g} for b, g in gaps],
                                                  ["beta", "gap"])

    logger.info(f"Diagnósticos gravados: {', '.join(sorted(outputs)) or 'nenhum'}")
    return outputs

