#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Utilitário para leitura de configurações: a configuração da aplicação
(config.py + config.json) e os arquivos JSON de experimentos, lidos em
modo estrito.
"""

import dataclasses
import difflib
import json
import os
import sys
from typing import Any, Dict, Iterable, List, Optional

from core.constants import (
    ExperimentKind, HeavisideMode, InitKind, MethodType, ObjectiveType, Scheme
)
from core.errors import ConfigError
from models.ensemble.ensemble import InitSpec
from models.experiment.experiment_config import (
    AnchoredConfig, CertificateConfig, DiagnosticsConfig, ExperimentConfig, ExperimentSection,
    LaplaceConfig, MethodConfig, ObjectiveConfig, SemidiscreteConfig, SuccessConfig, TrainingConfig
)
from models.params.cbo_params import CboParams, Schedule, SgdParams, StallConfig
from utils.validation import (
    raise_on_errors, validate_boolean, validate_file_exists, validate_form, validate_integer,
    validate_min_value, validate_positive, validate_required, validate_select
)

SECTIONS = ["experiment", "objective", "init", "methods", "success", "training", "diagnostics"]

# Chaves aceitas na seção objective, por tipo
OBJECTIVE_KEYS = {
    ObjectiveType.RASTRIGIN: ["type", "dim", "shift", "lift"],
    ObjectiveType.ACKLEY: ["type", "dim", "shift"],
    ObjectiveType.OSCILLATORY: ["type", "n_samples", "sample_seed", "noise_variance", "samples"],
    ObjectiveType.QUADRATIC: ["type", "dim", "center", "offset", "sample_centers"],
    ObjectiveType.SOFTMAX_NET: ["type", "n_classes"],
}

CBO_KEYS = [
    "lambda", "sigma", "beta", "gamma", "n_particles", "batch_particles", "batch_data",
    "update_mode", "consensus_mode", "scheme", "epsilon_stop", "max_iters",
    "sigma_schedule", "beta_schedule", "stall", "trace_stride",
]
ISOTROPIC_KEYS = ["heaviside_mode", "heaviside_epsilon"]
SGD_KEYS = ["gamma", "batch_size", "max_iters"]


def get_config():
    """
    Obtém as configurações da aplicação.

    Returns:
        dict: Dicionário com as configurações.
    """
    try:
        # Adiciona o diretório raiz ao path para importação correta
        root_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        if root_dir not in sys.path:
            sys.path.insert(0, root_dir)

        from config import CONFIG
        return CONFIG
    except ImportError:
        return get_default_config()


def get_default_config():
    """
    Retorna as configurações padrão caso o módulo de configuração não esteja disponível.

    Returns:
        dict: Configurações padrão.
    """
    return {
        "logging": {"level": "INFO", "console": True, "to_file": False, "dir": "logs"},
        "paths": {"results": "results"},
        "runtime": {"runs_db": "runs.db"},
    }


def suggest(key: str, allowed: Iterable[str]) -> Optional[str]:
    """Chave válida mais parecida, para mensagens de erro."""
    matches = difflib.get_close_matches(key, list(allowed), n=1, cutoff=0.6)
    return matches[0] if matches else None


def check_keys(data: Any, allowed: List[str], section: str) -> Dict[str, Any]:
    """
    Garante que a seção é um objeto sem chaves desconhecidas.

    Raises:
        ConfigError: Com a chave mais parecida como sugestão.
    """
    if not isinstance(data, dict):
        raise ConfigError(f"A seção {section} deve ser um objeto JSON", field=section)
    for key in data:
        if key not in allowed:
            hint = suggest(key, allowed)
            message = f"Chave desconhecida '{key}' em {section}"
            if hint:
                message += f"; você quis dizer '{hint}'?"
            raise ConfigError(message, field=f"{section}.{key}", suggestion=hint)
    return data


def _field_names(cls) -> List[str]:
    return [f.name for f in dataclasses.fields(cls) if f.init]


def build_section(cls, data: Optional[Dict[str, Any]], section: str, allowed: Optional[List[str]] = None):
    """Cria a dataclass da seção com os padrões para as chaves ausentes."""
    data = {} if data is None else data
    check_keys(data, allowed or _field_names(cls), section)
    try:
        return cls(**data)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{section}: {e}", field=section) from e


def _parse_experiment(data: Any) -> ExperimentSection:
    experiment = build_section(ExperimentSection, data, "experiment")
    errors = validate_form(experiment.to_dict(), {
        "name": [lambda v: validate_required(v, "name")],
        "kind": [lambda v: validate_select(v, ExperimentKind.values(), "kind")],
        "repetitions": [
            lambda v: validate_integer(v, "repetitions"),
            lambda v: validate_min_value(v, 1, "repetitions"),
        ],
        "base_seed": [
            lambda v: validate_integer(v, "base_seed"),
            lambda v: validate_min_value(v, 0, "base_seed"),
        ],
        "seed_stride": [
            lambda v: validate_integer(v, "seed_stride"),
            lambda v: validate_min_value(v, 1, "seed_stride"),
        ],
        "output_dir": [lambda v: validate_required(v, "output_dir")],
        "workers": [
            lambda v: validate_integer(v, "workers"),
            lambda v: validate_min_value(v, 1, "workers"),
        ],
        "timing": [lambda v: validate_boolean(v, "timing")],
        "plots": [lambda v: validate_boolean(v, "plots")],
        "persist": [lambda v: validate_boolean(v, "persist")],
    })
    raise_on_errors(errors, "experiment")
    return experiment


def _parse_objective(data: Any) -> ObjectiveConfig:
    if not isinstance(data, dict):
        raise ConfigError("A seção objective é obrigatória e deve ser um objeto JSON", field="objective")
    kind = data.get("type")
    if kind not in OBJECTIVE_KEYS:
        hint = suggest(str(kind), OBJECTIVE_KEYS)
        raise ConfigError(
            f"objective.type: tipo '{kind}' inválido (opções: {', '.join(ObjectiveType.values())})",
            field="objective.type", suggestion=hint,
        )
    objective = build_section(ObjectiveConfig, data, "objective", OBJECTIVE_KEYS[kind])
    errors = validate_form(objective.to_dict(), {
        "dim": [
            lambda v: validate_integer(v, "dim"),
            lambda v: validate_min_value(v, 1, "dim"),
        ],
        "n_samples": [
            lambda v: validate_integer(v, "n_samples"),
            lambda v: validate_min_value(v, 1, "n_samples"),
        ],
        "sample_seed": [lambda v: validate_integer(v, "sample_seed")],
        "noise_variance": [lambda v: validate_min_value(v, 0.0, "noise_variance")],
        "n_classes": [
            lambda v: validate_integer(v, "n_classes"),
            lambda v: validate_min_value(v, 2, "n_classes"),
        ],
    })
    raise_on_errors(errors, "objective")
    return objective


def _parse_init(data: Any, section: str = "init") -> InitSpec:
    spec = build_section(InitSpec, data, section)
    errors = validate_form(spec.to_dict(), {
        "kind": [lambda v: validate_select(v, InitKind.values(), "kind")],
        "std": [lambda v: validate_min_value(v, 0.0, "std")],
    })
    if spec.kind == InitKind.UNIFORM and not spec.high > spec.low:
        errors.setdefault("high", "O campo high deve ser maior que low.")
    if spec.kind == InitKind.EXPLICIT and spec.positions is None and spec.value is None:
        errors.setdefault("positions", "O tipo explicit exige positions ou value.")
    raise_on_errors(errors, section)
    return spec


def _parse_cbo_params(data: Dict[str, Any], section: str) -> CboParams:
    kwargs = {key: value for key, value in data.items()
              if key not in ("sigma_schedule", "beta_schedule", "stall", "lambda", "batch_data")}
    if "lambda" in data:
        kwargs["lam"] = data["lambda"]
    batch_data = data.get("batch_data", "full")
    if batch_data != "full":
        if validate_integer(batch_data, "batch_data"):
            raise ConfigError(
                f"{section}.batch_data: use \"full\" ou um inteiro positivo", field=f"{section}.batch_data"
            )
        kwargs["batch_data"] = batch_data
    kwargs["sigma_schedule"] = build_section(Schedule, data.get("sigma_schedule"), f"{section}.sigma_schedule")
    kwargs["beta_schedule"] = build_section(Schedule, data.get("beta_schedule"), f"{section}.beta_schedule")
    kwargs["stall"] = build_section(StallConfig, data.get("stall"), f"{section}.stall")
    return CboParams(**kwargs).validate(section)


def _parse_method(data: Any, index: int) -> MethodConfig:
    section = f"methods[{index}]"
    if not isinstance(data, dict):
        raise ConfigError(f"{section} deve ser um objeto JSON", field=section)
    method_type = data.get("type", MethodType.CBO)
    error = validate_required(data.get("name"), "name") or validate_select(method_type, MethodType.values(), "type")
    if error:
        raise ConfigError(f"{section}: {error}", field=section)

    body = {key: value for key, value in data.items() if key not in ("name", "type")}
    method = MethodConfig(name=str(data["name"]), type=method_type)

    if method_type == MethodType.SGD:
        check_keys(body, SGD_KEYS, section)
        method.sgd = SgdParams(**body).validate(section)
        return method

    allowed = CBO_KEYS + (ISOTROPIC_KEYS if method_type == MethodType.ISOTROPIC_CBO else [])
    check_keys(body, allowed, section)
    method.heaviside_mode = body.pop("heaviside_mode", HeavisideMode.OFF)
    method.heaviside_epsilon = body.pop("heaviside_epsilon", 0.1)
    method.cbo = _parse_cbo_params(body, section)
    if method_type == MethodType.ISOTROPIC_CBO:
        method.isotropic_params().validate(section)
    return method


def _resolve(path: Optional[str], base_dir: str) -> Optional[str]:
    """Caminhos relativos valem a partir do diretório atual ou, se ausentes, do arquivo de configuração."""
    if not path or os.path.isabs(path) or os.path.exists(path):
        return path
    candidate = os.path.join(base_dir, path)
    return candidate if os.path.exists(candidate) else path


def _parse_training(data: Any, base_dir: str, required: bool) -> TrainingConfig:
    training = build_section(TrainingConfig, data, "training")
    for key in ("train_images", "train_labels", "test_images", "test_labels"):
        setattr(training, key, _resolve(getattr(training, key), base_dir))

    errors = validate_form(training.to_dict(), {
        "epochs": [
            lambda v: validate_integer(v, "epochs"),
            lambda v: validate_min_value(v, 0, "epochs"),
        ],
        "train_images": [lambda v: validate_file_exists(v, "train_images")],
        "train_labels": [lambda v: validate_file_exists(v, "train_labels")],
        "test_images": [lambda v: validate_file_exists(v, "test_images")],
        "test_labels": [lambda v: validate_file_exists(v, "test_labels")],
        "synthetic": [lambda v: validate_boolean(v, "synthetic")],
        "synthetic_train": [lambda v: validate_min_value(v, 1, "synthetic_train")],
        "synthetic_test": [lambda v: validate_min_value(v, 1, "synthetic_test")],
        "synthetic_dim": [lambda v: validate_min_value(v, 1, "synthetic_dim")],
        "synthetic_spread": [lambda v: validate_positive(v, "synthetic_spread")],
        "max_train": [lambda v: validate_min_value(v, 0, "max_train")],
        "max_test": [lambda v: validate_min_value(v, 0, "max_test")],
    })
    if required and not errors:
        if training.uses_files and not (training.test_images and training.test_labels):
            errors["test_images"] = "Os arquivos de teste (test_images, test_labels) são obrigatórios."
        elif not training.uses_files and not training.synthetic:
            errors["train_images"] = "Informe os arquivos IDX de treino ou ative synthetic."
    raise_on_errors(errors, "training")
    return training


def _parse_diagnostics(data: Any) -> DiagnosticsConfig:
    data = {} if data is None else data
    check_keys(data, _field_names(DiagnosticsConfig), "diagnostics")

    certificate = build_section(CertificateConfig, data.get("certificate"), "diagnostics.certificate")
    anchored = build_section(AnchoredConfig, data.get("anchored"), "diagnostics.anchored")
    semidiscrete = build_section(SemidiscreteConfig, data.get("semidiscrete"), "diagnostics.semidiscrete")
    laplace_data = dict(data.get("laplace") or {})
    sampler = _parse_init(laplace_data.pop("sampler", None), "diagnostics.laplace.sampler")
    laplace = build_section(LaplaceConfig, laplace_data, "diagnostics.laplace",
                            [name for name in _field_names(LaplaceConfig) if name != "sampler"])
    laplace.sampler = sampler

    errors = validate_form(certificate.to_dict(), {
        "c_l": [lambda v: validate_positive(v, "c_l")],
    })
    raise_on_errors(errors, "diagnostics.certificate")

    bad_schemes = [s for s in anchored.schemes if s not in Scheme.anchored()]
    errors = validate_form(anchored.to_dict(), {
        "schemes": [lambda v: f"Esquemas inválidos: {bad_schemes}" if bad_schemes else None],
        "lam": [lambda v: validate_positive(v, "lam")],
        "sigma": [lambda v: validate_min_value(v, 0.0, "sigma")],
        "n_particles": [
            lambda v: validate_integer(v, "n_particles"),
            lambda v: validate_min_value(v, 1000, "n_particles"),
        ],
        "n_steps": [
            lambda v: validate_integer(v, "n_steps"),
            lambda v: validate_min_value(v, 2, "n_steps"),
        ],
        "gamma": [lambda v: validate_positive(v, "gamma")],
    })
    raise_on_errors(errors, "diagnostics.anchored")

    errors = validate_form(semidiscrete.to_dict(), {
        "refresh_every": [
            lambda v: validate_integer(v, "refresh_every"),
            lambda v: validate_min_value(v, 1, "refresh_every"),
        ],
        "n_refreshes": [
            lambda v: validate_integer(v, "n_refreshes"),
            lambda v: validate_min_value(v, 1, "n_refreshes"),
        ],
    })
    raise_on_errors(errors, "diagnostics.semidiscrete")

    errors = validate_form(laplace.to_dict(), {
        "betas": [lambda v: None if v and all(b > 0 for b in v) else "Lista de betas positivos obrigatória."],
        "n_samples": [
            lambda v: validate_integer(v, "n_samples"),
            lambda v: validate_min_value(v, 1, "n_samples"),
        ],
    })
    raise_on_errors(errors, "diagnostics.laplace")

    return DiagnosticsConfig(certificate=certificate, anchored=anchored,
                             semidiscrete=semidiscrete, laplace=laplace)


def parse_config(raw: Any, base_dir: str = ".") -> ExperimentConfig:
    """
    Valida o documento já decodificado e preenche os padrões.

    Args:
        raw (Any): Documento JSON.
        base_dir (str): Diretório usado para resolver caminhos relativos.

    Returns:
        ExperimentConfig: Configuração completa.
    """
    check_keys(raw, SECTIONS, "config")
    experiment = _parse_experiment(raw.get("experiment"))
    objective = _parse_objective(raw.get("objective"))
    init = _parse_init(raw.get("init"))

    methods_data = raw.get("methods", [])
    if not isinstance(methods_data, list):
        raise ConfigError("A seção methods deve ser uma lista", field="methods")
    if experiment.kind != ExperimentKind.DIAGNOSTICS and not methods_data:
        raise ConfigError("Informe ao menos um método em methods", field="methods")
    methods = [_parse_method(block, i) for i, block in enumerate(methods_data)]
    names = [method.name for method in methods]
    duplicated = sorted({name for name in names if names.count(name) > 1})
    if duplicated:
        raise ConfigError(f"Nomes de métodos repetidos: {', '.join(duplicated)}", field="methods")

    success = build_section(SuccessConfig, raw.get("success"), "success")
    raise_on_errors(validate_form(success.to_dict(), {
        "enabled": [lambda v: validate_boolean(v, "enabled")],
        "threshold": [lambda v: validate_positive(v, "threshold")],
    }), "success")

    training = _parse_training(raw.get("training"), base_dir,
                               required=experiment.kind == ExperimentKind.TRAINING)
    diagnostics = _parse_diagnostics(raw.get("diagnostics"))

    if (experiment.kind == ExperimentKind.SUCCESS and success.enabled
            and objective.type == ObjectiveType.SOFTMAX_NET):
        raise ConfigError("O critério de sucesso exige um minimizador conhecido, ausente em softmax_net",
                          field="success")
    if experiment.kind == ExperimentKind.TRAINING and objective.type != ObjectiveType.SOFTMAX_NET:
        raise ConfigError("Experimentos de treino exigem objective.type = softmax_net", field="objective.type")

    return ExperimentConfig(experiment=experiment, objective=objective, init=init, methods=methods,
                            success=success, training=training, diagnostics=diagnostics)


def load_config(path: str) -> ExperimentConfig:
    """
    Lê e valida um arquivo JSON de experimento em modo estrito.

    Args:
        path (str): Caminho do arquivo.

    Returns:
        ExperimentConfig: Configuração validada com os padrões preenchidos.

    Raises:
        ConfigError: Erro de leitura, de sintaxe (com linha e coluna) ou de validação.
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"Não foi possível ler '{path}': {e}", field="path") from e

    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Erro de sintaxe em '{path}', linha {e.lineno}, coluna {e.colno}: {e.msg}",
                          line=e.lineno) from e

    config = parse_config(raw, os.path.dirname(os.path.abspath(path)))
    config.source_path = path
    return config


def config_echo(config: ExperimentConfig) -> Dict[str, Any]:
    """
    Configuração completa, com os padrões, em forma que load_config aceita de volta.
    """
    data = config.echo()
    allowed = OBJECTIVE_KEYS[config.objective.type]
    data["objective"] = {key: value for key, value in data["objective"].items() if key in allowed}
    return data
