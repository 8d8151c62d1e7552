#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuração de um experimento: seções experiment, objective, init,
methods, success, training e diagnostics.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from core.constants import DEFAULT_SUCCESS_THRESHOLD, ExperimentKind, HeavisideMode, MethodType, ObjectiveType
from models.base_model import BaseModel
from models.ensemble.ensemble import InitSpec
from models.params.cbo_params import CboParams, IsotropicCboParams, SgdParams


@dataclass
class ExperimentSection(BaseModel):
    """Identificação, repetições, política de sementes e saída."""

    name: str = "experiment"
    kind: str = ExperimentKind.SUCCESS
    repetitions: int = 1
    base_seed: int = 0
    seed_stride: int = 1
    output_dir: str = "results"
    workers: int = 1
    # Com timing desligado as colunas de tempo são gravadas como 0
    timing: bool = True
    plots: bool = False
    persist: bool = True

    def seed_for(self, repetition: int) -> int:
        return self.base_seed + repetition * self.seed_stride


@dataclass
class ObjectiveConfig(BaseModel):
    """União etiquetada pelo campo type; os demais campos dependem do tipo."""

    type: str = ObjectiveType.RASTRIGIN
    dim: int = 1
    shift: float = 0.0
    lift: float = 0.0
    n_samples: int = 20
    sample_seed: int = 0
    noise_variance: float = 0.1
    samples: Optional[List[float]] = None
    center: Optional[List[float]] = None
    offset: float = 0.0
    sample_centers: Optional[List[List[float]]] = None
    n_classes: int = 10


@dataclass
class MethodConfig(BaseModel):
    """Um método a comparar, com o bloco de parâmetros do seu tipo."""

    name: str
    type: str = MethodType.CBO
    cbo: Optional[CboParams] = None
    sgd: Optional[SgdParams] = None
    heaviside_mode: str = HeavisideMode.OFF
    heaviside_epsilon: float = 0.1

    @property
    def is_particle_method(self) -> bool:
        return self.type in MethodType.particle_methods()

    def isotropic_params(self) -> IsotropicCboParams:
        return IsotropicCboParams.from_cbo_params(self.cbo, self.heaviside_mode, self.heaviside_epsilon)


@dataclass
class SuccessConfig(BaseModel):
    enabled: bool = True
    threshold: float = DEFAULT_SUCCESS_THRESHOLD


@dataclass
class TrainingConfig(BaseModel):
    """
    Treino do classificador: arquivos IDX locais ou o conjunto sintético.
    """

    epochs: int = 10
    train_images: Optional[str] = None
    train_labels: Optional[str] = None
    test_images: Optional[str] = None
    test_labels: Optional[str] = None
    # Usa blobs gaussianos quando os arquivos IDX não forem informados
    synthetic: bool = False
    synthetic_train: int = 6000
    synthetic_test: int = 1000
    synthetic_dim: int = 64
    synthetic_seed: int = 0
    synthetic_spread: float = 0.5
    # Limita o número de imagens lidas (0 = todas)
    max_train: int = 0
    max_test: int = 0

    @property
    def uses_files(self) -> bool:
        return bool(self.train_images and self.train_labels)


@dataclass
class CertificateConfig(BaseModel):
    enabled: bool = True
    # None: usa o valor conhecido do objetivo
    l_min: Optional[float] = None
    c_l: Optional[float] = None


@dataclass
class AnchoredConfig(BaseModel):
    enabled: bool = True
    schemes: List[str] = field(default_factory=lambda: ["euler", "exact_gbm", "isotropic_euler"])
    lam: float = 1.0
    sigma: float = 0.3
    dims: List[int] = field(default_factory=lambda: [1, 5, 20])
    n_particles: int = 10000
    n_steps: int = 200
    gamma: float = 0.01


@dataclass
class SemidiscreteConfig(BaseModel):
    enabled: bool = True
    refresh_every: int = 5
    n_refreshes: int = 40


@dataclass
class LaplaceConfig(BaseModel):
    enabled: bool = True
    betas: List[float] = field(default_factory=lambda: [1.0, 10.0, 100.0, 1000.0])
    n_samples: int = 10000
    sampler: InitSpec = field(default_factory=InitSpec)
    include_minimizer: bool = False


@dataclass
class DiagnosticsConfig(BaseModel):
    certificate: CertificateConfig = field(default_factory=CertificateConfig)
    anchored: AnchoredConfig = field(default_factory=AnchoredConfig)
    semidiscrete: SemidiscreteConfig = field(default_factory=SemidiscreteConfig)
    laplace: LaplaceConfig = field(default_factory=LaplaceConfig)


@dataclass
class ExperimentConfig(BaseModel):
    """Configuração completa, já validada e com os padrões preenchidos."""

    experiment: ExperimentSection
    objective: ObjectiveConfig
    init: InitSpec
    methods: List[MethodConfig]
    success: SuccessConfig = field(default_factory=SuccessConfig)
    training: TrainingConfig = field(default_factory=TrainingConfig)
    diagnostics: DiagnosticsConfig = field(default_factory=DiagnosticsConfig)
    source_path: Optional[str] = None

    def echo(self) -> Dict[str, Any]:
        """Configuração completa no mesmo formato do arquivo de entrada."""
        data = self.to_dict()
        data.pop("source_path", None)
        methods = []
        for method in self.methods:
            block: Dict[str, Union[str, float, int, dict, None]] = {"name": method.name, "type": method.type}
            if method.cbo is not None:
                params = method.cbo.to_dict()
                params["lambda"] = params.pop("lam")
                params["batch_data"] = "full" if params["batch_data"] is None else params["batch_data"]
                block.update(params)
            if method.sgd is not None:
                block.update(method.sgd.to_dict())
                block.pop("seed", None)
            if method.type == MethodType.ISOTROPIC_CBO:
                block["heaviside_mode"] = method.heaviside_mode
                block["heaviside_epsilon"] = method.heaviside_epsilon
            methods.append(block)
        data["methods"] = methods
        return data
