#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Constantes globais utilizadas em toda a biblioteca.
"""


# Modo de atualização das partículas (passo 2.3 do algoritmo)
class UpdateMode:
    PARTIAL = "partial"
    FULL = "full"

    @classmethod
    def values(cls):
        return [cls.PARTIAL, cls.FULL]


# Forma de calcular o ponto de consenso
class ConsensusMode:
    WEIGHTED = "weighted"
    ARGMIN = "argmin"

    @classmethod
    def values(cls):
        return [cls.WEIGHTED, cls.ARGMIN]


# Esquemas de integração no tempo
class Scheme:
    EULER = "euler"
    SPLITTING = "splitting"
    EXACT_GBM = "exact_gbm"
    # Usado apenas pelo baseline isotrópico e pelos diagnósticos
    ISOTROPIC_EULER = "isotropic_euler"

    @classmethod
    def values(cls):
        return [cls.EULER, cls.SPLITTING, cls.EXACT_GBM]

    @classmethod
    def anchored(cls):
        return [cls.EULER, cls.SPLITTING, cls.EXACT_GBM, cls.ISOTROPIC_EULER]


# Tipos de cronograma (annealing)
class ScheduleKind:
    CONSTANT = "constant"
    LOG_DECAY = "log_decay"
    LOG_GROWTH = "log_growth"
    GEOMETRIC = "geometric"

    @classmethod
    def values(cls):
        return [cls.CONSTANT, cls.LOG_DECAY, cls.LOG_GROWTH, cls.GEOMETRIC]


# Motivos de parada de uma execução
class StopReason:
    CRITERION_MET = "criterion_met"
    MAX_ITERS = "max_iters"
    RESTARTS_EXHAUSTED = "restarts_exhausted"
    CALLBACK = "callback"
    # Execução abortada por perda não finita (registrada pelo experimento)
    OBJECTIVE_FAILURE = "objective_failure"

    @classmethod
    def values(cls):
        return [cls.CRITERION_MET, cls.MAX_ITERS, cls.RESTARTS_EXHAUSTED, cls.CALLBACK, cls.OBJECTIVE_FAILURE]


# Função de Heaviside do modelo isotrópico
class HeavisideMode:
    OFF = "off"
    LOGISTIC = "logistic"

    @classmethod
    def values(cls):
        return [cls.OFF, cls.LOGISTIC]


# Distribuições iniciais do ensemble
class InitKind:
    UNIFORM = "uniform"
    GAUSSIAN = "gaussian"
    EXPLICIT = "explicit"

    @classmethod
    def values(cls):
        return [cls.UNIFORM, cls.GAUSSIAN, cls.EXPLICIT]


# Métodos comparados pelo harness
class MethodType:
    CBO = "cbo"
    ISOTROPIC_CBO = "isotropic_cbo"
    SGD = "sgd"

    @classmethod
    def values(cls):
        return [cls.CBO, cls.ISOTROPIC_CBO, cls.SGD]

    @classmethod
    def particle_methods(cls):
        return [cls.CBO, cls.ISOTROPIC_CBO]


# Funções objetivo disponíveis
class ObjectiveType:
    RASTRIGIN = "rastrigin"
    OSCILLATORY = "oscillatory"
    SOFTMAX_NET = "softmax_net"
    QUADRATIC = "quadratic"
    ACKLEY = "ackley"

    @classmethod
    def values(cls):
        return [cls.RASTRIGIN, cls.OSCILLATORY, cls.SOFTMAX_NET, cls.QUADRATIC, cls.ACKLEY]


# Tipos de experimento do harness
class ExperimentKind:
    SUCCESS = "success"
    TRAINING = "training"
    DIAGNOSTICS = "diagnostics"

    @classmethod
    def values(cls):
        return [cls.SUCCESS, cls.TRAINING, cls.DIAGNOSTICS]


# Códigos de saída da linha de comando
class ExitCode:
    OK = 0
    CONFIG_ERROR = 2
    RUNTIME_FAILURE = 3


# Limiares numéricos
PROBABILITY_CLAMP = 1e-12
STALL_CONSECUTIVE = 10
RESTART_MIN_RELATIVE_DECREASE = 1e-6
DEFAULT_SUCCESS_THRESHOLD = 0.25
ANCHORED_FIT_FRACTION = 0.8
ANCHORED_REPLICATE_GROUPS = 10
