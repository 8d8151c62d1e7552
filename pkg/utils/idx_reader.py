#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Leitura de arquivos IDX (formato das imagens e rótulos MNIST).

Layout (big-endian):
    i32 | número mágico (2051 imagens, 2049 rótulos)
    i32 | quantidade de itens
    i32 | linhas, i32 | colunas (apenas imagens)
    u8[] | bytes brutos
"""

import gzip
import struct
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from core.errors import ConsistencyError, FormatError, InputError, LengthError
from models.objective.softmax_net import LabeledData
from services.log_service import get_logger

logger = get_logger("idx")

IMAGE_MAGIC = 2051
LABEL_MAGIC = 2049
PIXEL_SCALE = 255.0
N_CLASSES = 10


@dataclass
class IdxDataset:
    """Imagens em [0, 1] (count×rows×cols) e rótulos 0..9."""

    images: np.ndarray = field(repr=False)
    labels: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.images.shape[0] != self.labels.shape[0]:
            raise ConsistencyError(
                f"{self.images.shape[0]} imagens para {self.labels.shape[0]} rótulos"
            )

    @property
    def count(self) -> int:
        return int(self.images.shape[0])

    @property
    def one_hot(self) -> np.ndarray:
        return np.eye(N_CLASSES)[self.labels]

    def to_labeled(self) -> LabeledData:
        """Imagens achatadas em vetores de rows·cols entradas, rótulos one-hot."""
        return LabeledData(inputs=self.images.reshape(self.count, -1), labels=self.one_hot)


def _read_bytes(path: str) -> bytes:
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rb") as f:
        return f.read()


def _read_header(raw: bytes, path: str, expected_magic: int, n_dims: int) -> Tuple[int, ...]:
    header_size = 4 * (1 + n_dims)
    if len(raw) < 4:
        raise LengthError(f"{path}: arquivo truncado no cabeçalho ({len(raw)} bytes)", value=len(raw))
    magic = struct.unpack(">i", raw[:4])[0]
    if magic != expected_magic:
        raise FormatError(
            f"{path}: número mágico {magic}, esperado {expected_magic}", value=magic
        )
    if len(raw) < header_size:
        raise LengthError(f"{path}: arquivo truncado no cabeçalho ({len(raw)} bytes)", value=len(raw))
    dims = struct.unpack(f">{n_dims}i", raw[4:header_size])
    if any(d < 0 for d in dims):
        raise FormatError(f"{path}: dimensões negativas {dims}", value=dims)
    return dims


def _payload(raw: bytes, path: str, offset: int, expected: int) -> np.ndarray:
    available = len(raw) - offset
    if available < expected:
        raise LengthError(
            f"{path}: esperados {expected} bytes de dados, encontrados {available}", value=available
        )
    if available > expected:
        logger.warning(f"{path}: {available - expected} bytes excedentes ignorados")
    return np.frombuffer(raw, dtype=np.uint8, count=expected, offset=offset)


def read_idx_images(path: str, max_count: Optional[int] = None) -> np.ndarray:
    """Imagens count×rows×cols como float em [0, 1]."""
    raw = _read_bytes(path)
    count, rows, cols = _read_header(raw, path, IMAGE_MAGIC, 3)
    pixels = _payload(raw, path, 16, count * rows * cols).reshape(count, rows, cols)
    if max_count is not None:
        pixels = pixels[:max_count]
    return pixels.astype(float) / PIXEL_SCALE


def read_idx_labels(path: str, max_count: Optional[int] = None) -> np.ndarray:
    """Rótulos como inteiros em 0..9."""
    raw = _read_bytes(path)
    (count,) = _read_header(raw, path, LABEL_MAGIC, 1)
    labels = _payload(raw, path, 8, count).astype(np.int64)
    if labels.size and labels.max() >= N_CLASSES:
        raise FormatError(f"{path}: rótulo {labels.max()} fora de 0..{N_CLASSES - 1}", value=int(labels.max()))
    if max_count is not None:
        labels = labels[:max_count]
    return labels


def load_idx(images_path: str, labels_path: str, max_count: Optional[int] = None) -> IdxDataset:
    """
    Carrega um par de arquivos IDX de imagens e rótulos.

    Args:
        images_path (str): Arquivo de imagens (magic 2051), opcionalmente .gz.
        labels_path (str): Arquivo de rótulos (magic 2049), opcionalmente .gz.
        max_count (int, opcional): Mantém apenas os primeiros itens.

    Returns:
        IdxDataset: Conjunto carregado.

    Raises:
        FormatError: Número mágico inesperado.
        LengthError: Arquivo truncado.
        ConsistencyError: Quantidades diferentes de imagens e rótulos.
    """
    if max_count is not None and max_count < 0:
        raise InputError(f"max_count deve ser não negativo, recebido {max_count}")
    images = read_idx_images(images_path)
    labels = read_idx_labels(labels_path)
    if images.shape[0] != labels.shape[0]:
        raise ConsistencyError(
            f"{images_path} tem {images.shape[0]} imagens e {labels_path} tem {labels.shape[0]} rótulos"
        )
    if max_count is not None:
        images, labels = images[:max_count], labels[:max_count]
    logger.info(f"IDX carregado: {images.shape[0]} imagens {images.shape[1]}x{images.shape[2]}")
    return IdxDataset(images=images, labels=labels)
