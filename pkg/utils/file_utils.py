#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Utilitários para manipulação de arquivos: diretórios, JSON e CSV.

As escritas passam por um arquivo temporário no mesmo diretório e só
depois substituem o destino.
"""

import csv
import json
import os
import tempfile
from typing import Any, Dict, List, Optional, Union

import numpy as np

from services.log_service import get_logger

logger = get_logger("files")


def ensure_directory(directory_path: str) -> bool:
    """
    Garante que um diretório existe, criando-o se necessário.

    Args:
        directory_path (str): Caminho do diretório.

    Returns:
        bool: True se o diretório existe ou foi criado com sucesso, False caso contrário.
    """
    try:
        os.makedirs(directory_path, exist_ok=True)
        return True
    except OSError as e:
        logger.error(f"Erro ao criar diretório {directory_path}: {e}")
        return False


def format_value(value: Any) -> Any:
    """
    Converte um valor para a célula do CSV: floats com repr (ida e volta
    exata), booleanos como 0/1, arrays numpy para tipos nativos.
    """
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, float):
        return repr(value)
    return value


def _atomic_write(file_path: str, writer, encoding: str = "utf-8") -> bool:
    directory = os.path.dirname(file_path) or "."
    if not ensure_directory(directory):
        return False
    fd, temp_name = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding=encoding, newline="") as temp_file:
            writer(temp_file)
        os.replace(temp_name, file_path)
        return True
    except (OSError, ValueError, TypeError) as e:
        logger.error(f"Erro ao escrever {file_path}: {e}")
        return False
    finally:
        # Garantir que o arquivo temporário seja removido em caso de erro
        if os.path.exists(temp_name):
            os.unlink(temp_name)


def read_json_file(file_path: str, encoding: str = "utf-8") -> Optional[Union[Dict, List]]:
    """
    Lê o conteúdo de um arquivo JSON.

    Args:
        file_path (str): Caminho do arquivo.
        encoding (str, opcional): Codificação do arquivo.

    Returns:
        Optional[Union[Dict, List]]: Conteúdo do arquivo como objeto Python ou None em caso de erro.
    """
    try:
        with open(file_path, "r", encoding=encoding) as file:
            return json.load(file)
    except (OSError, ValueError) as e:
        logger.error(f"Erro ao ler arquivo JSON {file_path}: {e}")
        return None


def write_json_file(file_path: str, content: Union[Dict, List],
                    encoding: str = "utf-8", indent: int = 4) -> bool:
    """
    Escreve conteúdo em um arquivo JSON.

    Args:
        file_path (str): Caminho do arquivo.
        content (Union[Dict, List]): Conteúdo a ser escrito.
        encoding (str, opcional): Codificação do arquivo.
        indent (int, opcional): Recuo para formatação.

    Returns:
        bool: True se a operação foi bem-sucedida, False caso contrário.
    """
    return _atomic_write(
        file_path,
        lambda f: json.dump(content, f, indent=indent, ensure_ascii=False),
        encoding,
    )


def read_csv_file(file_path: str, delimiter: str = ",",
                  encoding: str = "utf-8") -> Optional[List[Dict[str, str]]]:
    """
    Lê um arquivo CSV com cabeçalho.

    Returns:
        Optional[List[Dict[str, str]]]: Uma linha por dicionário ou None em caso de erro.
    """
    try:
        with open(file_path, "r", newline="", encoding=encoding) as file:
            return list(csv.DictReader(file, delimiter=delimiter))
    except OSError as e:
        logger.error(f"Erro ao ler arquivo CSV {file_path}: {e}")
        return None


def write_csv_file(file_path: str, data: List[Dict[str, Any]],
                   fieldnames: Optional[List[str]] = None, delimiter: str = ",",
                   encoding: str = "utf-8") -> bool:
    """
    Escreve dados em um arquivo CSV.

    Args:
        file_path (str): Caminho do arquivo.
        data (List[Dict[str, Any]]): Linhas, na ordem em que serão gravadas.
        fieldnames (List[str], opcional): Colunas; padrão as chaves da primeira linha.
        delimiter (str, opcional): Delimitador de campo.
        encoding (str, opcional): Codificação do arquivo.

    Returns:
        bool: True se a operação foi bem-sucedida, False caso contrário.
    """
    if not fieldnames and data:
        fieldnames = list(data[0].keys())

    def write(f):
        writer = csv.DictWriter(f, fieldnames=fieldnames or [], delimiter=delimiter, lineterminator="\n")
        writer.writeheader()
        for row in data:
            writer.writerow({key: format_value(value) for key, value in row.items()})

    return _atomic_write(file_path, write, encoding)
