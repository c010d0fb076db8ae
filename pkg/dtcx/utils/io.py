"""
Reading and writing of the CSV and JSON files produced by the package.

Floats are written with :func:`repr`, the shortest string that round-trips, so identical inputs give byte-identical
files. JSON files are written with sorted keys and a fixed indentation for the same reason.
"""

import csv
import json
import logging
import os
import platform
from typing import Any
from typing import Iterable
from typing import Mapping
from typing import Sequence

import numpy as np
import scipy

logger = logging.getLogger(__name__)


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """
    Write a CSV file with the given header and rows.

    :param str path: the destination path; parent directories are created
    :param Sequence[str] header: the column names
    :param Iterable[Sequence[Any]] rows: the rows, each with as many cells as the header
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([_cell(value) for value in row])
            count += 1
    logger.debug("wrote %d rows to %s", count, path)


def read_csv(path: str, columns: Sequence[str]) -> dict[str, np.ndarray]:
    """
    Read the named numeric columns of a CSV file with a header row.

    :param str path: the source path
    :param Sequence[str] columns: the columns to extract
    :return: a mapping from column name to a float array
    :rtype: dict[str, numpy.ndarray]
    """
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        missing = [c for c in columns if reader.fieldnames is None or c not in reader.fieldnames]
        if missing:
            raise OSError(f"{path}: missing columns {', '.join(missing)}")
        values: dict[str, list[float]] = {c: [] for c in columns}
        for row in reader:
            for column in columns:
                values[column].append(float(row[column]))
    return {c: np.asarray(v, dtype=float) for c, v in values.items()}


def write_json(path: str, document: Mapping[str, Any]) -> None:
    """
    Write a JSON document with sorted keys.
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, sort_keys=True, default=_json_default)
        handle.write("\n")


def read_json(path: str) -> dict[str, Any]:
    """
    Read a JSON document whose top level is an object.
    """
    with open(path, encoding="utf-8") as handle:
        document = json.load(handle)
    if not isinstance(document, dict):
        raise OSError(f"{path}: top level must be an object")
    return document


def write_manifest(directory: str, command: str, config: Mapping[str, Any], derived: Mapping[str, Any]) -> str:
    """
    Write ``manifest.json`` into ``directory`` and return its path.

    The manifest records the command, the resolved configuration, the derived parameters and the versions of the
    numerical stack, and no timestamps.

    :param str directory: the output directory
    :param str command: the subcommand name
    :param Mapping[str, Any] config: the resolved configuration
    :param Mapping[str, Any] derived: parameters computed during the run
    :return: the path of the manifest
    :rtype: str
    """
    from dtcx import __version__  # pylint: disable=import-outside-toplevel
    path = os.path.join(directory, "manifest.json")
    write_json(path, {
        "command": command,
        "config": dict(config),
        "derived": dict(derived),
        "versions": {
            "dtcx": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
    })
    return path


def _json_default(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if hasattr(value, "to_json"):
        return value.to_json()
    raise TypeError(f"object of type {type(value).__name__} is not JSON serializable")
