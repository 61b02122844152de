"""JSON tensor files.

    {"shape": [2, 2, 2], "format": "dense", "entries": ["1", "0", "-3/4", ...]}
    {"shape": [2, 2, 2], "format": "sparse", "entries": [{"index": [0, 1, 1], "value": "5"}]}

Indices are 0-based; dense entries are row-major with the last index fastest.
Values are rational strings, never JSON numbers.
"""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import TensorFileError
from .tensor import Tensor

__all__ = ["parse_rational", "format_rational", "loads", "dumps", "read_tensor", "write_tensor"]

_RATIONAL = re.compile(r"-?[0-9]+(/[1-9][0-9]*)?")


def parse_rational(text, where: str = "value") -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text):
        raise TensorFileError(f"{where}: expected a rational string like \"-3/4\", got {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    # Fraction normalizes sign and lowest terms, so this is canonical
    return str(x)


def _nat_list(value, where: str, minimum: int = 0) -> list[int]:
    if not isinstance(value, list):
        raise TensorFileError(f"{where}: expected a list of integers")
    for k, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
            raise TensorFileError(f"{where}[{k}]: expected an integer >= {minimum}, got {v!r}")
    return value


def loads(text: str) -> Tensor:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TensorFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise TensorFileError("top level: expected a JSON object")
    unknown = set(doc) - {"shape", "format", "entries"}
    if unknown:
        raise TensorFileError(f"top level: unknown field(s) {sorted(unknown)}")
    if "shape" not in doc or "entries" not in doc:
        raise TensorFileError("top level: fields \"shape\" and \"entries\" are required")
    shape = _nat_list(doc["shape"], "shape", minimum=1)
    if len(shape) < 2:
        raise TensorFileError(f"shape: a tensor needs at least 2 modes, got {shape}")
    entries = doc["entries"]
    if not isinstance(entries, list):
        raise TensorFileError("entries: expected a list")
    fmt = doc.get("format")
    if fmt is None:
        fmt = "sparse" if entries and isinstance(entries[0], dict) else "dense"
    size = math.prod(shape)

    if fmt == "dense":
        if len(entries) != size:
            raise TensorFileError(f"entries: dense length {len(entries)} != product of shape {size}")
        values = [parse_rational(v, f"entries[{k}]") for k, v in enumerate(entries)]
        return Tensor(values, shape=shape)
    if fmt != "sparse":
        raise TensorFileError(f"format: expected \"dense\" or \"sparse\", got {fmt!r}")

    arr = np.full(shape, Fraction(0), dtype=object)
    seen = set()
    for k, item in enumerate(entries):
        where = f"entries[{k}]"
        if not isinstance(item, dict) or set(item) != {"index", "value"}:
            raise TensorFileError(f"{where}: expected an object with fields \"index\" and \"value\"")
        index = tuple(_nat_list(item["index"], f"{where}.index"))
        if len(index) != len(shape) or any(i >= d for i, d in zip(index, shape)):
            raise TensorFileError(f"{where}.index: {list(index)} out of range for shape {shape}")
        if index in seen:
            raise TensorFileError(f"{where}.index: duplicate index {list(index)}")
        seen.add(index)
        arr[index] = parse_rational(item["value"], f"{where}.value")
    return Tensor(arr)


def dumps(t: Tensor, fmt: str = "dense") -> str:
    if fmt == "dense":
        entries = [format_rational(x) for x in t.array.flat]
    elif fmt == "sparse":
        entries = [
            {"index": [int(i) for i in idx], "value": format_rational(t.array[idx])}
            for idx in np.ndindex(*t.shape)
            if t.array[idx] != 0
        ]
    else:
        raise ValueError(f"unknown tensor file format {fmt!r}")
    return json.dumps({"shape": list(t.shape), "format": fmt, "entries": entries}) + "\n"


def read_tensor(path) -> Tensor:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TensorFileError(f"{path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise TensorFileError(f"{path}: not valid UTF-8") from None
    try:
        return loads(text)
    except TensorFileError as exc:
        raise TensorFileError(f"{path}: {exc}") from None


def write_tensor(path, t: Tensor, fmt: str = "dense") -> None:
    Path(path).write_text(dumps(t, fmt), encoding="utf-8")
