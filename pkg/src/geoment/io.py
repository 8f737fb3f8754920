"""JSON state files.

Format::

    {"dims": [2, 2, 2],
     "amplitudes": [{"idx": [0, 0, 1], "re": 0.57735, "im": 0.0}, ...]}

Index tuples that are not listed are zero amplitudes.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, InvalidParams
from .tensor import ComplexTensor, normalize


def state_from_dict(obj: dict, normalize_state: bool = True) -> ComplexTensor:
    try:
        dims = [int(d) for d in obj["dims"]]
        entries = obj["amplitudes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParams(f"malformed state: {exc}") from exc
    if not dims or any(d < 1 for d in dims):
        raise InvalidParams(f"bad dims {dims}")
    a = np.zeros(dims, dtype=np.complex128)
    for e in entries:
        try:
            idx = tuple(int(i) for i in e["idx"])
            val = complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParams(f"malformed amplitude entry {e!r}") from exc
        if len(idx) != len(dims) or any(not 0 <= i < d for i, d in zip(idx, dims)):
            raise DimensionMismatch(f"index {list(idx)} outside dims {dims}")
        a[idx] = val
    T = ComplexTensor(a)
    return normalize(T) if normalize_state else T


def state_to_dict(T: ComplexTensor, atol: float = 0.0) -> dict:
    nz = np.argwhere(np.abs(T.array) > atol)
    return {
        "dims": list(T.dims),
        "amplitudes": [
            {"idx": [int(i) for i in idx], "re": float(T.array[tuple(idx)].real),
             "im": float(T.array[tuple(idx)].imag)}
            for idx in nz
        ],
    }


def load_state(path: str | Path, normalize_state: bool = True) -> ComplexTensor:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidParams(f"{path}: not valid JSON ({exc})") from exc
    return state_from_dict(obj, normalize_state)


def dump_state(T: ComplexTensor, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(T), fh)


def digest(T: ComplexTensor) -> str:
    """sha256 over dims and raw amplitudes."""
    h = hashlib.sha256()
    h.update(json.dumps(list(T.dims)).encode())
    h.update(np.ascontiguousarray(T.array).tobytes())
    return h.hexdigest()
