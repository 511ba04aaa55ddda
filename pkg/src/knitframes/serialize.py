"""Canonical JSON encoding for reports and matrix dumps.

Complex scalars are encoded as two-element [real, imag] lists so the files
stay valid JSON; matrices become nested lists of those pairs. Output is
key-sorted with a fixed layout so identical inputs always serialize to
identical bytes.
"""
from __future__ import annotations

import json

import numpy as np

__all__ = [
    "complex_matrix_to_json",
    "json_to_complex_matrix",
    "int_array_to_json",
    "dumps_canonical",
]


def complex_matrix_to_json(M: np.ndarray) -> list:
    """Nested lists with each entry as [real, imag]."""
    M = np.asarray(M, dtype=complex)
    return np.stack([M.real, M.imag], axis=-1).tolist()


def json_to_complex_matrix(obj) -> np.ndarray:
    arr = np.asarray(obj, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError(f"expected trailing [real, imag] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def int_array_to_json(a: np.ndarray) -> list:
    return [int(x) for x in np.asarray(a).ravel()]


def dumps_canonical(obj) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, newline at end."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"
