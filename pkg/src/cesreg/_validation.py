"""Input validation helpers shared by the estimators, the harness and the CLI."""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidInputError


def check_vector(v, name: str = "v", min_len: int = 1) -> np.ndarray:
    """Return ``v`` as a finite 1-D float array of length >= ``min_len``."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got ndim={arr.ndim}")
    if arr.size < min_len:
        raise InvalidInputError(f"{name} needs at least {min_len} values, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite values")
    return arr


def check_sample(x, y, min_len: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Validate a paired (x, y) sample: equal lengths, finite, x non-constant."""
    x = check_vector(x, "x", min_len=min_len)
    y = check_vector(y, "y", min_len=min_len)
    if x.size != y.size:
        raise InvalidInputError(f"x and y must have equal length, got {x.size} and {y.size}")
    if is_constant(x):
        raise InvalidInputError("x is constant; the slope is unidentifiable")
    return x, y


def is_constant(arr: np.ndarray) -> bool:
    return bool(arr.max() == arr.min())
