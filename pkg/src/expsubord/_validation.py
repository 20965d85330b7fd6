"""Input checks shared by the estimators and the array-level functions.

scikit-learn's ``check_array`` rejects complex input, which is the normal
case here, so the few checks we need live in this module instead.
"""

from __future__ import annotations

import numbers

import numpy as np


def check_coeff_array(X, *, min_cols: int = 1, name: str = "X") -> np.ndarray:
    """Return ``X`` as a 2-D complex array with at least ``min_cols`` columns.

    A 1-D input is read as a single sample.
    """
    X = np.asarray(X)
    if X.dtype == object:
        X = X.astype(complex)
    if X.ndim == 1:
        X = X[np.newaxis, :]
    if X.ndim != 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got shape {X.shape}")
    if X.shape[1] < min_cols:
        raise ValueError(f"{name} needs at least {min_cols} columns, got {X.shape[1]}")
    X = X.astype(complex, copy=False)
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains NaN or infinite entries")
    return X


def check_positive(value, name: str) -> float:
    if not isinstance(value, numbers.Real) or not value > 0:
        raise ValueError(f"{name} must be a positive real number, got {value!r}")
    return float(value)


def check_seed(seed) -> int:
    if not isinstance(seed, numbers.Integral) or seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)
