"""Input checks shared by the estimator wrappers."""
from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array


def check_bit_matrix(X) -> np.ndarray:
    """2-d array of 0/1 entries, one sequence per row."""
    X = check_array(X, dtype=np.int64, ensure_2d=True)
    if X.size and (X.min() < 0 or X.max() > 1):
        raise ValueError("entries must be 0 or 1")
    return X


def check_positive_column(X) -> np.ndarray:
    """Sample positions ``N`` as a float column; every entry must be positive."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    X = check_array(X, dtype=float)
    if X.shape[1] != 1:
        raise ValueError(f"expected a single feature column, got {X.shape[1]}")
    if np.any(X <= 0):
        raise ValueError("positions must be positive")
    return X[:, 0]
