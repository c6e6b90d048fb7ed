"""scikit-learn compatible wrappers around the complexity measures and growth fits."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_bit_matrix, check_positive_column
from .complexity import (
    expansion_complexity_profile,
    linear_complexity_profile,
    moc_profile,
)

__all__ = ["ComplexityProfiler", "GrowthCurve"]

_MEASURES = {
    "moc": moc_profile,
    "linear": linear_complexity_profile,
}


class ComplexityProfiler(TransformerMixin, BaseEstimator):
    """Map each row of a bit matrix to its complexity profile.

    Parameters
    ----------
    measure : {"moc", "linear", "expansion"}
    output : {"dense", "final"}
        ``dense`` returns ``value(N)`` for every prefix length, ``final`` only
        the value at the full row length.
    dmax : int
        Degree bound for ``measure="expansion"``; prefixes beyond it get -1.
    """

    def __init__(self, measure: str = "moc", output: str = "dense", dmax: int = 30):
        self.measure = measure
        self.output = output
        self.dmax = dmax

    def fit(self, X, y=None):
        X = check_bit_matrix(X)
        if self.measure not in (*_MEASURES, "expansion"):
            raise ValueError(f"unknown measure {self.measure!r}")
        if self.output not in ("dense", "final"):
            raise ValueError(f"unknown output {self.output!r}")
        self.n_features_in_ = X.shape[1]
        return self

    def _profile(self, row: np.ndarray) -> np.ndarray:
        if self.measure == "expansion":
            prof = expansion_complexity_profile(row, self.dmax)
            dense = np.full(row.size, -1, dtype=np.int64)
            dense[: prof.length] = prof.dense()
            return dense
        return _MEASURES[self.measure](row).dense()

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_bit_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but ComplexityProfiler was fitted with "
                f"{self.n_features_in_}"
            )
        out = np.vstack([self._profile(row) for row in X]) if len(X) else np.zeros((0, X.shape[1]), dtype=np.int64)
        return out if self.output == "dense" else out[:, -1:]


class GrowthCurve(RegressorMixin, BaseEstimator):
    """Growth law ``M ~ a N`` (``model="linear"``) or ``M ~ a N^e`` (``model="power"``)."""

    def __init__(self, model: str = "power"):
        self.model = model

    def fit(self, X, y):
        n = check_positive_column(X)
        m = np.asarray(y, dtype=float).ravel()
        if m.shape != n.shape:
            raise ValueError("X and y have inconsistent lengths")
        if n.size < 2:
            raise ValueError("insufficient data: need at least two points")
        if self.model == "linear":
            self.coef_ = float(n @ m / (n @ n))
            self.rms_residual_ = float(np.sqrt(np.mean((m - self.coef_ * n) ** 2)))
        elif self.model == "power":
            if np.any(m <= 0):
                raise ValueError("power model needs positive values")
            ln, lm = np.log(n), np.log(m)
            self.exponent_, self.intercept_ = (float(v) for v in np.polyfit(ln, lm, 1))
            self.coef_ = float(np.exp(self.intercept_))
            resid = lm - (self.exponent_ * ln + self.intercept_)
            self.rms_residual_ = float(np.sqrt(np.mean(resid**2)))
        else:
            raise ValueError(f"unknown model {self.model!r}")
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        n = check_positive_column(X)
        if self.model == "linear":
            return self.coef_ * n
        return self.coef_ * n**self.exponent_
