from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ComplexityProfile"]


@dataclass(frozen=True)
class ComplexityProfile:
    """Monotone step function ``N -> value`` on ``1 <= N <= length``.

    Only the increases are stored: ``positions[i]`` is the first ``N`` at which
    the profile takes the value ``values[i]``.  Before the first step the value
    is 0.
    """

    positions: np.ndarray
    values: np.ndarray
    length: int
    measure: str = "moc"

    def __post_init__(self):
        pos = np.array(self.positions, dtype=np.int64)
        val = np.array(self.values, dtype=np.int64)
        if pos.shape != val.shape or pos.ndim != 1:
            raise ValueError("positions and values must be 1-d arrays of equal length")
        if pos.size:
            if np.any(np.diff(pos) <= 0) or np.any(np.diff(val) <= 0):
                raise ValueError("steps must be strictly increasing in N and value")
            if pos[0] < 1 or pos[-1] > self.length or val[0] <= 0:
                raise ValueError("steps outside the profile range")
        pos.flags.writeable = False
        val.flags.writeable = False
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "values", val)

    @classmethod
    def from_dense(cls, dense, measure: str = "moc") -> "ComplexityProfile":
        """Build from ``dense[N-1] = value(N)``."""
        dense = np.asarray(dense, dtype=np.int64)
        prev = np.concatenate([[0], dense[:-1]])
        idx = np.nonzero(dense != prev)[0]
        return cls(idx + 1, dense[idx], int(dense.size), measure)

    @property
    def steps(self) -> list[tuple[int, int]]:
        return list(zip(self.positions.tolist(), self.values.tolist()))

    def __call__(self, n: int) -> int:
        if not 1 <= n <= self.length:
            raise IndexError(f"N={n} outside 1..{self.length}")
        i = int(np.searchsorted(self.positions, n, side="right"))
        return int(self.values[i - 1]) if i else 0

    def dense(self) -> np.ndarray:
        """``value(N)`` for ``N = 1..length`` as an array indexed from 0."""
        out = np.zeros(self.length, dtype=np.int64)
        for p, v in zip(self.positions, self.values):
            out[p - 1 :] = v
        return out

    def truncate(self, n: int) -> "ComplexityProfile":
        k = int(np.searchsorted(self.positions, n, side="right"))
        return ComplexityProfile(self.positions[:k], self.values[:k], min(n, self.length), self.measure)

    def __len__(self) -> int:
        return self.length
