"""Generators for morphic sequences, digit-sum sequences and their polynomial subsequences."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .zeckendorf import digit_sum_z, digit_sum_z_array

__all__ = [
    "MorphismSpec",
    "BitSequence",
    "IntPolynomial",
    "ContinuedFractionSpec",
    "PRESETS",
    "preset",
    "load_morphism",
    "morphic_prefix",
    "thue_morse_bit",
    "sz_bit",
    "thue_morse_prefix",
    "sz_prefix",
    "polynomial_subsequence",
    "convergent_denominators",
    "ostrowski_digits",
    "ostrowski_bit",
    "generalized_lucas",
    "random_sequence",
]

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class MorphismSpec:
    alphabet: tuple[str, ...]
    images: Mapping[str, tuple[str, ...]]
    start: str
    coding: Mapping[str, int]

    def __post_init__(self):
        alphabet = tuple(str(a) for a in self.alphabet)
        images = {}
        for letter, word in dict(self.images).items():
            images[str(letter)] = tuple(word) if isinstance(word, str) else tuple(map(str, word))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "coding", {str(k): int(v) for k, v in dict(self.coding).items()})
        self.validate()

    def validate(self) -> None:
        letters = set(self.alphabet)
        if len(letters) != len(self.alphabet):
            raise ValueError("alphabet has repeated letters")
        if self.start not in letters:
            raise ValueError(f"start letter {self.start!r} not in alphabet")
        for a in self.alphabet:
            if a not in self.images:
                raise ValueError(f"letter {a!r} has no image")
            if a not in self.coding:
                raise ValueError(f"letter {a!r} has no coding")
            if not self.images[a]:
                raise ValueError(f"image of {a!r} is empty")
            bad = [b for b in self.images[a] if b not in letters]
            if bad:
                raise ValueError(f"image of {a!r} uses letters outside the alphabet: {bad}")
        extra = set(self.images) - letters
        if extra:
            raise ValueError(f"images given for unknown letters: {sorted(extra)}")
        first = self.images[self.start]
        if first[0] != self.start or len(first) < 2:
            raise ValueError(f"morphism is not prolongable on {self.start!r}")
        stuck = [a for a in self.reachable() if not self._grows(a)]
        if stuck:
            raise ValueError(f"letters {stuck} never produce growing words")

    def reachable(self) -> list[str]:
        seen = [self.start]
        todo = [self.start]
        while todo:
            for b in self.images[todo.pop()]:
                if b not in seen:
                    seen.append(b)
                    todo.append(b)
        return seen

    def _closure(self) -> dict[str, set[str]]:
        reach = {a: set(self.images[a]) for a in self.alphabet}
        for k in self.alphabet:
            for a in self.alphabet:
                if k in reach[a]:
                    reach[a] |= reach[k]
        return reach

    def _grows(self, letter: str) -> bool:
        # |f^n(x)| is unbounded iff x reaches a cycle through a letter whose image
        # has length >= 2.
        reach = self._closure()
        targets = reach[letter] | {letter}
        for y in targets:
            if y in reach[y]:
                for z in reach[y]:
                    if y in reach[z] and len(self.images[z]) >= 2:
                        return True
        return False

    @property
    def is_uniform(self) -> bool:
        return len({len(w) for w in self.images.values()}) == 1

    def to_dict(self) -> dict:
        single = all(len(a) == 1 for a in self.alphabet)
        return {
            "alphabet": list(self.alphabet),
            "images": {a: ("".join(w) if single else list(w)) for a, w in self.images.items()},
            "start": self.start,
            "coding": dict(self.coding),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "MorphismSpec":
        return cls(tuple(data["alphabet"]), data["images"], data["start"], data["coding"])


def load_morphism(path: str | Path) -> MorphismSpec:
    with open(path) as fh:
        return MorphismSpec.from_dict(json.load(fh))


PRESETS = {
    "thue-morse": MorphismSpec(("0", "1"), {"0": "01", "1": "10"}, "0", {"0": 0, "1": 1}),
    "zeckendorf": MorphismSpec(
        ("a", "b", "c", "d"),
        {"a": "ab", "b": "c", "c": "cd", "d": "a"},
        "a",
        {"a": 0, "b": 1, "c": 1, "d": 0},
    ),
}


def preset(name: str) -> MorphismSpec:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class BitSequence:
    """Finite prefix of a binary sequence with a record of how it was produced."""

    bits: np.ndarray
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        arr.flags.writeable = False
        object.__setattr__(self, "bits", arr)

    @classmethod
    def from_string(cls, text: str, provenance: dict | None = None) -> "BitSequence":
        text = text.strip()
        return cls(np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"),
                   provenance or {"generator": "literal"})

    def __len__(self) -> int:
        return int(self.bits.size)

    def __getitem__(self, item):
        return self.bits[item]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitSequence):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    def __str__(self) -> str:
        return (self.bits + ord("0")).tobytes().decode("ascii")

    def prefix(self, n: int) -> "BitSequence":
        return BitSequence(self.bits[:n], {**self.provenance, "length": n})


def morphic_prefix(spec: MorphismSpec, length: int) -> BitSequence:
    """First ``length`` symbols of the coded fixed point of ``spec``."""
    if length < 0:
        raise ValueError("length must be >= 0")
    index = {a: i for i, a in enumerate(spec.alphabet)}
    img_len = np.array([len(spec.images[a]) for a in spec.alphabet], dtype=np.int64)
    img_start = np.concatenate([[0], np.cumsum(img_len)[:-1]]).astype(np.int64)
    img_flat = np.array([index[b] for a in spec.alphabet for b in spec.images[a]], dtype=np.int64)
    coding = np.array([spec.coding[a] for a in spec.alphabet], dtype=np.uint8)

    word = np.array([index[spec.start]], dtype=np.int64)
    while word.size < length:
        lens = img_len[word]
        ends = np.cumsum(lens)
        # only letters whose images land inside the requested prefix matter
        keep = int(np.searchsorted(ends, length, side="left")) + 1
        word, lens, ends = word[:keep], lens[:keep], ends[:keep]
        total = int(ends[-1])
        offsets = np.arange(total, dtype=np.int64) - np.repeat(ends - lens, lens)
        grown = img_flat[np.repeat(img_start[word], lens) + offsets]
        if grown.size <= word.size:
            raise ValueError("morphism does not grow from the start letter")
        word = grown
    bits = coding[word[:length]]
    return BitSequence(bits, {"generator": "morphic", "morphism": spec.to_dict(), "length": length})


def thue_morse_bit(n: int) -> int:
    return n.bit_count() & 1


def sz_bit(n: int) -> int:
    return digit_sum_z(n) & 1


def _tm_array(values: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(values.astype(np.uint64)) & 1).astype(np.uint8)


def _sz_array(values: np.ndarray) -> np.ndarray:
    return (digit_sum_z_array(values) & 1).astype(np.uint8)


# vectorized companions used for int64-sized arguments
thue_morse_bit.array = _tm_array
sz_bit.array = _sz_array


def thue_morse_prefix(length: int) -> BitSequence:
    return BitSequence(_tm_array(np.arange(length, dtype=np.int64)),
                       {"generator": "thue_morse_bit", "length": length})


def sz_prefix(length: int) -> BitSequence:
    return BitSequence(_sz_array(np.arange(length, dtype=np.int64)),
                       {"generator": "sz_bit", "length": length})


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial with coefficients listed from the constant term upwards."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coefficients]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c or (len(c) == 1 and c[0] == 0):
            raise ValueError("the zero polynomial is not allowed")
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return cls(tuple(int(t) for t in text.split(",")))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __call__(self, n: int) -> int:
        acc = 0
        for a in reversed(self.coefficients):
            acc = acc * n + a
        return acc

    def magnitude_bound(self, n_max: int) -> int:
        """Upper bound for ``|P(n)|`` and all Horner partial values on ``0 <= n <= n_max``."""
        return sum(abs(a) * n_max**i for i, a in enumerate(self.coefficients))

    def evaluate_range(self, length: int):
        """``P(0), ..., P(length-1)``: an int64 array when safe, else a list of ints."""
        if length == 0:
            return np.zeros(0, dtype=np.int64)
        if self.magnitude_bound(length - 1) <= _INT64_MAX:
            n = np.arange(length, dtype=np.int64)
            acc = np.zeros(length, dtype=np.int64)
            for a in reversed(self.coefficients):
                acc = acc * n + a
            return acc
        return [self(n) for n in range(length)]

    def __str__(self) -> str:
        parts = []
        for i, a in reversed(list(enumerate(self.coefficients))):
            if a:
                parts.append(f"{a}" if i == 0 else f"{a}*X^{i}" if i > 1 else f"{a}*X")
        return " + ".join(parts)


def polynomial_subsequence(base: Callable[[int], int], poly: IntPolynomial | Sequence[int],
                           length: int) -> BitSequence:
    """``bits[n] = base(P(n))`` for ``0 <= n < length``."""
    if not isinstance(poly, IntPolynomial):
        poly = IntPolynomial(tuple(poly))
    values = poly.evaluate_range(length)
    vectorized = getattr(base, "array", None)
    if isinstance(values, np.ndarray):
        if values.size and values.min() < 0:
            bad = int(np.argmax(values < 0))
            raise ValueError(f"P({bad}) = {int(values[bad])} is negative")
        bits = vectorized(values) if vectorized else np.array([base(int(v)) for v in values])
    else:
        for n, v in enumerate(values):
            if v < 0:
                raise ValueError(f"P({n}) = {v} is negative")
        bits = np.array([base(v) for v in values], dtype=np.uint8)
    return BitSequence(bits, {
        "generator": "polynomial_subsequence",
        "base": getattr(base, "__name__", repr(base)),
        "poly": list(poly.coefficients),
        "length": length,
    })


@dataclass(frozen=True)
class ContinuedFractionSpec:
    """Partial quotients ``a_0, a_1, ...``: a finite preperiod followed by a repeating period."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre = tuple(int(a) for a in self.preperiod)
        per = tuple(int(a) for a in self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        if not per:
            raise ValueError("period must be nonempty")
        quotients = pre + per
        if quotients[0] < 0:
            raise ValueError("a_0 must be >= 0")
        if any(a < 1 for a in quotients[1:]) or (not pre and per[0] < 1):
            raise ValueError("partial quotients a_i, i >= 1, must be >= 1")

    @classmethod
    def golden(cls) -> "ContinuedFractionSpec":
        return cls((1,), (1,))

    @classmethod
    def parse(cls, text: str) -> "ContinuedFractionSpec":
        """``"1:2"`` is ``[1; 2, 2, ...]``; ``"0,3:1,2"`` is ``[0; 3, 1, 2, 1, 2, ...]``."""
        pre, _, per = text.partition(":")
        to_ints = lambda s: tuple(int(t) for t in s.split(",") if t.strip())
        return cls(to_ints(pre), to_ints(per))

    def quotient(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def __str__(self) -> str:
        return ",".join(map(str, self.preperiod)) + ":" + ",".join(map(str, self.period))


def convergent_denominators(cf: ContinuedFractionSpec, count: int) -> list[int]:
    """``q_0, ..., q_{count-1}`` from ``q_{-2} = 1``, ``q_{-1} = 0``, ``q_n = a_n q_{n-1} + q_{n-2}``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    q2, q1 = 1, 0
    out = []
    for i in range(count):
        q2, q1 = q1, cf.quotient(i) * q1 + q2
        out.append(q1)
    return out


def _denominators_upto(cf: ContinuedFractionSpec, n: int) -> list[int]:
    q = convergent_denominators(cf, 2)
    while q[-1] <= n:
        q.append(cf.quotient(len(q)) * q[-1] + q[-2])
    return q


def _check_ostrowski(cf: ContinuedFractionSpec, digits: Sequence[int]) -> None:
    for i, b in enumerate(digits):
        top = cf.quotient(i + 1)
        if b < 0 or (b >= top if i == 0 else b > top):
            raise RuntimeError(f"illegal Ostrowski digit b_{i} = {b}")
        if i >= 1 and b == top and digits[i - 1] != 0:
            raise RuntimeError(f"b_{i} = a_{i + 1} but b_{i - 1} != 0")


def ostrowski_digits(cf: ContinuedFractionSpec, n: int) -> tuple[int, ...]:
    """Ostrowski digits ``(b_0, b_1, ...)`` of ``n``, ``b_i`` weighting ``q_i``.

    At the golden ratio ``q_0 = q_1 = 1`` and ``b_0`` is always 0, so
    ``b_{i+1}`` equals the Zeckendorf digit ``eps_i``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    q = _denominators_upto(cf, n)
    digits = [0] * len(q)
    rem = n
    for i in range(len(q) - 1, -1, -1):
        digits[i], rem = divmod(rem, q[i])
    while digits and digits[-1] == 0:
        digits.pop()
    _check_ostrowski(cf, digits)
    return tuple(digits)


def ostrowski_bit(cf: ContinuedFractionSpec) -> Callable[[int], int]:
    """Bit function ``n -> (sum of Ostrowski digits of n) mod 2``."""
    def bit(n: int) -> int:
        return sum(ostrowski_digits(cf, n)) & 1
    bit.__name__ = f"ostrowski_bit[{cf}]"
    return bit


def generalized_lucas(cf: ContinuedFractionSpec, n: int) -> int:
    """Experimental analogue of Lucas numbers: ``q_{n+1} + q_{n-1}`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q = convergent_denominators(cf, n + 2)
    return q[n + 1] + q[n - 1]


def random_sequence(length: int, seed: int | None = None) -> BitSequence:
    rng = np.random.default_rng(seed)
    return BitSequence(rng.integers(0, 2, size=length, dtype=np.uint8),
                       {"generator": "random", "seed": seed, "length": length})
