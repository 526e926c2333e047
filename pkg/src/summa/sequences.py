"""Indexed real sequences, the generator family catalog, and forward differences.

Every object downstream of this module works on finite prefixes of infinite
sequences.  A ``RealSequence`` pins the absolute index of its first element so
that a prefix generated from index 1 is never silently confused with one
generated from index 0; all transform and check code asks the sequence where
it starts instead of assuming.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "RealSequence",
    "SequenceSpec",
    "CesaroParams",
    "FAMILIES",
    "materialize",
    "forward_difference",
]


@dataclass(frozen=True, eq=False)
class RealSequence:
    """A finite prefix ``u_s, u_(s+1), ..., u_(s+L-1)`` of a real sequence.

    ``start_index`` is the absolute index of ``values[0]``.  Values are stored
    as a read-only float64 array and must all be finite.
    """

    start_index: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if not isinstance(self.start_index, int) or self.start_index < 0:
            raise ValueError("start_index must be a non-negative integer")
        arr = np.asarray(self.values, dtype=np.float64).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("values must be a non-empty one-dimensional array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("sequence values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def end_index(self) -> int:
        """Absolute index of the last stored element."""
        return self.start_index + len(self) - 1

    def value_at(self, n: int) -> float:
        if n < self.start_index or n > self.end_index:
            raise IndexError(f"index {n} outside stored range "
                             f"[{self.start_index}, {self.end_index}]")
        return float(self.values[n - self.start_index])

    def indices(self) -> np.ndarray:
        return np.arange(self.start_index, self.end_index + 1)

    def range_view(self, lo: int, hi: int) -> np.ndarray:
        """Values for absolute indices lo..hi inclusive."""
        if lo < self.start_index or hi > self.end_index or lo > hi:
            raise IndexError(f"range [{lo}, {hi}] outside stored range "
                             f"[{self.start_index}, {self.end_index}]")
        return self.values[lo - self.start_index: hi - self.start_index + 1]


# Family generators.  Each takes the absolute index array and the validated
# parameter map and returns float64 values.  Domains are checked up front so a
# bad parameter fails loudly instead of minting NaNs.

def _alternating_unit(n: np.ndarray, p: dict) -> np.ndarray:
    return np.where(n % 2 == 0, 1.0, -1.0)


def _unit_tail(n: np.ndarray, p: dict) -> np.ndarray:
    return np.where(n >= 1, 1.0, 0.0)


def _power_decay(n: np.ndarray, p: dict) -> np.ndarray:
    base = n + p["c0"]
    if np.any(base <= 0):
        raise ValueError("power_decay requires n + c0 > 0 over the requested range")
    return p["c"] * np.power(base, -p["p"])


def _log_shift(n: np.ndarray, p: dict) -> np.ndarray:
    return np.log(n + 2.0)


def _reciprocal_log(n: np.ndarray, p: dict) -> np.ndarray:
    return 1.0 / np.log(n + 2.0)


def _almost_inc_example(n: np.ndarray, p: dict) -> np.ndarray:
    # n * e^((-1)^n): dips below its running max at every odd index.
    return n * np.exp(np.where(n % 2 == 0, 1.0, -1.0))


def _power_weight(n: np.ndarray, p: dict) -> np.ndarray:
    q = p["q"]
    if q < 0 and np.any(n == 0):
        raise ValueError("power_weight with q < 0 is undefined at index 0")
    return np.power(n.astype(np.float64), q)


# name -> (generator, {param: default or None when required})
FAMILIES: dict[str, tuple[Callable[[np.ndarray, dict], np.ndarray], dict[str, float | None]]] = {
    "alternating_unit": (_alternating_unit, {}),
    "unit_tail": (_unit_tail, {}),
    "power_decay": (_power_decay, {"c": 1.0, "c0": 1.0, "p": None}),
    "log_shift": (_log_shift, {}),
    "reciprocal_log": (_reciprocal_log, {}),
    "almost_inc_example": (_almost_inc_example, {}),
    "power_weight": (_power_weight, {"q": None}),
}


@dataclass(frozen=True)
class SequenceSpec:
    """Declarative recipe for a catalog sequence: family tag, params, range."""

    family: str
    n: int
    params: dict = field(default_factory=dict)
    start: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            known = ", ".join(sorted(FAMILIES))
            raise ValueError(f"unknown family {self.family!r} (known: {known})")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")
        if not isinstance(self.start, int) or self.start < 0:
            raise ValueError("start must be a non-negative integer")
        _, schema = FAMILIES[self.family]
        for key in self.params:
            if key not in schema:
                raise ValueError(f"family {self.family!r} has no parameter {key!r}")
        for key, default in schema.items():
            if default is None and key not in self.params:
                raise ValueError(f"family {self.family!r} requires parameter {key!r}")

    def resolved_params(self) -> dict[str, float]:
        _, schema = FAMILIES[self.family]
        out = {k: float(v) for k, v in schema.items() if v is not None}
        out.update({k: float(v) for k, v in self.params.items()})
        return out

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": {k: float(v) for k, v in sorted(self.params.items())},
            "n": self.n,
            "start": self.start,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SequenceSpec":
        if not isinstance(obj, dict):
            raise ValueError("sequence spec must be a JSON object")
        extra = set(obj) - {"family", "params", "n", "start"}
        if extra:
            raise ValueError(f"unknown sequence spec fields: {sorted(extra)}")
        return cls(
            family=obj.get("family", ""),
            params=dict(obj.get("params", {})),
            n=obj.get("n", 0),
            start=obj.get("start", 0),
        )


def materialize(spec: SequenceSpec) -> RealSequence:
    """Generate the first ``spec.n`` terms of the family from ``spec.start``.

    Deterministic: the same spec always yields bit-identical values.
    """
    gen, _ = FAMILIES[spec.family]
    idx = np.arange(spec.start, spec.start + spec.n, dtype=np.int64)
    vals = gen(idx, spec.resolved_params())
    return RealSequence(start_index=spec.start, values=vals)


def forward_difference(seq: RealSequence, order: int = 1) -> RealSequence:
    """Difference with the convention  (D u)_n = u_n - u_(n+1).

    Order 2 applies the same convention twice:
    (D^2 u)_n = u_n - 2 u_(n+1) + u_(n+2).  The result keeps the input's
    start index and is shorter by ``order`` entries.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if len(seq) <= order:
        raise ValueError(f"sequence too short for order-{order} difference")
    vals = seq.values
    for _ in range(order):
        vals = vals[:-1] - vals[1:]
    return RealSequence(start_index=seq.start_index, values=vals)


@dataclass(frozen=True)
class CesaroParams:
    """Shared transform/functional parameters.

    alpha: Cesaro order (> -1; the maximal-mean machinery needs 0 < alpha <= 1).
    k: summability exponent (>= 1).
    beta: index shift for the indexed weight form (>= 0).
    epsilon: weight-monotonicity exponent (> 0).
    """

    alpha: float = 1.0
    k: float = 1.0
    beta: float = 0.0
    epsilon: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "k", "beta", "epsilon"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"{name} must be a finite real number")
            object.__setattr__(self, name, float(v))
        if self.alpha <= -1.0:
            raise ValueError("alpha must exceed -1")
        if self.k < 1.0:
            raise ValueError("k must be at least 1")
        if self.beta < 0.0:
            raise ValueError("beta must be non-negative")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "k": self.k,
                "beta": self.beta, "epsilon": self.epsilon}

    @classmethod
    def from_json(cls, obj: dict) -> "CesaroParams":
        extra = set(obj) - {"alpha", "k", "beta", "epsilon"}
        if extra:
            raise ValueError(f"unknown parameter fields: {sorted(extra)}")
        return cls(**{k: float(v) for k, v in obj.items()})
