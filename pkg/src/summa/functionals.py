"""Weighted summability functionals and their partial-sum traces.

The general functional attached to a mean sequence (t_n) with weights
(phi_n) and exponent k >= 1 is

    sum_n n^(-k) * |phi_n * t_n|^k.

Two named weight choices recover the classical absolute-summability series
(with the monotonicity exponent epsilon = 1):

    classic:  phi_n = n^(1 - 1/k)        ->  sum n^(-1)      * |t_n|^k
    indexed:  phi_n = n^(beta + 1 - 1/k) ->  sum n^(beta*k-1) * |t_n|^k

Traces never materialize infinite series; they report compensated partial
sums at caller-chosen checkpoints.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .accumulation import compensated_cumsum
from .cesaro import cesaro_t
from .rendering import render_number
from .sequences import CesaroParams, RealSequence

__all__ = [
    "WeightKind",
    "WeightSpec",
    "FunctionalTrace",
    "weighted_power_trace",
    "functional_partial_sums",
    "ReductionIdentityReport",
    "reduction_identity_check",
]


class WeightKind(str, enum.Enum):
    EXPLICIT_PHI = "explicit_phi"
    CLASSIC = "classic"
    INDEXED = "indexed"


@dataclass(frozen=True)
class WeightSpec:
    """Weight recipe: an explicit (phi_n) prefix or a named power form."""

    kind: WeightKind
    phi: RealSequence | None = None
    beta: float | None = None

    def __post_init__(self) -> None:
        kind = WeightKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is WeightKind.EXPLICIT_PHI:
            if self.phi is None:
                raise ValueError("explicit_phi weight requires a phi sequence")
            if self.phi.start_index > 1:
                raise ValueError("explicit phi must cover indices from 1")
        elif self.phi is not None:
            raise ValueError(f"{kind.value} weight takes no explicit phi")
        if self.beta is not None:
            beta = float(self.beta)
            if not math.isfinite(beta) or beta < 0.0:
                raise ValueError("beta must be finite and non-negative")
            object.__setattr__(self, "beta", beta)
            if kind is not WeightKind.INDEXED:
                raise ValueError("beta applies to the indexed weight only")

    def phi_values(self, n_max: int, k: float, beta_default: float = 0.0) -> np.ndarray:
        """|phi_n| for n = 1..n_max.  Complex-valued weights from the parent

        definition are represented by their moduli; nothing downstream ever
        uses more than |phi_n|.
        """
        if n_max < 1:
            raise ValueError("n_max must be at least 1")
        n = np.arange(1.0, n_max + 1.0)
        if self.kind is WeightKind.CLASSIC:
            return np.power(n, 1.0 - 1.0 / k)
        if self.kind is WeightKind.INDEXED:
            beta = self.beta if self.beta is not None else float(beta_default)
            return np.power(n, beta + 1.0 - 1.0 / k)
        assert self.phi is not None
        if self.phi.end_index < n_max:
            raise ValueError(f"explicit phi covers only indices up to "
                             f"{self.phi.end_index}, need {n_max}")
        return np.abs(self.phi.range_view(1, n_max))


@dataclass(frozen=True)
class FunctionalTrace:
    """Partial sums of a non-negative term series, sampled at checkpoints."""

    checkpoints: tuple[int, ...]
    partial_sums: np.ndarray

    def __post_init__(self) -> None:
        cps = tuple(int(c) for c in self.checkpoints)
        if len(cps) == 0:
            raise ValueError("trace needs at least one checkpoint")
        if cps[0] < 1 or any(b <= a for a, b in zip(cps, cps[1:])):
            raise ValueError("checkpoints must be strictly increasing and >= 1")
        sums = np.asarray(self.partial_sums, dtype=np.float64).copy()
        if sums.shape != (len(cps),):
            raise ValueError("one partial sum per checkpoint required")
        if np.any(sums < 0.0) or np.any(np.diff(sums) < 0.0):
            raise ValueError("partial sums of non-negative terms must be "
                             "non-negative and non-decreasing")
        sums.setflags(write=False)
        object.__setattr__(self, "checkpoints", cps)
        object.__setattr__(self, "partial_sums", sums)

    def __len__(self) -> int:
        return len(self.checkpoints)

    def to_csv(self) -> str:
        lines = ["checkpoint,partial_sum"]
        for cp, ps in zip(self.checkpoints, self.partial_sums.tolist()):
            lines.append(f"{cp},{render_number(ps)}")
        return "\n".join(lines) + "\n"


def _validate_checkpoints(checkpoints: Sequence[int], limit: int) -> tuple[int, ...]:
    cps = tuple(int(c) for c in checkpoints)
    if len(cps) == 0:
        raise ValueError("at least one checkpoint required")
    if cps[0] < 1 or any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be strictly increasing and >= 1")
    if cps[-1] > limit:
        raise ValueError(f"checkpoint {cps[-1]} exceeds available prefix "
                         f"length {limit}")
    return cps


def weighted_power_trace(values: np.ndarray, k: float, phi: np.ndarray,
                         checkpoints: Sequence[int]) -> FunctionalTrace:
    """Trace of sum_n n^(-k) |phi_n * values_n|^k, values indexed from 1.

    Shared workhorse: the functional proper feeds it t, the hypothesis
    checks feed it the maximal sequence w.
    """
    values = np.asarray(values, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    if values.shape != phi.shape:
        raise ValueError("values and phi must align")
    if k < 1.0:
        raise ValueError("k must be at least 1")
    cps = _validate_checkpoints(checkpoints, values.size)
    n = np.arange(1.0, values.size + 1.0)
    terms = np.power(np.abs(phi * values) / n, k)
    # compensated prefixes of non-negative terms can dip by one ulp; the
    # running max restores exact monotonicity without moving any value
    # beyond that ulp
    partials = np.maximum.accumulate(compensated_cumsum(terms))
    idx = np.asarray(cps, dtype=np.int64) - 1
    return FunctionalTrace(checkpoints=cps, partial_sums=partials[idx])


def functional_partial_sums(a: RealSequence, params: CesaroParams,
                            weight: WeightSpec,
                            checkpoints: Sequence[int]) -> FunctionalTrace:
    """Checkpointed partial sums of the weighted functional of t^alpha(a)."""
    t = cesaro_t(a, params.alpha)
    cps = _validate_checkpoints(checkpoints, len(t))
    phi = weight.phi_values(len(t), params.k, beta_default=params.beta)
    return weighted_power_trace(t.values, params.k, phi, cps)


@dataclass(frozen=True)
class ReductionIdentityReport:
    """Named-weight traces next to their direct reduced forms.

    The deviations are term-wise: max over n of the relative gap between the
    phi-form term and the reduced-form term.  Both classic pairs and indexed
    pairs agree analytically; the report measures the floating-point gap.
    """

    m: int
    k: float
    beta: float
    classic_trace: FunctionalTrace
    classic_direct_trace: FunctionalTrace
    indexed_trace: FunctionalTrace
    indexed_direct_trace: FunctionalTrace
    max_rel_dev_classic: float
    max_rel_dev_indexed: float


def _max_rel_deviation(x: np.ndarray, y: np.ndarray) -> float:
    scale = np.maximum(np.abs(x), np.abs(y))
    diff = np.abs(x - y)
    mask = scale > 0.0
    if not np.any(mask):
        return 0.0
    return float(np.max(diff[mask] / scale[mask]))


def reduction_identity_check(a: RealSequence, params: CesaroParams,
                             m: int) -> ReductionIdentityReport:
    """Check both named-weight reductions term-by-term out to index m."""
    if m < 1:
        raise ValueError("m must be at least 1")
    t = cesaro_t(a, params.alpha)
    if len(t) < m:
        raise ValueError(f"t prefix has length {len(t)}, need {m}")
    k, beta = params.k, params.beta
    n = np.arange(1.0, m + 1.0)
    tm = np.abs(t.values[:m])

    phi_classic = np.power(n, 1.0 - 1.0 / k)
    terms_classic = np.power(phi_classic * tm / n, k)
    terms_eq_classic = np.power(tm, k) / n

    phi_indexed = np.power(n, beta + 1.0 - 1.0 / k)
    terms_indexed = np.power(phi_indexed * tm / n, k)
    terms_eq_indexed = np.power(n, beta * k - 1.0) * np.power(tm, k)

    cps = tuple(range(1, m + 1))

    def trace(terms: np.ndarray) -> FunctionalTrace:
        partials = np.maximum.accumulate(compensated_cumsum(terms))
        return FunctionalTrace(checkpoints=cps, partial_sums=partials)

    return ReductionIdentityReport(
        m=m, k=k, beta=beta,
        classic_trace=trace(terms_classic),
        classic_direct_trace=trace(terms_eq_classic),
        indexed_trace=trace(terms_indexed),
        indexed_direct_trace=trace(terms_eq_indexed),
        max_rel_dev_classic=_max_rel_deviation(terms_classic, terms_eq_classic),
        max_rel_dev_indexed=_max_rel_deviation(terms_indexed, terms_eq_indexed),
    )
