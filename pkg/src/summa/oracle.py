"""Exact rational verification of the proof-step identities and bounds.

The float engine can only ever show approximate agreement; this module
reruns the algebra that the factor-theorem proof leans on in exact
``fractions.Fraction`` arithmetic, where an identity either holds
bit-for-bit or is refuted by a concrete counterexample:

  * the summation-by-parts rearrangement of the factored mean
    T_n = (1/A_n) sum_(v=1..n) A_(n-v)^(alpha-1) v a_v lambda_v,
  * the kernel bound |sum_(p=0..v) A_(n-p)^(alpha-1) a_p|
        <= max_(1<=m<=v) |sum_(p=0..m) A_(m-p)^(alpha-1) a_p|
    for 0 < alpha <= 1,
  * the two-term decomposition |T_n| <= T_n1 + T_n2 built from the maximal
    sequence w and |D lambda|,
  * the elementary power bound |x + y|^k <= 2^k (|x|^k + |y|^k).

Randomized suites hammer each statement over seeded input distributions
and report violation counts; a correct implementation reports zero.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "RationalSequence",
    "rational_cesaro_coefficients",
    "rational_cesaro_t",
    "AbelIdentityResult",
    "abel_identity_check",
    "LemmaBoundResult",
    "lemma1_check",
    "DecompositionResult",
    "decomposition_bound_check",
    "power_inequality_check",
    "OracleSuiteReport",
    "run_abel_suite",
    "run_lemma1_suite",
    "run_decomposition_suite",
    "run_power_inequality_suite",
    "run_all_suites",
]

# alpha values the randomized suites draw from; all in (0, 1] as the lemma
# and decomposition require
_ALPHA_POOL = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2),
               Fraction(2, 3), Fraction(3, 4), Fraction(1))


@dataclass(frozen=True)
class RationalSequence:
    """Exact analogue of RealSequence: a tuple of Fractions with a start index."""

    start_index: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.start_index, int) or self.start_index < 0:
            raise ValueError("start_index must be a non-negative integer")
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) == 0:
            raise ValueError("values must be non-empty")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end_index(self) -> int:
        return self.start_index + len(self.values) - 1

    def value_at(self, n: int) -> Fraction:
        if n < self.start_index or n > self.end_index:
            raise IndexError(f"index {n} outside stored range "
                             f"[{self.start_index}, {self.end_index}]")
        return self.values[n - self.start_index]


@functools.lru_cache(maxsize=None)
def _weights_cached(order: Fraction, n_max: int) -> tuple[Fraction, ...]:
    out = [Fraction(1)]
    for j in range(1, n_max + 1):
        out.append(out[-1] * (order + j) / j)
    return tuple(out)


def rational_cesaro_coefficients(alpha: Fraction, n_max: int) -> tuple[Fraction, ...]:
    """Exact A_0^alpha .. A_n_max^alpha; alpha must be a rational > -1."""
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return _weights_cached(alpha, n_max)


def rational_cesaro_t(a: RationalSequence, alpha: Fraction, n: int) -> tuple[Fraction, ...]:
    """Exact t_1^alpha .. t_n^alpha of a; a must cover indices 1..n."""
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    if n < 1:
        raise ValueError("n must be at least 1")
    if a.start_index > 1 or a.end_index < n:
        raise ValueError(f"a must cover indices 1..{n}")
    kernel = _weights_cached(alpha - 1, n - 1)
    denom = rational_cesaro_coefficients(alpha, n)
    out = []
    for m in range(1, n + 1):
        acc = Fraction(0)
        for v in range(1, m + 1):
            acc += kernel[m - v] * v * a.value_at(v)
        out.append(acc / denom[m])
    return tuple(out)


def _w_exact(t: tuple[Fraction, ...], alpha: Fraction) -> tuple[Fraction, ...]:
    if not (0 < alpha <= 1):
        raise ValueError("w is defined for 0 < alpha <= 1 only")
    if alpha == 1:
        return tuple(abs(x) for x in t)
    out = []
    best = Fraction(0)
    for x in t:
        best = max(best, abs(x))
        out.append(best)
    return tuple(out)


@dataclass(frozen=True)
class AbelIdentityResult:
    equal: bool
    lhs: Fraction
    rhs: Fraction


def abel_identity_check(a: RationalSequence, lam: RationalSequence,
                        alpha: Fraction, n: int) -> AbelIdentityResult:
    """Summation by parts on the factored mean, checked exactly.

    lhs = sum_(v=1..n) A_(n-v)^(alpha-1) v a_v lambda_v
    rhs = sum_(v=1..n-1) (lambda_v - lambda_(v+1)) U_v  +  lambda_n U_n
    with U_v = sum_(p=1..v) A_(n-p)^(alpha-1) p a_p.  The two are equal for
    every choice of inputs; any inequality is an implementation bug.
    """
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    if n < 1:
        raise ValueError("n must be at least 1")
    if a.start_index > 1 or a.end_index < n:
        raise ValueError(f"a must cover indices 1..{n}")
    if lam.start_index > 1 or lam.end_index < n:
        raise ValueError(f"lambda must cover indices 1..{n}")
    kernel = _weights_cached(alpha - 1, n - 1)

    lhs = Fraction(0)
    for v in range(1, n + 1):
        lhs += kernel[n - v] * v * a.value_at(v) * lam.value_at(v)

    prefix = Fraction(0)
    rhs = Fraction(0)
    u_last = Fraction(0)
    for v in range(1, n + 1):
        prefix += kernel[n - v] * v * a.value_at(v)
        if v < n:
            rhs += (lam.value_at(v) - lam.value_at(v + 1)) * prefix
        else:
            u_last = prefix
    rhs += lam.value_at(n) * u_last

    return AbelIdentityResult(equal=(lhs == rhs), lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class LemmaBoundResult:
    holds: bool
    lhs: Fraction
    rhs: Fraction


def lemma1_check(a: RationalSequence, alpha: Fraction, n: int,
                 v: int) -> LemmaBoundResult:
    """Kernel maximal bound for 0 < alpha <= 1, exact.

    lhs = |sum_(p=0..v) A_(n-p)^(alpha-1) a_p|
    rhs = max over 1 <= m <= v of |sum_(p=0..m) A_(m-p)^(alpha-1) a_p|
    """
    alpha = Fraction(alpha)
    if not (0 < alpha <= 1):
        raise ValueError("the bound requires 0 < alpha <= 1")
    if not (1 <= v <= n):
        raise ValueError("need 1 <= v <= n")
    if a.start_index > 0 or a.end_index < v:
        raise ValueError(f"a must cover indices 0..{v}")
    kernel = _weights_cached(alpha - 1, n)

    lhs = abs(sum((kernel[n - p] * a.value_at(p) for p in range(v + 1)),
                  Fraction(0)))
    rhs = Fraction(0)
    for m in range(1, v + 1):
        inner = sum((kernel[m - p] * a.value_at(p) for p in range(m + 1)),
                    Fraction(0))
        rhs = max(rhs, abs(inner))
    return LemmaBoundResult(holds=(lhs <= rhs), lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class DecompositionResult:
    """Exact two-term bound on the factored mean, plus a finite Hoelder check.

    T is the factored mean itself; T1 and T2 are the maximal-sequence
    bounds on its two summation-by-parts pieces.  The Hoelder fields verify
    sum u_v g_v <= (sum u_v^k)^(1/k) (sum g_v^k')^(1/k') in floating point
    for the split u_v = A_v w_v |D lambda_v|^(1/k), g_v = |D lambda_v|^(1/k')
    actually used to estimate T1.
    """

    T: Fraction
    T1: Fraction
    T2: Fraction
    holds: bool
    holder_lhs: float
    holder_rhs: float
    holder_holds: bool


def decomposition_bound_check(a: RationalSequence, lam: RationalSequence,
                              alpha: Fraction, n: int,
                              k: float = 2.0) -> DecompositionResult:
    """Exact check of |T_n| <= T_n1 + T_n2 for 0 < alpha <= 1.

    T_n1 = (1/A_n^alpha) sum_(v=1..n-1) A_v^alpha w_v^alpha |D lambda_v|,
    T_n2 = |lambda_n| w_n^alpha.
    """
    alpha = Fraction(alpha)
    if not (0 < alpha <= 1):
        raise ValueError("the decomposition requires 0 < alpha <= 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    if a.start_index > 1 or a.end_index < n:
        raise ValueError(f"a must cover indices 1..{n}")
    if lam.start_index > 1 or lam.end_index < n:
        raise ValueError(f"lambda must cover indices 1..{n}")
    if k < 1.0:
        raise ValueError("k must be at least 1")

    coeffs = rational_cesaro_coefficients(alpha, n)
    kernel = _weights_cached(alpha - 1, n - 1)
    t = rational_cesaro_t(a, alpha, n)
    w = _w_exact(t, alpha)

    T = Fraction(0)
    for v in range(1, n + 1):
        T += kernel[n - v] * v * a.value_at(v) * lam.value_at(v)
    T /= coeffs[n]

    dlam = [lam.value_at(v) - lam.value_at(v + 1) for v in range(1, n)]
    T1 = sum((coeffs[v] * w[v - 1] * abs(dlam[v - 1]) for v in range(1, n)),
             Fraction(0)) / coeffs[n]
    T2 = abs(lam.value_at(n)) * w[n - 1]
    holds = abs(T) <= T1 + T2

    if k > 1.0 and n > 1:
        kp = k / (k - 1.0)
        u = [float(coeffs[v] * w[v - 1]) * float(abs(dlam[v - 1])) ** (1.0 / k)
             for v in range(1, n)]
        g = [float(abs(dlam[v - 1])) ** (1.0 / kp) for v in range(1, n)]
        holder_lhs = math.fsum(ui * gi for ui, gi in zip(u, g))
        holder_rhs = (math.fsum(ui ** k for ui in u) ** (1.0 / k)
                      * math.fsum(gi ** kp for gi in g) ** (1.0 / kp))
    else:
        holder_lhs = float(T1 * coeffs[n])
        holder_rhs = holder_lhs
    holder_holds = holder_lhs <= holder_rhs * (1.0 + 1e-12)

    return DecompositionResult(T=T, T1=T1, T2=T2, holds=holds,
                               holder_lhs=holder_lhs, holder_rhs=holder_rhs,
                               holder_holds=holder_holds)


def power_inequality_check(x: float, y: float, k: float) -> bool:
    """|x + y|^k <= 2^k (|x|^k + |y|^k) for k >= 1."""
    if k < 1.0:
        raise ValueError("k must be at least 1")
    return abs(x + y) ** k <= 2.0 ** k * (abs(x) ** k + abs(y) ** k)


@dataclass(frozen=True)
class OracleSuiteReport:
    check: str
    trials: int
    violations: int
    first_violation_input: dict | None
    seed: int

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "trials": self.trials,
            "violations": self.violations,
            "first_violation_input": self.first_violation_input,
            "seed": self.seed,
        }


def _frac_str(x: Fraction) -> str:
    return str(x)


def _seq_json(values) -> list[str]:
    return [_frac_str(v) for v in values]


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def run_abel_suite(seed: int, trials: int = 200,
                   max_n: int = 20) -> OracleSuiteReport:
    """Random integer sequences; the rearrangement must hold exactly."""
    rng = random.Random(seed)
    alphas = (Fraction(1, 4), Fraction(1, 2), Fraction(1))
    violations = 0
    first_input = None
    for _ in range(trials):
        n = rng.randint(1, max_n)
        a = RationalSequence(1, tuple(Fraction(rng.randint(-9, 9))
                                      for _ in range(n)))
        lam = RationalSequence(1, tuple(Fraction(rng.randint(-9, 9))
                                        for _ in range(n)))
        alpha = rng.choice(alphas)
        result = abel_identity_check(a, lam, alpha, n)
        if not result.equal:
            violations += 1
            if first_input is None:
                first_input = {"a": _seq_json(a.values),
                               "lambda": _seq_json(lam.values),
                               "alpha": _frac_str(alpha), "n": n}
    return OracleSuiteReport(check="abel_identity", trials=trials,
                             violations=violations,
                             first_violation_input=first_input, seed=seed)


def run_lemma1_suite(seed: int, trials: int = 10_000,
                     max_n: int = 12) -> OracleSuiteReport:
    """Random rational sequences against the kernel maximal bound.

    The index-0 term is held at zero: the factor theorem only ever applies
    the bound to sequences of the form (p a_p), which vanish at p = 0, and
    with a free a_0 the inequality is simply false (a_0 = -8/3, a_1 = 1,
    alpha = 1/2, n = 2, v = 1 gives 1/2 on the left, 1/3 on the right).
    """
    rng = random.Random(seed)
    violations = 0
    first_input = None
    for _ in range(trials):
        n = rng.randint(1, max_n)
        v = rng.randint(1, n)
        a = RationalSequence(0, (Fraction(0),)
                             + tuple(_random_rational(rng)
                                     for _ in range(v)))
        alpha = rng.choice(_ALPHA_POOL)
        result = lemma1_check(a, alpha, n, v)
        if not result.holds:
            violations += 1
            if first_input is None:
                first_input = {"a": _seq_json(a.values),
                               "alpha": _frac_str(alpha), "n": n, "v": v}
    return OracleSuiteReport(check="lemma1_bound", trials=trials,
                             violations=violations,
                             first_violation_input=first_input, seed=seed)


def run_decomposition_suite(seed: int, trials: int = 1000,
                            max_n: int = 15) -> OracleSuiteReport:
    """Random rational inputs against the exact two-term bound."""
    rng = random.Random(seed)
    violations = 0
    first_input = None
    for _ in range(trials):
        n = rng.randint(1, max_n)
        a = RationalSequence(1, tuple(_random_rational(rng) for _ in range(n)))
        lam = RationalSequence(1, tuple(_random_rational(rng)
                                        for _ in range(n)))
        alpha = rng.choice(_ALPHA_POOL)
        result = decomposition_bound_check(a, lam, alpha, n)
        if not (result.holds and result.holder_holds):
            violations += 1
            if first_input is None:
                first_input = {"a": _seq_json(a.values),
                               "lambda": _seq_json(lam.values),
                               "alpha": _frac_str(alpha), "n": n}
    return OracleSuiteReport(check="decomposition_bound", trials=trials,
                             violations=violations,
                             first_violation_input=first_input, seed=seed)


def run_power_inequality_suite(seed: int,
                               trials: int = 10_000) -> OracleSuiteReport:
    rng = random.Random(seed)
    violations = 0
    first_input = None
    for _ in range(trials):
        x = rng.uniform(-10.0, 10.0)
        y = rng.uniform(-10.0, 10.0)
        k = rng.uniform(1.0, 4.0)
        if not power_inequality_check(x, y, k):
            violations += 1
            if first_input is None:
                first_input = {"x": x, "y": y, "k": k}
    return OracleSuiteReport(check="power_inequality", trials=trials,
                             violations=violations,
                             first_violation_input=first_input, seed=seed)


def run_all_suites(seed: int, trials: int | None = None) -> list[OracleSuiteReport]:
    """All four suites with per-suite derived seeds.

    ``trials`` overrides every suite's trial count when given (handy for
    smoke runs); None keeps the per-suite defaults.
    """
    kw = {} if trials is None else {"trials": int(trials)}
    return [
        run_abel_suite(seed, **kw),
        run_lemma1_suite(seed + 1000003, **kw),
        run_decomposition_suite(seed + 2000006, **kw),
        run_power_inequality_suite(seed + 3000009, **kw),
    ]
