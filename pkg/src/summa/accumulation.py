"""Compensated accumulation helpers.

Partial-sum traces compare a slowly growing sum against a reference at
geometric checkpoints, and the term-identity checks subtract adjacent means
that agree to many digits.  Plain left-to-right accumulation loses up to
n*eps relative accuracy there, which is visible at the tolerances this
package promises, so running sums are Neumaier-compensated (error stays at a
few ulp of the true prefix regardless of length) and one-shot reductions go
through ``math.fsum``.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["compensated_cumsum", "exact_sum"]


def compensated_cumsum(values) -> np.ndarray:
    """All prefix sums of ``values``, each compensated (Neumaier).

    out[i] = values[0] + ... + values[i] with error O(eps * sum|values|),
    independent of i.
    """
    arr = np.asarray(values, dtype=np.float64)
    out = np.empty(arr.size, dtype=np.float64)
    total = 0.0
    comp = 0.0
    for i, x in enumerate(arr.tolist()):
        t = total + x
        if abs(total) >= abs(x):
            comp += (total - t) + x
        else:
            comp += (x - t) + total
        total = t
        out[i] = total + comp
    return out


def exact_sum(values) -> float:
    """Exactly rounded sum of a float array (thin fsum wrapper)."""
    arr = np.asarray(values, dtype=np.float64)
    return math.fsum(arr.tolist())
