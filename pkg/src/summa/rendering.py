"""Deterministic number rendering for report and trace files.

Floats are written with 17 significant digits, which round-trips every
double exactly and keeps diffs stable across runs.  Values with magnitude
below 1e-4 or at least 1e16 switch to lowercase scientific notation.
"""

from __future__ import annotations

import math

__all__ = ["render_number"]


def render_number(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite value {x!r}")
    if x == 0.0:
        return "0"
    mag = abs(x)
    if mag < 1e-4 or mag >= 1e16:
        return f"{x:.16e}"
    exponent = math.floor(math.log10(mag))
    # log10 can land one off right at a power-of-ten boundary
    if 10.0 ** exponent > mag:
        exponent -= 1
    elif 10.0 ** (exponent + 1) <= mag:
        exponent += 1
    decimals = max(0, 16 - exponent)
    return f"{x:.{decimals}f}"
