"""Discrete Hilbert-type transform and the Cesaro / Calderon operator family.

All sums here are finite because inputs are finitely supported: there is no
truncation error, only floating round-off.
"""

from __future__ import annotations

import numpy as np

from tritrunc import _kernels
from tritrunc.sequences import DecreasingWeights, LateralSequence


def hilbert_discrete(x: LateralSequence, out_lo: int, out_hi: int) -> LateralSequence:
    """Odd-offset convolution (1/pi) sum_{m - n odd} x(m) / (m - n).

    Returns the values for ``n`` in ``[out_lo, out_hi]``.  Even offsets are
    never touched, so parity zeros (for instance at odd ``n`` when ``x``
    lives on the odd integers) are exact floating-point zeros.
    """
    if out_lo > out_hi:
        raise ValueError("output window requires out_lo <= out_hi")
    if x.is_zero:
        return LateralSequence.zero()
    vals = _kernels.hilbert_window(x.frequencies, x.values, out_lo, out_hi)
    return LateralSequence(out_lo, vals)


def cesaro(values, out_len: int) -> np.ndarray:
    """Cesaro averages (1/(n+1)) sum_{k<=n} x(k) on the window ``0..out_len-1``.

    ``values`` is a finitely supported real sequence on the nonnegative
    integers, given densely from index 0.
    """
    if out_len <= 0:
        raise ValueError("out_len must be positive")
    v = np.asarray(values, dtype=np.float64).reshape(-1)
    partial = np.cumsum(v)
    total = partial[-1] if v.size else 0.0
    n = np.arange(out_len, dtype=np.float64)
    running = np.full(out_len, total)
    m = min(out_len, v.size)
    running[:m] = partial[:m]
    return running / (n + 1.0)


def cesaro_adjoint(values, out_len: int) -> np.ndarray:
    """Tail sums sum_{k>=n} x(k) / (k+1) on the window ``0..out_len-1``."""
    if out_len <= 0:
        raise ValueError("out_len must be positive")
    v = np.asarray(values, dtype=np.float64).reshape(-1)
    out = np.zeros(out_len, dtype=np.float64)
    if v.size == 0:
        return out
    scaled = v / (np.arange(v.size) + 1.0)
    tails = np.cumsum(scaled[::-1])[::-1]
    m = min(out_len, v.size)
    out[:m] = tails[:m]
    return out


def calderon(mu: DecreasingWeights, out_len: int) -> DecreasingWeights:
    """Discrete Calderon operator: Cesaro average plus its adjoint.

    For nonincreasing nonnegative input the output is nonincreasing and
    nonnegative; this is asserted (with a 1e-12 relative budget for float
    noise, after which a running minimum canonicalizes the ties).
    """
    if out_len <= 0:
        raise ValueError("out_len must be positive")
    s = cesaro(mu.weights, out_len) + cesaro_adjoint(mu.weights, out_len)
    scale = s[0] if s.size and s[0] > 0 else 1.0
    if np.any(np.diff(s) > 1e-12 * scale):
        raise AssertionError("Calderon output lost monotonicity beyond round-off budget")
    return DecreasingWeights(np.minimum.accumulate(s))
