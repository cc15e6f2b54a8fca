"""Trigonometric-polynomial evaluation and piecewise quadrature on (-pi, pi)."""

from __future__ import annotations

import numpy as np

from tritrunc import _kernels
from tritrunc.sequences import LateralSequence

# 4-point Gauss-Legendre rule on [-1, 1]; exact through degree 7 per panel
_GAUSS4_NODES, _GAUSS4_WEIGHTS = np.polynomial.legendre.leggauss(4)

QUADRATURE_RULES = ("midpoint", "gauss4")


def trig_eval(x: LateralSequence, t):
    """Evaluate the trigonometric polynomial sum_m x(m) e^{i m t}.

    ``t`` may be a scalar or an array; the sum is exact up to round-off
    (finite support, no truncation).
    """
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
    out = _kernels.trig_series_at(x.frequencies, x.values, ts.reshape(-1)).reshape(ts.shape)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return complex(out.reshape(-1)[0])
    return out


def sgn_fourier_coefficient(k: int) -> complex:
    """Integral of sgn(t) e^{i k t} over (-pi, pi): 0 for even k, 4i/k for odd k."""
    if k % 2 == 0:
        return 0j
    return 4j / k


def panel_nodes(breakpoints, panels: int, rule: str = "gauss4"):
    """Quadrature nodes and weights for (-pi, pi) split at the breakpoints.

    Each smooth subinterval is divided into ``panels`` equal panels and the
    per-panel rule is applied; nodes are returned in ascending order so the
    weighted reduction has a fixed, deterministic order.
    """
    if panels < 1:
        raise ValueError("panels must be >= 1")
    if rule not in QUADRATURE_RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {QUADRATURE_RULES}")
    breaks = [float(b) for b in breakpoints]
    edges = [-np.pi, *breaks, np.pi]
    for a, b in zip(edges, edges[1:]):
        if not a < b:
            raise ValueError("breakpoints must be strictly increasing inside (-pi, pi)")
    ts, ws = [], []
    for a, b in zip(edges, edges[1:]):
        width = (b - a) / panels
        starts = a + width * np.arange(panels)
        if rule == "midpoint":
            ts.append(starts + 0.5 * width)
            ws.append(np.full(panels, width))
        else:
            offs = 0.5 * width * (_GAUSS4_NODES + 1.0)
            ts.append((starts[:, None] + offs[None, :]).reshape(-1))
            ws.append(np.tile(0.5 * width * _GAUSS4_WEIGHTS, panels))
    return np.concatenate(ts), np.concatenate(ws)


def piecewise_quadrature(f, breakpoints, panels: int, rule: str = "gauss4") -> complex:
    """Integrate ``f`` over (-pi, pi), splitting at the given breakpoints.

    ``f`` must accept an array of points and return the integrand values.
    The composite midpoint rule converges at second order on each smooth
    piece; ``gauss4`` is the default for the tight coefficient checks.
    """
    ts, ws = panel_nodes(breakpoints, panels, rule)
    vals = np.asarray(f(ts))
    if vals.shape != ts.shape:
        raise ValueError("integrand must return one value per node")
    return complex(np.dot(ws, vals))
