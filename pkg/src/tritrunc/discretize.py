"""Nystrom discretization of convolution kernels on (-pi, pi).

A multiplier with finitely supported symbol x acts as the integral operator
(1/2pi) * integral of xhat(t - s) f(s) ds.  Sampling the kernel on a midpoint
grid and weighting by the grid step gives a matrix whose singular values
approximate the operator's; for symbols supported inside the Nyquist window
the eigenvalues are reproduced exactly (equispaced quadrature integrates
e^{ikt} exactly for 0 < |k| < n_points).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from tritrunc import _kernels
from tritrunc.sequences import LateralSequence

SIDES = ("left", "right", "both")
HALVES = ("positive", "negative")


class AliasingRiskWarning(UserWarning):
    """Symbol support reaches the Nyquist window; frequencies will fold."""


@dataclass(frozen=True, eq=False)
class GridSpec:
    """Midpoint grid on (-pi, pi): node_i = -pi + (i + 1/2) h, h = 2pi/n.

    With even ``n_points`` no node hits 0 or +-pi, so the sign kernel and the
    half-interval projections are never evaluated at a discontinuity.
    """

    n_points: int

    @property
    def h(self) -> float:
        return 2.0 * np.pi / self.n_points

    @cached_property
    def nodes(self) -> np.ndarray:
        nodes = -np.pi + (np.arange(self.n_points) + 0.5) * self.h
        nodes.setflags(write=False)
        return nodes

    @cached_property
    def positive_mask(self) -> np.ndarray:
        mask = self.nodes > 0
        mask.setflags(write=False)
        return mask


@dataclass(frozen=True, eq=False)
class KernelOperator:
    """A kernel matrix tied to its grid; entry (i, j) ~ K(node_i, node_j) h."""

    grid: GridSpec
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        n = self.grid.n_points
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match grid size {n}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_points(self) -> int:
        return self.grid.n_points


@dataclass(frozen=True, eq=False)
class SingularSpectrum:
    """Nonincreasing nonnegative singular values."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if v.size and (np.any(v < 0) or np.any(np.diff(v) > 0)):
            raise ValueError("singular values must be nonnegative and nonincreasing")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def to_csv(self, path) -> None:
        """Write ``k,sigma`` rows with full-precision decimals."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("k,sigma\n")
            for k, sigma in enumerate(self.values):
                fh.write(f"{k},{float(sigma)!r}\n")


def make_grid(n_points: int) -> GridSpec:
    """Midpoint grid with ``n_points`` nodes; requires even n_points >= 4."""
    n = int(n_points)
    if n % 2 != 0:
        raise ValueError(f"n_points must be even, got {n}")
    if n < 4:
        raise ValueError(f"n_points must be >= 4, got {n}")
    return GridSpec(n)


def multiplier_operator(x: LateralSequence, grid: GridSpec, *, warn: bool = True) -> KernelOperator:
    """Discretized multiplier with symbol ``x``: (h/2pi) xhat(node_i - node_j).

    The symbol is evaluated at the exact node differences (i - j) h.  When
    the support of ``x`` reaches the Nyquist window [-n/2, n/2] the sampled
    exponentials fold and eigenvalues alias; that is intentional for windowed
    approximations of discontinuous symbols, hence a warning, not an error.
    """
    n = grid.n_points
    if warn and not x.is_zero and (x.support_lo <= -n // 2 or x.support_hi >= n // 2):
        warnings.warn(
            f"symbol support [{x.support_lo}, {x.support_hi}] reaches the Nyquist "
            f"window of the {n}-point grid; eigenvalues will alias",
            AliasingRiskWarning,
            stacklevel=2,
        )
    diffs = np.arange(-(n - 1), n, dtype=np.float64) * grid.h
    vals = _kernels.trig_series_at(x.frequencies, x.values, diffs) * (grid.h / (2.0 * np.pi))
    idx = np.arange(n)[:, None] - np.arange(n)[None, :] + (n - 1)
    return KernelOperator(grid, vals[idx])


def triangular_truncate(op: KernelOperator) -> KernelOperator:
    """Multiply each entry by sgn(node_i - node_j); the diagonal is zeroed.

    sgn(0) = 0 is the faithful grid analogue of modifying the kernel on the
    measure-zero set {t = s}.
    """
    n = op.n_points
    mask = np.sign(np.arange(n)[:, None] - np.arange(n)[None, :]).astype(np.float64)
    return KernelOperator(op.grid, op.matrix * mask)


def project(op: KernelOperator, side: str, half: str) -> KernelOperator:
    """Compress by the indicator of a half-interval: (0, pi) or (-pi, 0).

    ``side='left'`` zeroes rows whose node lies outside the half,
    ``'right'`` zeroes columns, ``'both'`` zeroes both.
    """
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    if half not in HALVES:
        raise ValueError(f"half must be one of {HALVES}, got {half!r}")
    keep = op.grid.positive_mask if half == "positive" else ~op.grid.positive_mask
    m = op.matrix.copy()
    if side in ("left", "both"):
        m[~keep, :] = 0
    if side in ("right", "both"):
        m[:, ~keep] = 0
    return KernelOperator(op.grid, m)


def singular_values(op: KernelOperator, top_k: int | None = None) -> SingularSpectrum:
    """Leading singular values of the kernel matrix, largest first.

    ``top_k`` defaults to n_points // 8: for discontinuous kernels the
    discretized spectrum below that index is dominated by truncation noise.
    """
    n = op.n_points
    if top_k is None:
        top_k = max(1, n // 8)
    if not 1 <= top_k <= n:
        raise ValueError(f"top_k must be in [1, {n}], got {top_k}")
    s = np.linalg.svd(op.matrix, compute_uv=False)
    return SingularSpectrum(s[:top_k])


def hermitian_eigenvalues(op: KernelOperator, top_k: int | None = None, rtol: float = 1e-8) -> np.ndarray:
    """Eigenvalues of the Hermitian part, sorted by |.| descending.

    Rejects matrices whose anti-Hermitian part exceeds ``rtol`` relative to
    the matrix in Frobenius norm.  Ties in |.| are broken toward the larger
    signed value, so the order is deterministic.
    """
    n = op.n_points
    if top_k is None:
        top_k = max(1, n // 8)
    if not 1 <= top_k <= n:
        raise ValueError(f"top_k must be in [1, {n}], got {top_k}")
    a = op.matrix
    scale = np.linalg.norm(a)
    skew = np.linalg.norm(a - a.conj().T)
    if skew > rtol * max(scale, np.finfo(np.float64).tiny):
        raise ValueError(f"matrix is not Hermitian within rtol={rtol:g} (relative defect {skew / max(scale, 1e-300):.3e})")
    w = np.linalg.eigvalsh(0.5 * (a + a.conj().T))
    order = np.lexsort((-w, -np.abs(w)))
    return w[order][:top_k]
