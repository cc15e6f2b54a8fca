"""Finitely supported sequences over Z and their decreasing rearrangements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class LateralSequence:
    """A finitely supported doubly-infinite sequence.

    ``values[k]`` is the entry at index ``support_lo + k``; entries outside
    the stored window are zero.  Construction canonicalizes: zero margins are
    trimmed so a nonzero sequence neither starts nor ends with a zero entry,
    and the zero sequence is stored as a single zero at index 0.  The value
    array is frozen (read-only) after construction.
    """

    support_lo: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=np.complex128))
        if vals.ndim != 1:
            raise ValueError("values must be one-dimensional")
        lo = int(self.support_lo)
        nonzero = np.flatnonzero(vals != 0)
        if nonzero.size == 0:
            lo = 0
            vals = np.zeros(1, dtype=np.complex128)
        else:
            lo = lo + int(nonzero[0])
            vals = vals[nonzero[0] : nonzero[-1] + 1].copy()
        vals.setflags(write=False)
        object.__setattr__(self, "support_lo", lo)
        object.__setattr__(self, "values", vals)

    @classmethod
    def delta(cls, k: int, value=1.0) -> "LateralSequence":
        """The sequence with a single entry ``value`` at index ``k``."""
        return cls(k, np.array([value], dtype=np.complex128))

    @classmethod
    def zero(cls) -> "LateralSequence":
        return cls(0, np.zeros(1, dtype=np.complex128))

    @property
    def support_hi(self) -> int:
        return self.support_lo + len(self.values) - 1

    @property
    def is_zero(self) -> bool:
        return bool(np.all(self.values == 0))

    @property
    def frequencies(self) -> np.ndarray:
        """Indices of the stored window, ``support_lo .. support_hi``."""
        return np.arange(self.support_lo, self.support_hi + 1, dtype=np.int64)

    @property
    def abs_sum(self) -> float:
        return float(np.sum(np.abs(self.values)))

    def value_at(self, n: int) -> complex:
        if self.support_lo <= n <= self.support_hi:
            return complex(self.values[n - self.support_lo])
        return 0j

    def window_values(self, lo: int, hi: int) -> np.ndarray:
        """Dense values on ``lo..hi`` inclusive (zeros outside the support)."""
        if lo > hi:
            raise ValueError("window requires lo <= hi")
        out = np.zeros(hi - lo + 1, dtype=np.complex128)
        a = max(lo, self.support_lo)
        b = min(hi, self.support_hi)
        if a <= b:
            out[a - lo : b - lo + 1] = self.values[a - self.support_lo : b - self.support_lo + 1]
        return out

    def __add__(self, other: "LateralSequence") -> "LateralSequence":
        lo = min(self.support_lo, other.support_lo)
        hi = max(self.support_hi, other.support_hi)
        return LateralSequence(lo, self.window_values(lo, hi) + other.window_values(lo, hi))

    def __mul__(self, scalar) -> "LateralSequence":
        return LateralSequence(self.support_lo, self.values * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"LateralSequence(lo={self.support_lo}, values={np.array2string(self.values, max_line_width=70)})"


@dataclass(frozen=True, eq=False)
class DecreasingWeights:
    """A finite nonnegative nonincreasing weight sequence.

    Trailing zeros are trimmed on construction so spectra of different
    lengths compare cleanly; the empty sequence is valid and represents the
    zero weight family.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64).reshape(-1)
        if w.size and (np.any(w < 0) or np.any(np.diff(w) > 0)):
            raise ValueError("weights must be nonnegative and nonincreasing")
        nz = np.flatnonzero(w)
        w = w[: nz[-1] + 1].copy() if nz.size else np.empty(0, dtype=np.float64)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, k):
        return self.weights[k]

    def padded(self, length: int) -> np.ndarray:
        """Dense weights of the given length, zero-padded past the support."""
        out = np.zeros(length, dtype=np.float64)
        m = min(length, len(self.weights))
        out[:m] = self.weights[:m]
        return out

    def __repr__(self):
        return f"DecreasingWeights({np.array2string(self.weights, max_line_width=70)})"


def decreasing_rearrangement(x: LateralSequence) -> DecreasingWeights:
    """Sorted absolute values of the entries of ``x``, largest first.

    Trailing zeros are trimmed.  Uses a stable sort so tied magnitudes keep
    a deterministic order (the resulting multiset is order-independent).
    """
    mags = np.abs(x.values)
    mags = np.sort(mags, kind="stable")[::-1]
    return DecreasingWeights(mags)


def construct_odd_support(mu: DecreasingWeights) -> LateralSequence:
    """The canonical odd-support sequence realizing the weights ``mu``.

    Places ``mu[k]`` at index ``2k + 1``, so the result vanishes on the even
    integers and on all indices <= 0, and its decreasing rearrangement is
    ``mu`` again (exactly, entry for entry).
    """
    if len(mu) == 0:
        return LateralSequence.zero()
    vals = np.zeros(2 * len(mu) - 1, dtype=np.complex128)
    vals[::2] = mu.weights
    return LateralSequence(1, vals)


def lambda_log_diagnostic(x: LateralSequence) -> float:
    """Diagnostic surrogate sum_{n} mu(n, x) / (n + 1).

    A finite stand-in for the logarithmic Lorentz-type norm of ``x``;
    reported for context only and never used in pass/fail decisions.
    """
    mu = decreasing_rearrangement(x).weights
    if mu.size == 0:
        return 0.0
    return float(np.sum(mu / (np.arange(mu.size) + 1.0)))
