"""Hot numeric kernels: numba-jitted loops with a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``TRITRUNC_NO_NUMBA`` is unset/falsy; set it to ``1`` to force the
numpy path.  Both paths compute the same sums; last-bit round-off may differ
between them because the summation orders differ.  Within one backend the
reduction order is fixed (serial loops / numpy pairwise dot), so repeated
runs on the same platform reproduce results bit for bit.

Kernels kept here are the O(points x terms) inner loops:

* ``trig_series_at``   -- sum_m c_m e^{i m t} on a batch of points t
* ``trig_moments``     -- sum_j g_j e^{-i n t_j} for a batch of integers n
* ``hilbert_window``   -- odd-offset convolution (1/pi) sum x(m)/(m-n)
* ``min_ineq_margins`` -- exhaustive sweep of two elementary inequalities
"""

import os

import numpy as np

ENV_FLAG = "TRITRUNC_NO_NUMBA"


def _env_disables_numba() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

# workspace cap for chunked outer products, in scalar entries
_CHUNK_ENTRIES = 4_000_000


def trig_series_at_numpy(freqs, coeffs, ts):
    n_terms = max(1, freqs.shape[0])
    out = np.empty(ts.shape[0], dtype=np.complex128)
    step = max(1, _CHUNK_ENTRIES // n_terms)
    for a in range(0, ts.shape[0], step):
        b = min(a + step, ts.shape[0])
        out[a:b] = np.exp(1j * np.outer(ts[a:b], freqs)) @ coeffs
    return out


def trig_moments_numpy(ts, gvals, ns):
    out = np.empty(ns.shape[0], dtype=np.complex128)
    for k in range(ns.shape[0]):
        out[k] = np.dot(np.exp((-1j * float(ns[k])) * ts), gvals)
    return out


def hilbert_window_numpy(freqs, coeffs, lo, hi):
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    out = np.empty(ns.shape[0], dtype=np.complex128)
    if freqs.shape[0] == 0:
        out[:] = 0.0
        return out
    step = max(1, _CHUNK_ENTRIES // freqs.shape[0])
    for a in range(0, ns.shape[0], step):
        b = min(a + step, ns.shape[0])
        off = freqs[None, :] - ns[a:b, None]
        odd = (off % 2) != 0
        terms = np.where(odd, coeffs[None, :] / np.where(odd, off, 1), 0.0)
        out[a:b] = terms.sum(axis=1)
    out /= np.pi
    return out


def min_ineq_margins_numpy(max_mn):
    k = np.arange(max_mn + 1, dtype=np.float64)
    worst1 = np.inf
    worst2 = np.inf
    arg1 = (0, 0)
    arg2 = (0, 0)
    step = max(1, _CHUNK_ENTRIES // (max_mn + 1))
    for a in range(0, max_mn + 1, step):
        b = min(a + step, max_mn + 1)
        mm = k[a:b, None]
        nn = k[None, :]
        lhs = 1.0 / (2.0 * mm + 2.0 * nn + 1.0)
        mid = 1.0 / (2.0 * (mm + nn + 2.0))
        rhs = 0.25 * np.minimum(1.0 / (nn + 1.0), 1.0 / (mm + 1.0))
        d1 = lhs - mid
        d2 = mid - rhs
        i1 = np.unravel_index(np.argmin(d1), d1.shape)
        i2 = np.unravel_index(np.argmin(d2), d2.shape)
        if d1[i1] < worst1:
            worst1 = float(d1[i1])
            arg1 = (a + int(i1[0]), int(i1[1]))
        if d2[i2] < worst2:
            worst2 = float(d2[i2])
            arg2 = (a + int(i2[0]), int(i2[1]))
    return worst1, arg1[0], arg1[1], worst2, arg2[0], arg2[1]


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------


def _build_numba_kernels():
    from numba import njit

    @njit(cache=True)
    def trig_series_at_jit(freqs, coeffs, ts):
        out = np.empty(ts.shape[0], dtype=np.complex128)
        for i in range(ts.shape[0]):
            t = ts[i]
            acc = 0.0 + 0.0j
            for k in range(freqs.shape[0]):
                a = freqs[k] * t
                acc += coeffs[k] * complex(np.cos(a), np.sin(a))
            out[i] = acc
        return out

    @njit(cache=True)
    def trig_moments_jit(ts, gvals, ns):
        out = np.empty(ns.shape[0], dtype=np.complex128)
        for k in range(ns.shape[0]):
            n = float(ns[k])
            acc = 0.0 + 0.0j
            for j in range(ts.shape[0]):
                a = -n * ts[j]
                acc += gvals[j] * complex(np.cos(a), np.sin(a))
            out[k] = acc
        return out

    @njit(cache=True)
    def hilbert_window_jit(freqs, coeffs, lo, hi):
        count = hi - lo + 1
        out = np.empty(count, dtype=np.complex128)
        for i in range(count):
            n = lo + i
            acc = 0.0 + 0.0j
            for k in range(freqs.shape[0]):
                off = freqs[k] - n
                if off % 2 != 0:
                    acc += coeffs[k] / off
            out[i] = acc / np.pi
        return out

    @njit(cache=True)
    def min_ineq_margins_jit(max_mn):
        worst1 = np.inf
        worst2 = np.inf
        m1 = 0
        n1 = 0
        m2 = 0
        n2 = 0
        for m in range(max_mn + 1):
            for n in range(max_mn + 1):
                lhs = 1.0 / (2.0 * m + 2.0 * n + 1.0)
                mid = 1.0 / (2.0 * (m + n + 2.0))
                a = 1.0 / (n + 1.0)
                b = 1.0 / (m + 1.0)
                rhs = 0.25 * min(a, b)
                d1 = lhs - mid
                d2 = mid - rhs
                if d1 < worst1:
                    worst1 = d1
                    m1 = m
                    n1 = n
                if d2 < worst2:
                    worst2 = d2
                    m2 = m
                    n2 = n
        return worst1, m1, n1, worst2, m2, n2

    return trig_series_at_jit, trig_moments_jit, hilbert_window_jit, min_ineq_margins_jit


NUMBA_ENABLED = False
_trig_series_impl = trig_series_at_numpy
_trig_moments_impl = trig_moments_numpy
_hilbert_window_impl = hilbert_window_numpy
_min_ineq_impl = min_ineq_margins_numpy

if not _env_disables_numba():
    try:
        (
            _trig_series_impl,
            _trig_moments_impl,
            _hilbert_window_impl,
            _min_ineq_impl,
        ) = _build_numba_kernels()
        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - depends on environment
        pass


# ---------------------------------------------------------------------------
# public wrappers (coerce dtypes, dispatch to the selected backend)
# ---------------------------------------------------------------------------


def trig_series_at(freqs, coeffs, ts):
    """Evaluate sum_m coeffs[m] * e^{i freqs[m] t} at every t."""
    freqs = np.ascontiguousarray(freqs, dtype=np.int64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    return _trig_series_impl(freqs, coeffs, ts)


def trig_moments(ts, gvals, ns):
    """Evaluate sum_j gvals[j] * e^{-i n ts[j]} for every integer n in ns."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    gvals = np.ascontiguousarray(gvals, dtype=np.complex128)
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    return _trig_moments_impl(ts, gvals, ns)


def hilbert_window(freqs, coeffs, lo, hi):
    """Odd-offset convolution (1/pi) sum_{m-n odd} coeffs[m]/(m-n), n in [lo, hi].

    Offsets with even parity are skipped, never evaluated, so structural
    zeros come out as exact floating-point zeros.
    """
    freqs = np.ascontiguousarray(freqs, dtype=np.int64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    return _hilbert_window_impl(freqs, coeffs, int(lo), int(hi))


def min_ineq_margins(max_mn):
    """Worst signed margins of the two elementary inequalities

        1/(2m+2n+1) >= 1/(2(m+n+2)) >= (1/4) min{1/(n+1), 1/(m+1)}

    over all 0 <= m, n <= max_mn.  Returns
    ``(worst1, m1, n1, worst2, m2, n2)`` with the argmin pair of each link.
    """
    return _min_ineq_impl(int(max_mn))
