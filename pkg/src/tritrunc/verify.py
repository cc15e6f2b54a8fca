"""One machine-checkable verdict per claim, with margins and convergence data.

Every check returns a :class:`CheckResult`.  Margins are signed with
"positive = slack": a check passes exactly when ``worst_margin >=
-tolerance``.  Checks come in two numerical regimes:

* discretization-free (``check_fact1`` up to quadrature, ``check_pointwise_ineq``,
  ``brute_force_min_ineq``): both sides are finite sums, tolerances are tight
  absolute budgets, and any violation is a code bug rather than noise;
* grid-based (``check_lemma2``, ``check_lemma3``, ``check_theorem``,
  ``check_chain``): results carry the grid sizes used, tolerances default to
  a relative 5e-2 at 512 points (1e-2 slack at >= 1024 for the spectral
  lower bound), and :func:`convergence_study` supplies the monotone-error
  evidence that the discretization converges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from tritrunc.discretize import (
    hermitian_eigenvalues,
    make_grid,
    multiplier_operator,
    project,
    singular_values,
    triangular_truncate,
)
from tritrunc.fourier import panel_nodes, trig_eval
from tritrunc.sequences import (
    DecreasingWeights,
    LateralSequence,
    construct_odd_support,
    decreasing_rearrangement,
)
from tritrunc.transforms import calderon, hilbert_discrete
from tritrunc import _kernels

EIGHT_PI = 8.0 * np.pi

# kept in reports so JSON stays readable; worst rows come first
DETAIL_LIMIT = 16


def default_grid_tolerance(grid_n: int) -> float:
    """Relative tolerance for grid-based checks, calibrated at 512 points.

    Grid discrepancies shrink empirically like 1/N (measured via
    :func:`convergence_study`), so the 5e-2 budget at N = 512 is scaled
    accordingly and clamped to [1e-2, 2e-1].
    """
    return float(min(2e-1, max(1e-2, 5e-2 * 512.0 / grid_n)))

_TINY = np.finfo(np.float64).tiny


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verified claim.

    ``details`` holds (index, lhs, rhs) triples for the worst-margin rows.
    The invariant ``passed == (worst_margin >= -tolerance)`` always holds;
    checks that combine sub-conditions with different native budgets rescale
    their margins into units of the reported tolerance first (documented on
    the check).
    """

    claim_id: str
    passed: bool
    worst_margin: float
    tolerance: float
    details: tuple
    grid_sizes: tuple


def _result(claim_id, margins, tolerance, details, grid_sizes=()) -> CheckResult:
    margins = np.asarray(margins, dtype=np.float64)
    worst = float(margins.min()) if margins.size else 0.0
    return CheckResult(
        claim_id=claim_id,
        passed=bool(worst >= -tolerance),
        worst_margin=worst,
        tolerance=float(tolerance),
        details=tuple(details),
        grid_sizes=tuple(int(g) for g in grid_sizes),
    )


def _worst_rows(indices, lhs, rhs, margins, limit=DETAIL_LIMIT):
    order = np.argsort(np.asarray(margins, dtype=np.float64), kind="stable")[:limit]
    return [(int(indices[i]), _py(lhs[i]), _py(rhs[i])) for i in order]


def _py(v):
    if isinstance(v, (np.complexfloating, complex)):
        c = complex(v)
        return c if c.imag != 0 else c.real
    return float(v)


def match_multisets(expected, computed):
    """Match expected values to computed ones minimizing total distance.

    Returns the computed values reordered to align with ``expected`` plus the
    per-pair distances (rectangular assignment; ``computed`` may be longer).
    """
    expected = np.asarray(expected, dtype=np.complex128)
    computed = np.asarray(computed, dtype=np.complex128)
    if expected.size == 0:
        return computed[:0], np.empty(0)
    cost = np.abs(expected[:, None] - computed[None, :])
    rows, cols = linear_sum_assignment(cost)
    matched = np.empty(expected.size, dtype=np.complex128)
    matched[rows] = computed[cols]
    return matched, np.abs(matched - expected)


def weight_family(name: str, length: int) -> DecreasingWeights:
    """Named weight families spanning fast to slow decay.

    ``singleton`` is (1) regardless of length; ``geometric`` is 2^-k;
    ``harmonic`` is 1/(k+1); ``logarithmic`` is 1/((k+1)(1+ln(k+1))).
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    k = np.arange(length, dtype=np.float64)
    if name == "singleton":
        w = np.ones(min(length, 1))
    elif name == "geometric":
        w = 0.5**k
    elif name == "harmonic":
        w = 1.0 / (k + 1.0)
    elif name == "logarithmic":
        w = 1.0 / ((k + 1.0) * (1.0 + np.log(k + 1.0)))
    else:
        raise ValueError(f"unknown family {name!r}")
    return DecreasingWeights(w)


DEFAULT_FAMILIES = (
    ("singleton", 1),
    ("geometric", 16),
    ("harmonic", 16),
    ("logarithmic", 16),
)


# ---------------------------------------------------------------------------
# coefficient identity: quadrature vs odd-offset convolution
# ---------------------------------------------------------------------------


def check_fact1(
    x: LateralSequence,
    max_n: int = 32,
    panels: int = 65536,
    rule: str = "gauss4",
    tolerance: float = 1e-8,
) -> CheckResult:
    """Fourier-coefficient identity for the sign multiplier.

    For each |n| <= max_n compares the quadrature value
    (1/2pi) integral of sgn(t) xhat(t) e^{-int} dt (split at t = 0 where the
    integrand jumps) against 2i times the odd-offset convolution of ``x``.
    Both sides are finite-support evaluations; the only error is quadrature.
    """
    ts, ws = panel_nodes((0.0,), panels, rule)
    g = ws * np.sign(ts) * trig_eval(x, ts)
    ns = np.arange(-max_n, max_n + 1, dtype=np.int64)
    lhs = _kernels.trig_moments(ts, g, ns) / (2.0 * np.pi)
    rhs = 2j * hilbert_discrete(x, -max_n, max_n).window_values(-max_n, max_n)
    margins = -np.abs(lhs - rhs)
    return _result("fact1", margins, tolerance, _worst_rows(ns, lhs, rhs, margins), (panels,))


# ---------------------------------------------------------------------------
# operator decomposition under triangular truncation
# ---------------------------------------------------------------------------


def _windowed_hilbert_multiplier(x, grid, window):
    hseq = hilbert_discrete(x, -window, window)
    return multiplier_operator(hseq, grid, warn=False), hseq


def _window_guard(x, n, window, tolerance):
    # alias pairs of the neglected symbol tail cancel to O(n / window^2);
    # the constant 4/pi^2 is a crude upper envelope, good enough to catch
    # configurations where the window cannot meet the tolerance budget
    estimate = 4.0 * x.abs_sum * n / (np.pi**2 * window**2)
    if estimate > tolerance / 10.0:
        raise ValueError(
            f"Hilbert symbol window {window} too small for grid {n}: "
            f"tail estimate {estimate:.2e} exceeds a tenth of tolerance {tolerance:g}"
        )


def check_lemma2(
    x: LateralSequence,
    grids=(128, 256, 512),
    window_factor: float = 8.0,
    tolerance: float | None = None,
) -> CheckResult:
    """Block decomposition of the truncated multiplier.

    On each grid assembles the truncated operator T(a) for a with symbol
    ``x`` and the four-block right-hand side: 2i times the windowed
    Hilbert-symbol multiplier compressed to each half-interval, plus the
    signed cross-blocks of a itself.  Reports the relative spectral-norm
    discrepancy per grid; passes when the finest-grid discrepancy is within
    tolerance and the sequence is nonincreasing in the grid size.
    """
    grids = tuple(int(g) for g in grids)
    if any(b <= a for a, b in zip(grids, grids[1:])):
        raise ValueError("grids must be strictly increasing")
    if tolerance is None:
        tolerance = default_grid_tolerance(grids[-1])
    discrepancies = []
    for n in grids:
        grid = make_grid(n)
        window = int(round(window_factor * n))
        _window_guard(x, n, window, tolerance)
        mx = multiplier_operator(x, grid)
        lhs = triangular_truncate(mx).matrix
        mh, _ = _windowed_hilbert_multiplier(x, grid, window)
        rhs = (
            2j * project(mh, "both", "positive").matrix
            + 2j * project(mh, "both", "negative").matrix
            + project(project(mx, "left", "positive"), "right", "negative").matrix
            - project(project(mx, "left", "negative"), "right", "positive").matrix
        )
        denom = np.linalg.norm(lhs, 2)
        discrepancies.append(float(np.linalg.norm(lhs - rhs, 2) / max(denom, _TINY)))
    margins = [-discrepancies[-1]]
    margins += [discrepancies[i] - discrepancies[i + 1] - tolerance for i in range(len(grids) - 1)]
    details = [(n, d, tolerance) for n, d in zip(grids, discrepancies)]
    return _result("lemma2", margins, tolerance, details, grids)


# ---------------------------------------------------------------------------
# compression spectrum identity for odd-support symbols
# ---------------------------------------------------------------------------


def _require_odd_support(x: LateralSequence):
    evens = x.frequencies % 2 == 0
    if np.any(x.values[evens] != 0):
        raise ValueError("input must vanish on the even integers")


def check_lemma3(
    x: LateralSequence,
    grid_n: int = 512,
    top_k: int = 16,
    window_factor: float = 8.0,
    tolerance: float | None = None,
) -> CheckResult:
    """Spectrum of the half-interval compression of the Hilbert multiplier.

    Requires ``x`` to vanish on the even integers; then the Hilbert-symbol
    sequence lives on the evens, its trigonometric symbol is pi-periodic,
    and the compression to (0, pi) is diagonal in the basis e^{2int}.  Two
    sub-checks, both relative to the expected magnitude:

    (i)  leading eigenvalues of the compression match one half of the
         Hilbert sequence at even indices (assignment-matched, so near-tied
         pairs cannot fail on ordering);
    (ii) leading singular values match one half of the decreasing
         rearrangement of the Hilbert sequence, entry for entry.
    """
    _require_odd_support(x)
    grid_n = int(grid_n)
    if tolerance is None:
        tolerance = default_grid_tolerance(grid_n)
    if top_k > grid_n // 4:
        raise ValueError(f"top_k={top_k} exceeds the resolvable eigenvalue count {grid_n // 4} at grid {grid_n}")
    grid = make_grid(grid_n)
    window = int(round(window_factor * grid_n))
    _window_guard(x, grid_n, window, tolerance)
    comp_op, hseq = _windowed_hilbert_multiplier(x, grid, window)
    comp = project(comp_op, "both", "positive")

    quarter = grid_n // 4
    expected_all = 0.5 * hseq.window_values(-2 * quarter, 2 * quarter)[::2]
    order = np.lexsort((-expected_all.imag, -expected_all.real, -np.abs(expected_all)))
    expected = expected_all[order][:top_k]

    if np.all(hseq.values.imag == 0):
        computed = hermitian_eigenvalues(comp, min(2 * top_k, grid_n)).astype(np.complex128)
    else:
        w = np.linalg.eigvals(comp.matrix)
        computed = w[np.argsort(-np.abs(w), kind="stable")][: min(2 * top_k, grid_n)]
    matched, dist = match_multisets(expected, computed)
    scale = np.maximum(np.abs(expected), _TINY)
    eig_margins = -dist / scale
    eig_rows = _worst_rows(np.arange(len(expected)), expected, matched, eig_margins, DETAIL_LIMIT // 2)

    sv = singular_values(comp, top_k).values
    target = 0.5 * decreasing_rearrangement(hseq).padded(top_k)
    sv_margins = -np.abs(sv - target) / np.maximum(target, _TINY)
    sv_rows = _worst_rows(np.arange(top_k), sv, target, sv_margins, DETAIL_LIMIT // 2)

    margins = np.concatenate([eig_margins, sv_margins])
    return _result("lemma3", margins, tolerance, eig_rows + sv_rows, (grid_n,))


# ---------------------------------------------------------------------------
# spectral lower bound and its two-link chain
# ---------------------------------------------------------------------------


def _theorem_slack(grid_n: int) -> float:
    # the chain behind the bound loses a factor 2 and a factor 4, so true
    # margins are large; slack only absorbs discretization error
    return 1e-2 if grid_n >= 1024 else 5e-2


def check_theorem(
    mu: DecreasingWeights,
    grid_n: int = 512,
    top_k: int = 16,
    slack: float | None = None,
) -> CheckResult:
    """Lower bound on the truncated-operator spectrum by the Calderon weights.

    Builds the canonical odd-support symbol for ``mu``, truncates its
    multiplier, and requires the k-th singular value to be at least
    (1 - slack)/(8 pi) times the k-th Calderon value, for every k < top_k.
    Margins are reported against the slack-deflated bound; ``details`` rows
    carry the raw (sigma_k, bound_k) pairs.
    """
    grid_n = int(grid_n)
    if slack is None:
        slack = _theorem_slack(grid_n)
    if len(mu) == 0:
        return _result("theorem", [], 0.0, [], (grid_n,))
    x = construct_odd_support(mu)
    op = triangular_truncate(multiplier_operator(x, make_grid(grid_n)))
    sigma = singular_values(op, top_k).values
    bound = calderon(mu, top_k).padded(top_k) / EIGHT_PI
    margins = sigma - (1.0 - slack) * bound
    ks = np.arange(top_k)
    return _result("theorem", margins, 0.0, _worst_rows(ks, sigma, bound, margins), (grid_n,))


def check_chain(
    mu: DecreasingWeights,
    grid_n: int = 512,
    top_k: int = 16,
    window_factor: float = 8.0,
    tol_identity: float | None = None,
    tol_monotone: float = 1e-10,
) -> CheckResult:
    """Two links between the truncated operator and its compression.

    Link 1 (exact at matrix level): each singular value of T(a) dominates
    the corresponding singular value of the (0, pi) compression p T(a) p,
    within an absolute ``tol_monotone`` that only absorbs LAPACK round-off.
    Link 2 (grid-based): the compression spectrum equals twice the spectrum
    of the compressed Hilbert multiplier, within relative ``tol_identity``.

    The two links have different native budgets; link-1 margins are rescaled
    by ``tol_identity / tol_monotone`` so that a single reported tolerance
    (``tol_identity``) governs the result, preserving pass/fail semantics of
    each link.  ``details`` rows carry raw values.
    """
    grid_n = int(grid_n)
    if tol_identity is None:
        tol_identity = default_grid_tolerance(grid_n)
    if len(mu) == 0:
        return _result("chain", [], tol_identity, [], (grid_n,))
    grid = make_grid(grid_n)
    window = int(round(window_factor * grid_n))
    x = construct_odd_support(mu)
    _window_guard(x, grid_n, window, tol_identity)
    trunc = triangular_truncate(multiplier_operator(x, grid))
    sigma_full = singular_values(trunc, top_k).values
    sigma_comp = singular_values(project(trunc, "both", "positive"), top_k).values
    comp_h, _ = _windowed_hilbert_multiplier(x, grid, window)
    sigma_h = singular_values(project(comp_h, "both", "positive"), top_k).values

    ks = np.arange(top_k)
    mono_raw = sigma_full - sigma_comp
    mono_margins = mono_raw * (tol_identity / tol_monotone)
    mono_rows = _worst_rows(ks, sigma_full, sigma_comp, mono_raw, DETAIL_LIMIT // 2)

    doubled = 2.0 * sigma_h
    ident_margins = -np.abs(sigma_comp - doubled) / np.maximum(doubled, _TINY)
    ident_rows = _worst_rows(ks, sigma_comp, doubled, ident_margins, DETAIL_LIMIT // 2)

    margins = np.concatenate([mono_margins, ident_margins])
    return _result("chain", margins, tol_identity, mono_rows + ident_rows, (grid_n,))


# ---------------------------------------------------------------------------
# discretization-free inequalities
# ---------------------------------------------------------------------------


def check_pointwise_ineq(
    mu: DecreasingWeights,
    max_n: int = 10_000,
    tolerance: float = 1e-12,
) -> CheckResult:
    """Pointwise domination of the Calderon weights by the Hilbert values.

    For the canonical odd-support symbol of ``mu``, the Hilbert value at
    -2n must dominate 1/(8 pi) times the n-th Calderon value for every
    0 <= n <= max_n.  Both sides are finite sums; failures beyond the float
    budget indicate a bug, not discretization error.
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    x = construct_odd_support(mu)
    window = hilbert_discrete(x, -2 * max_n, 0).window_values(-2 * max_n, 0)
    lhs = window[::-2].real
    rhs = calderon(mu, max_n + 1).padded(max_n + 1) / EIGHT_PI if len(mu) else np.zeros(max_n + 1)
    margins = lhs - rhs
    ns = np.arange(max_n + 1)
    return _result("pointwise", margins, tolerance, _worst_rows(ns, lhs, rhs, margins))


def brute_force_min_ineq(max_mn: int = 2000, tolerance: float = 1e-12) -> CheckResult:
    """Exhaustive sweep of the two elementary min-inequalities.

    Checks 1/(2m+2n+1) >= 1/(2(m+n+2)) >= (1/4) min{1/(n+1), 1/(m+1)} for
    all 0 <= m, n <= max_mn.  Details carry the argmin pair of each link,
    with the index flattened as m * (max_mn + 1) + n.
    """
    if max_mn < 0:
        raise ValueError("max_mn must be >= 0")
    w1, m1, n1, w2, m2, n2 = _kernels.min_ineq_margins(max_mn)
    span = max_mn + 1
    lhs1 = 1.0 / (2.0 * m1 + 2.0 * n1 + 1.0)
    mid1 = 1.0 / (2.0 * (m1 + n1 + 2.0))
    mid2 = 1.0 / (2.0 * (m2 + n2 + 2.0))
    rhs2 = 0.25 * min(1.0 / (n2 + 1.0), 1.0 / (m2 + 1.0))
    details = [(m1 * span + n1, lhs1, mid1), (m2 * span + n2, mid2, rhs2)]
    return _result("minineq", [w1, w2], tolerance, details, (max_mn,))


# ---------------------------------------------------------------------------
# grid-refinement studies
# ---------------------------------------------------------------------------

_STUDY_RUNNERS = {
    "lemma2": lambda payload, n, kw: check_lemma2(payload, grids=(n,), **kw),
    "lemma3": lambda payload, n, kw: check_lemma3(payload, grid_n=n, **kw),
    "theorem": lambda payload, n, kw: check_theorem(payload, grid_n=n, **kw),
    "chain": lambda payload, n, kw: check_chain(payload, grid_n=n, **kw),
}


def convergence_study(claim_id: str, payload, grids, floor: float = 1e-10, **kwargs) -> CheckResult:
    """Run a grid-based check over increasing grids; errors must not grow.

    The error of a run is ``max(0, -worst_margin)``.  A step may sit on the
    round-off floor (error <= ``floor``) without penalty, and one near-
    plateau (growth below 5 percent) is tolerated; any other growth fails.
    A single grid degenerates to a pass with the check's own outcome noted
    in the details.
    """
    if claim_id not in _STUDY_RUNNERS:
        raise ValueError(f"no grid-based runner for claim {claim_id!r}")
    grids = tuple(int(g) for g in grids)
    if any(b <= a for a, b in zip(grids, grids[1:])):
        raise ValueError("grids must be strictly increasing")
    runner = _STUDY_RUNNERS[claim_id]
    errors = []
    for n in grids:
        res = runner(payload, n, kwargs)
        errors.append(max(0.0, -res.worst_margin))
    margins = []
    grace_left = 1
    for prev, cur in zip(errors, errors[1:]):
        m = prev - cur
        if m < 0 and (cur <= floor or (grace_left and cur <= prev * 1.05)):
            if cur > floor:
                grace_left -= 1
            m = 0.0
        margins.append(m)
    details = [(n, err, floor) for n, err in zip(grids, errors)]
    return _result(f"converge[{claim_id}]", margins, 0.0, details, grids)


def merge_results(claim_id: str, results) -> CheckResult:
    """Combine per-input results for one claim into a single verdict.

    All inputs must share one tolerance; the worst margin and detail rows
    are pooled, and grid sizes are unioned.
    """
    results = list(results)
    if not results:
        raise ValueError("nothing to merge")
    tol = results[0].tolerance
    if any(not math.isclose(r.tolerance, tol, rel_tol=0, abs_tol=0) for r in results):
        raise ValueError("cannot merge results with different tolerances")
    worst = min(r.worst_margin for r in results)
    details = [row for r in results for row in r.details]
    details.sort(key=lambda row: abs(row[1] - row[2]) if isinstance(row[1], float) and isinstance(row[2], float) else 0.0, reverse=True)
    grids = sorted({g for r in results for g in r.grid_sizes})
    return CheckResult(
        claim_id=claim_id,
        passed=all(r.passed for r in results),
        worst_margin=worst,
        tolerance=tol,
        details=tuple(details[:DETAIL_LIMIT]),
        grid_sizes=tuple(grids),
    )
