"""Command-line front end: run checks, write JSON reports and CSV spectra.

Exit status: 0 when every executed check passed, 1 on check failure,
2 on usage errors (bad subcommand, malformed literal, violated precondition).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

import tritrunc
from tritrunc.discretize import make_grid, multiplier_operator, singular_values, triangular_truncate
from tritrunc.sequences import DecreasingWeights, LateralSequence, construct_odd_support
from tritrunc.transforms import calderon
from tritrunc.verify import (
    EIGHT_PI,
    brute_force_min_ineq,
    check_chain,
    check_fact1,
    check_lemma2,
    check_lemma3,
    check_pointwise_ineq,
    check_theorem,
    convergence_study,
    merge_results,
)

DEFAULT_FAMILY_LITERALS = "delta:0,geom:0.5:16,harmonic:16,log:16"


# ---------------------------------------------------------------------------
# sequence and weight literals
# ---------------------------------------------------------------------------


def _parse_length(text: str) -> int:
    length = int(text)
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    return length


def _read_value_file(path: str):
    lo = 0
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("lo="):
                    lo = int(body[3:])
                continue
            values.append(complex(line))
    return lo, values


def parse_x_literal(text: str) -> LateralSequence:
    """delta:K | geom:R:LEN | harmonic:LEN | log:LEN | file:PATH."""
    kind, _, rest = text.partition(":")
    if kind == "delta":
        return LateralSequence.delta(int(rest))
    if kind == "geom":
        ratio_text, _, len_text = rest.partition(":")
        ratio, length = float(ratio_text), _parse_length(len_text)
        return LateralSequence(0, ratio ** np.arange(length)) if length else LateralSequence.zero()
    if kind == "harmonic":
        length = _parse_length(rest)
        return LateralSequence(0, 1.0 / (np.arange(length) + 1.0)) if length else LateralSequence.zero()
    if kind == "log":
        length = _parse_length(rest)
        if not length:
            return LateralSequence.zero()
        k = np.arange(length) + 1.0
        return LateralSequence(0, 1.0 / (k * (1.0 + np.log(k))))
    if kind == "file":
        lo, values = _read_value_file(rest)
        return LateralSequence(lo, np.asarray(values)) if values else LateralSequence.zero()
    raise ValueError(f"unknown sequence literal {text!r}")


def parse_mu_literal(text: str) -> DecreasingWeights:
    """Weight literals; same grammar, values must be nonincreasing >= 0."""
    kind, _, rest = text.partition(":")
    if kind == "delta":
        k = int(rest)
        if k != 0:
            raise ValueError(f"delta:{k} is not a valid weight family (entries must be nonincreasing)")
        return DecreasingWeights(np.ones(1))
    if kind == "geom":
        ratio_text, _, len_text = rest.partition(":")
        ratio, length = float(ratio_text), _parse_length(len_text)
        if not 0.0 < ratio <= 1.0:
            raise ValueError(f"geometric ratio must lie in (0, 1], got {ratio}")
        return DecreasingWeights(ratio ** np.arange(length))
    if kind == "harmonic":
        length = _parse_length(rest)
        return DecreasingWeights(1.0 / (np.arange(length) + 1.0))
    if kind == "log":
        length = _parse_length(rest)
        k = np.arange(length) + 1.0
        return DecreasingWeights(1.0 / (k * (1.0 + np.log(k))))
    if kind == "file":
        _, values = _read_value_file(rest)
        return DecreasingWeights(np.asarray([v.real for v in values]))
    raise ValueError(f"unknown weight literal {text!r}")


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    tool_version: str
    timestamp: str
    config_echo: dict
    results: list

    @property
    def summary(self) -> dict:
        passed = sum(1 for r in self.results if r.passed)
        return {"passed": passed, "failed": len(self.results) - passed}

    def to_dict(self) -> dict:
        return {
            "version": self.tool_version,
            "timestamp": self.timestamp,
            "config": self.config_echo,
            "results": [_result_dict(r) for r in self.results],
            "summary": self.summary,
        }


def _json_value(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def _result_dict(r) -> dict:
    return {
        "claim_id": r.claim_id,
        "passed": r.passed,
        "worst_margin": r.worst_margin,
        "tolerance": r.tolerance,
        "grid_sizes": list(r.grid_sizes),
        "details": [
            {"index": idx, "lhs": _json_value(lhs), "rhs": _json_value(rhs)}
            for idx, lhs, rhs in r.details
        ],
    }


def _write_atomic(path: str, payload: str) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def write_report(path: str, report: VerificationReport) -> None:
    _write_atomic(path, json.dumps(report.to_dict(), indent=2) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _even(n: int) -> int:
    return n if n % 2 == 0 else n + 1


def _families(args):
    return [parse_mu_literal(tok) for tok in args.families.split(",") if tok]


def _cmd_fact1(args):
    x = parse_x_literal(args.x)
    return [check_fact1(x, max_n=args.max_n, panels=args.panels, rule=args.rule, tolerance=args.tol)]


def _cmd_lemma2(args):
    x = parse_x_literal(args.x)
    grids = tuple(int(g) for g in args.grids.split(","))
    return [check_lemma2(x, grids=grids, window_factor=args.window_factor, tolerance=args.tol)]


def _cmd_lemma3(args):
    x = parse_x_literal(args.x)
    return [
        check_lemma3(
            x, grid_n=args.grid, top_k=args.top_k, window_factor=args.window_factor, tolerance=args.tol
        )
    ]


def _cmd_theorem(args):
    mu = parse_mu_literal(args.mu)
    return [check_theorem(mu, grid_n=args.grid, top_k=args.top_k, slack=args.slack)]


def _cmd_chain(args):
    mu = parse_mu_literal(args.mu)
    return [
        check_chain(
            mu,
            grid_n=args.grid,
            top_k=args.top_k,
            window_factor=args.window_factor,
            tol_identity=args.tol,
        )
    ]


def _cmd_pointwise(args):
    mu = parse_mu_literal(args.mu)
    return [check_pointwise_ineq(mu, max_n=args.max_n)]


def _cmd_minineq(args):
    return [brute_force_min_ineq(args.max)]


def _cmd_converge(args):
    grids = tuple(int(g) for g in args.grids.split(","))
    if args.claim in ("lemma2", "lemma3"):
        payload = parse_x_literal(args.x)
    else:
        payload = parse_mu_literal(args.mu)
    return [convergence_study(args.claim, payload, grids)]


def _cmd_all(args):
    x = parse_x_literal(args.x)
    fams = _families(args)
    n = args.grid
    lemma_grids = tuple(sorted({_even(max(8, n // 4)), _even(max(8, n // 2)), _even(n)}))
    results = [
        check_fact1(x, max_n=args.max_n, panels=args.panels),
        check_lemma2(x, grids=lemma_grids),
        check_lemma3(x, grid_n=n, top_k=min(16, n // 4)),
        merge_results("theorem", [check_theorem(mu, grid_n=n) for mu in fams]),
        merge_results("chain", [check_chain(mu, grid_n=n) for mu in fams]),
        merge_results("pointwise", [check_pointwise_ineq(mu, max_n=args.pointwise_max) for mu in fams]),
        brute_force_min_ineq(args.minineq_max),
    ]
    return results


def _cmd_spectrum(args):
    mu = parse_mu_literal(args.mu)
    top_k = args.top_k if args.top_k else max(1, args.grid // 8)
    lines = ["k,sigma,bound"]
    if len(mu):
        op = triangular_truncate(multiplier_operator(construct_odd_support(mu), make_grid(args.grid)))
        sigma = singular_values(op, top_k).values
        bound = calderon(mu, top_k).padded(top_k) / EIGHT_PI
        lines += [f"{k},{float(s)!r},{float(b)!r}" for k, (s, b) in enumerate(zip(sigma, bound))]
    payload = "\n".join(lines) + "\n"
    if args.csv:
        _write_atomic(args.csv, payload)
    else:
        sys.stdout.write(payload)
    return []


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Machine-check spectral identities for triangular truncation of Fourier multipliers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {tritrunc.__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=fn)
        p.add_argument("--report", default=None, help="write a JSON report to this path")
        return p

    p = add("fact1", _cmd_fact1, "coefficient identity: sign-multiplier quadrature vs odd-offset convolution")
    p.add_argument("--x", default="delta:1")
    p.add_argument("--max-n", type=int, default=32)
    p.add_argument("--panels", type=int, default=65536)
    p.add_argument("--rule", choices=("midpoint", "gauss4"), default="gauss4")
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("lemma2", _cmd_lemma2, "four-block decomposition of the truncated multiplier")
    p.add_argument("--x", default="delta:1")
    p.add_argument("--grids", default="128,256,512")
    p.add_argument("--window-factor", type=float, default=8.0)
    p.add_argument("--tol", type=float, default=None, help="relative tolerance (default scales with the finest grid)")

    p = add("lemma3", _cmd_lemma3, "compression spectrum = half the Hilbert sequence")
    p.add_argument("--x", default="delta:1")
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--top-k", type=int, default=16)
    p.add_argument("--window-factor", type=float, default=8.0)
    p.add_argument("--tol", type=float, default=None, help="relative tolerance (default scales with the grid)")

    p = add("theorem", _cmd_theorem, "spectral lower bound by the Calderon weights")
    p.add_argument("--mu", default="delta:0")
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--top-k", type=int, default=16)
    p.add_argument("--slack", type=float, default=None)

    p = add("chain", _cmd_chain, "compression monotonicity and the doubled-compression identity")
    p.add_argument("--mu", default="delta:0")
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--top-k", type=int, default=16)
    p.add_argument("--window-factor", type=float, default=8.0)
    p.add_argument("--tol", type=float, default=None)

    p = add("pointwise", _cmd_pointwise, "pointwise Hilbert-vs-Calderon inequality (no grids)")
    p.add_argument("--mu", default="delta:0")
    p.add_argument("--max-n", type=int, default=10_000)

    p = add("minineq", _cmd_minineq, "exhaustive elementary min-inequality sweep")
    p.add_argument("--max", type=int, default=2000)

    p = add("all", _cmd_all, "run every claim once and summarize")
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--x", default="delta:1")
    p.add_argument("--families", default=DEFAULT_FAMILY_LITERALS)
    p.add_argument("--max-n", type=int, default=32)
    p.add_argument("--panels", type=int, default=65536)
    p.add_argument("--pointwise-max", type=int, default=10_000)
    p.add_argument("--minineq-max", type=int, default=2000)

    p = add("spectrum", _cmd_spectrum, "dump k,sigma,bound CSV for plotting")
    p.add_argument("--mu", default="delta:0")
    p.add_argument("--grid", type=int, default=512)
    p.add_argument("--top-k", type=int, default=None)
    p.add_argument("--csv", default=None, help="CSV output path (stdout when omitted)")

    p = add("converge", _cmd_converge, "grid-refinement study for one claim")
    p.add_argument("--claim", choices=("lemma2", "lemma3", "theorem", "chain"), required=True)
    p.add_argument("--x", default="delta:1")
    p.add_argument("--mu", default="delta:0")
    p.add_argument("--grids", default="128,256,512")

    return parser


def _config_echo(args) -> dict:
    skip = {"handler", "report"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        results = args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    report = VerificationReport(
        tool_version=tritrunc.__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        config_echo=_config_echo(args),
        results=results,
    )
    if args.report:
        write_report(args.report, report)

    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.claim_id}: {status} (worst_margin={r.worst_margin:.6e}, tolerance={r.tolerance:g})")
        if not r.passed:
            print(f"{r.claim_id}: worst rows {list(r.details)[:4]}", file=sys.stderr)
    if results:
        s = report.summary
        print(f"summary: {s['passed']} passed, {s['failed']} failed")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
