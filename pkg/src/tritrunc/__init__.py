"""Numerical verification lab for triangular truncation of Fourier multipliers.

The package discretizes convolution-type operators on L2(-pi, pi), applies
triangular truncation (kernel multiplied by sgn(t - s)), and machine-checks a
family of spectral identities and inequalities relating the truncated
operator, the discrete Hilbert-type transform, and the discrete Calderon
operator.  Every claim is exposed both as a library check returning a
``CheckResult`` and through the ``verify`` command line tool.
"""

from tritrunc._kernels import NUMBA_ENABLED
from tritrunc.sequences import (
    DecreasingWeights,
    LateralSequence,
    construct_odd_support,
    decreasing_rearrangement,
    lambda_log_diagnostic,
)
from tritrunc.transforms import calderon, cesaro, cesaro_adjoint, hilbert_discrete
from tritrunc.fourier import piecewise_quadrature, sgn_fourier_coefficient, trig_eval
from tritrunc.discretize import (
    GridSpec,
    KernelOperator,
    SingularSpectrum,
    hermitian_eigenvalues,
    make_grid,
    multiplier_operator,
    project,
    singular_values,
    triangular_truncate,
)
from tritrunc.verify import (
    CheckResult,
    brute_force_min_ineq,
    check_chain,
    check_fact1,
    check_lemma2,
    check_lemma3,
    check_pointwise_ineq,
    check_theorem,
    convergence_study,
    weight_family,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "LateralSequence",
    "DecreasingWeights",
    "decreasing_rearrangement",
    "construct_odd_support",
    "lambda_log_diagnostic",
    "hilbert_discrete",
    "cesaro",
    "cesaro_adjoint",
    "calderon",
    "trig_eval",
    "sgn_fourier_coefficient",
    "piecewise_quadrature",
    "GridSpec",
    "KernelOperator",
    "SingularSpectrum",
    "make_grid",
    "multiplier_operator",
    "triangular_truncate",
    "project",
    "singular_values",
    "hermitian_eigenvalues",
    "CheckResult",
    "check_fact1",
    "check_lemma2",
    "check_lemma3",
    "check_theorem",
    "check_chain",
    "check_pointwise_ineq",
    "brute_force_min_ineq",
    "convergence_study",
    "weight_family",
    "__version__",
]
