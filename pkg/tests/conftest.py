import numpy as np
import pytest

from tritrunc.sequences import LateralSequence


def random_odd_support(rng, n_terms=8, span=33, complex_values=True):
    """A random sequence supported on odd integers in [-span, span]."""
    odd = np.arange(-span, span + 1, 2)
    if span % 2 == 0:
        odd = odd + 1
    positions = rng.choice(odd, size=n_terms, replace=False)
    if complex_values:
        values = rng.standard_normal(n_terms) + 1j * rng.standard_normal(n_terms)
    else:
        values = rng.standard_normal(n_terms)
    lo = int(positions.min())
    hi = int(positions.max())
    dense = np.zeros(hi - lo + 1, dtype=np.complex128)
    dense[positions - lo] = values
    return LateralSequence(lo, dense)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
