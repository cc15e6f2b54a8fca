import math
from fractions import Fraction

import numpy as np
import pytest

from tritrunc.sequences import DecreasingWeights, LateralSequence
from tritrunc.transforms import calderon, cesaro, cesaro_adjoint, hilbert_discrete

from conftest import random_odd_support


def hilbert_bruteforce(x, n):
    """Independent oracle: literal double loop over the support."""
    total = 0j
    for m in range(x.support_lo, x.support_hi + 1):
        if (m - n) % 2 != 0:
            total += x.value_at(m) / (m - n)
    return total / math.pi


class TestHilbertDiscrete:
    def test_delta0_at_one(self):
        h = hilbert_discrete(LateralSequence.delta(0), 1, 1)
        assert h.value_at(1) == pytest.approx(-1.0 / math.pi, rel=1e-15)

    def test_delta0_even_offset_is_excluded(self):
        h = hilbert_discrete(LateralSequence.delta(0), 2, 2)
        assert h.value_at(2) == 0

    def test_delta1_hand_sum(self):
        h = hilbert_discrete(LateralSequence.delta(1), -2, -2)
        assert h.value_at(-2) == pytest.approx(1.0 / (3.0 * math.pi), rel=1e-15)

    def test_rejects_empty_window(self):
        with pytest.raises(ValueError):
            hilbert_discrete(LateralSequence.delta(0), 3, 1)

    def test_matches_bruteforce(self, rng):
        for _ in range(10):
            x = random_odd_support(rng, n_terms=6, span=15)
            h = hilbert_discrete(x, -20, 20)
            for n in range(-20, 21):
                assert h.value_at(n) == pytest.approx(hilbert_bruteforce(x, n), abs=1e-15)

    def test_linearity(self, rng):
        x = random_odd_support(rng, n_terms=5, span=11)
        y = random_odd_support(rng, n_terms=5, span=11)
        a, b = 1.7 - 0.3j, -0.8 + 2.1j
        lhs = hilbert_discrete(a * x + b * y, -16, 16).window_values(-16, 16)
        rhs = a * hilbert_discrete(x, -16, 16).window_values(-16, 16)
        rhs += b * hilbert_discrete(y, -16, 16).window_values(-16, 16)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-14)

    def test_parity_odd_support_kills_odd_outputs(self, rng):
        for _ in range(10):
            x = random_odd_support(rng)
            h = hilbert_discrete(x, -40, 40)
            vals = h.window_values(-40, 40)
            odd = np.arange(-40, 41) % 2 != 0
            assert np.all(vals[odd] == 0)

    def test_parity_even_support_kills_even_outputs(self, rng):
        positions = rng.choice(np.arange(-10, 11, 2), size=5, replace=False)
        x = LateralSequence.zero()
        for p in positions:
            x = x + LateralSequence.delta(int(p), complex(rng.standard_normal()))
        vals = hilbert_discrete(x, -30, 30).window_values(-30, 30)
        even = np.arange(-30, 31) % 2 == 0
        assert np.all(vals[even] == 0)


class TestCesaro:
    def test_delta0(self):
        out = cesaro([1.0], 4)
        assert out[0] == 1.0
        assert out[3] == pytest.approx(0.25)

    def test_three_ones(self):
        assert cesaro([1.0, 1.0, 1.0], 2)[1] == 1.0

    def test_two_terms(self):
        assert cesaro([1.0, 0.5], 2)[1] == pytest.approx(0.75)

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError):
            cesaro([1.0], 0)


class TestCesaroAdjoint:
    def test_delta0(self):
        np.testing.assert_allclose(cesaro_adjoint([1.0], 3), [1.0, 0.0, 0.0])

    def test_delta3(self):
        out = cesaro_adjoint([0.0, 0.0, 0.0, 1.0], 4)
        assert out[2] == pytest.approx(0.25)

    def test_two_terms(self):
        assert cesaro_adjoint([1.0, 0.5], 1)[0] == pytest.approx(1.25)


class TestCalderon:
    def test_singleton_values(self):
        out = calderon(DecreasingWeights([1.0]), 3)
        np.testing.assert_allclose(out.weights, [2.0, 0.5, 1.0 / 3.0], rtol=1e-15)

    def test_geometric_frozen_value(self):
        # oracle: exact rational sum 1 + sum_{k<16} 2^-k/(k+1)
        oracle = Fraction(1) + sum(Fraction(1, 2**k) / (k + 1) for k in range(16))
        assert float(oracle) == pytest.approx(2.386292656530007, abs=1e-15)
        out = calderon(DecreasingWeights(0.5 ** np.arange(16)), 1)
        assert out[0] == pytest.approx(float(oracle), rel=1e-14)

    def test_rejects_bad_window(self):
        with pytest.raises(ValueError):
            calderon(DecreasingWeights([1.0]), 0)

    def test_monotone_and_nonnegative(self, rng):
        for _ in range(15):
            w = np.sort(rng.uniform(0.0, 3.0, size=rng.integers(1, 30)))[::-1]
            out = calderon(DecreasingWeights(w), 40).padded(40)
            assert np.all(out >= 0)
            assert np.all(np.diff(out) <= 0)

    def test_empty_input(self):
        out = calderon(DecreasingWeights([]), 5)
        assert len(out) == 0


class TestPointwiseTheoremBound:
    def test_hilbert_dominates_calderon_over_eight_pi(self, rng):
        # invariant behind the spectral bound, checked directly on sequences
        for _ in range(8):
            w = np.sort(rng.uniform(0.01, 1.0, size=rng.integers(1, 16)))[::-1]
            mu = DecreasingWeights(w)
            from tritrunc.sequences import construct_odd_support

            x = construct_odd_support(mu)
            max_n = 64
            h = hilbert_discrete(x, -2 * max_n, 0).window_values(-2 * max_n, 0)
            lhs = h[::-2].real
            rhs = calderon(mu, max_n + 1).padded(max_n + 1) / (8.0 * math.pi)
            assert np.all(lhs >= rhs - 1e-12)
