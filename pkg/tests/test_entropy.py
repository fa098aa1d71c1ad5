import math

import numpy as np
import pytest

from cohpow import (
    DensityMatrix,
    DimensionError,
    basis_state,
    binary_entropy,
    c_rel_entropy,
    dephase,
    max_coherent,
    maximally_mixed,
    relative_entropy,
    von_neumann_entropy,
)
from cohpow.zoo import random_channel
from cohpow.channels import apply_channel

# Independent oracle: h(1/4) from the definition, frozen.
# -0.25*log2(0.25) - 0.75*log2(0.75) = 0.5 + 0.75*(2 - log2(3))
H_QUARTER = 0.8112781244591328
assert abs(H_QUARTER - (0.5 + 0.75 * (2 - math.log2(3)))) < 1e-15


def random_density(rng, dim):
    t = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = t @ t.conj().T
    return DensityMatrix(m / np.trace(m).real)


class TestVonNeumannEntropy:
    def test_pure_states_have_zero_entropy(self):
        for d in (2, 3, 4):
            assert von_neumann_entropy(max_coherent(d).density()) == pytest.approx(0.0, abs=1e-12)
            assert von_neumann_entropy(basis_state(d, 0).density()) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_is_log_dim(self):
        for d in (2, 3, 4, 6):
            assert von_neumann_entropy(maximally_mixed(d)) == pytest.approx(math.log2(d), abs=1e-12)

    def test_binary_spectrum(self):
        rho = DensityMatrix(np.diag([0.25, 0.75]).astype(complex))
        assert von_neumann_entropy(rho) == pytest.approx(H_QUARTER, abs=1e-12)

    def test_range_on_random_states(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            d = int(rng.integers(2, 5))
            s = von_neumann_entropy(random_density(rng, d))
            assert -1e-12 <= s <= math.log2(d) + 1e-12


class TestBinaryEntropy:
    def test_endpoints_and_midpoint(self):
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-14)
        assert binary_entropy(0.25) == pytest.approx(H_QUARTER, abs=1e-14)


class TestRelativeEntropy:
    def test_self_distance_is_zero(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            rho = random_density(rng, 3)
            assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-10)

    def test_plus_versus_maximally_mixed_is_one_bit(self):
        plus = max_coherent(2).density()
        assert relative_entropy(plus, maximally_mixed(2)) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_supports_are_infinite(self):
        zero = basis_state(2, 0).density()
        one = basis_state(2, 1).density()
        assert relative_entropy(zero, one) == math.inf

    def test_support_condition_direction(self):
        # rank-1 sigma cannot dominate a full-rank rho, but the reverse is fine
        rng = np.random.default_rng(4)
        rho = random_density(rng, 2)
        pure = basis_state(2, 0).density()
        assert relative_entropy(rho, pure) == math.inf
        assert math.isfinite(relative_entropy(pure, rho))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            relative_entropy(maximally_mixed(2), maximally_mixed(3))

    def test_nonnegative_on_random_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            d = int(rng.integers(2, 5))
            val = relative_entropy(random_density(rng, d), random_density(rng, d))
            assert val >= -1e-9

    def test_closed_form_consistency_with_coherence(self):
        # C_r equals the relative entropy to the dephased state.
        rng = np.random.default_rng(6)
        for _ in range(100):
            d = int(rng.integers(2, 5))
            rho = random_density(rng, d)
            assert c_rel_entropy(rho) == pytest.approx(
                relative_entropy(rho, dephase(rho)), abs=1e-9
            )

    def test_data_processing_sanity(self):
        # Channels can only shrink the relative entropy.
        rng = np.random.default_rng(7)
        for trial in range(100):
            d = int(rng.integers(2, 4))
            phi = random_channel(d, seed=1000 + trial)
            rho = random_density(rng, d)
            sigma = random_density(rng, d)
            before = relative_entropy(rho, sigma)
            if not math.isfinite(before):
                continue
            after = relative_entropy(apply_channel(phi, rho), apply_channel(phi, sigma))
            assert after <= before + 1e-8
