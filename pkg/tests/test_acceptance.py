"""Acceptance criteria, one test per criterion.

Each test prints one ``ACCEPTANCE <n> PASS|FAIL`` line (visible with
``pytest -s``) and pins the tolerance stated for the criterion.  The
heavyweight claim computations are shared with the verification suite
through the session-scoped ``verify_results`` fixture.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from cohpow import (
    DensityMatrix,
    Measure,
    OptimizerConfig,
    PureState,
    QIDecomposition,
    apply_channel,
    c_l1,
    c_rel_entropy,
    cohering_power,
    complete_decohering_power,
    dephase,
    extend_channel,
    generalized_cohering_power,
    generalized_decohering_power,
    max_coherent,
    partial_trace,
    psi_phi_asymmetry,
    qi_coherence_additivity_check,
    relative_entropy,
    tensor,
)
from cohpow.powers import _bipartite_gain_search, _generalized
from cohpow.zoo import erasing, hadamard, max_cohering, random_channel

ACCEPT_SEED = 7
H_QUARTER = 0.8112781244591328  # binary entropy at 1/4, frozen from the definition

SINGLE_CFG = OptimizerConfig(restarts=32, rng_seed=ACCEPT_SEED)
BIPARTITE_CFG = OptimizerConfig(restarts=6, max_iters=800, rng_seed=ACCEPT_SEED)


@contextmanager
def criterion(number, name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} FAIL: {name}")
        raise
    else:
        print(f"ACCEPTANCE {number} PASS: {name}")


def random_density(rng, dim, dims=None):
    t = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = t @ t.conj().T
    return DensityMatrix(m / np.trace(m).real, dims)


def test_criterion_1_erasing_complete_decohering_power():
    with criterion(1, "erasing-channel complete decohering power reaches 2 bits at k=2"):
        start = time.perf_counter()
        reports = complete_decohering_power(
            erasing(2),
            Measure.REL_ENTROPY,
            k_max=2,
            config=BIPARTITE_CFG,
            single_config=SINGLE_CFG,
        )
        assert reports[1].value == pytest.approx(2.0, abs=1e-3)

        witness = PureState(np.array([1, 1, 1, -1], dtype=complex) / 2.0, (2, 2))
        rho = witness.density()
        before = c_rel_entropy(rho)
        after = c_rel_entropy(apply_channel(extend_channel(erasing(2), 2), rho))
        assert before == pytest.approx(2.0, abs=1e-9)
        assert after == pytest.approx(0.0, abs=1e-9)
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"criterion 1 took {elapsed:.1f}s"


def test_criterion_2_erasing_generalized_decohering_power():
    with criterion(2, "erasing-channel generalized decohering power is 1 bit"):
        report = generalized_decohering_power(erasing(2), Measure.REL_ENTROPY, SINGLE_CFG)
        assert report.value == pytest.approx(1.0, abs=1e-6)


def test_criterion_3_complete_equals_generalized_cohering():
    with criterion(3, "complete and generalized cohering powers coincide (13 channels)"):
        start = time.perf_counter()
        channels = [hadamard(), max_cohering(2), erasing(2)]
        channels += [random_channel(2, seed=ACCEPT_SEED * 100 + i) for i in range(10)]
        worst = 0.0
        for phi in channels:
            ref = _generalized(phi, Measure.REL_ENTROPY, SINGLE_CFG, +1)
            gen = ref[0]
            for k in (2, 3):
                _, best = _bipartite_gain_search(
                    phi, Measure.REL_ENTROPY, k, BIPARTITE_CFG, +1, ref[1], ref[2]
                )
                worst = max(worst, abs(best.best_value - gen.value))
        assert worst <= 1e-4, f"max |complete - generalized| = {worst}"
        elapsed = time.perf_counter() - start
        assert elapsed < 300.0, f"criterion 3 took {elapsed:.1f}s"


def test_criterion_4_lemma2_bounds(verify_results):
    with criterion(4, "decohering caps: 2 bits entangled, 1 bit separable, both attained"):
        result = verify_results["lemma2-bounds"]
        assert result.passed
        assert result.measured["max_complete_value"] <= 2.0 + 1e-5
        assert result.measured["max_separable_value"] <= 1.0 + 1e-5
        assert result.measured["erasing_complete_k2"] == pytest.approx(2.0, abs=1e-3)
        assert result.measured["erasing_separable_k2"] == pytest.approx(1.0, abs=1e-3)


def test_criterion_5_l1_gain_diverges_linearly():
    with criterion(5, "l1 product construction gains k = 2, 4, 8, beating the cap of 1"):
        had = hadamard()
        zero = DensityMatrix(np.diag([1.0, 0.0]).astype(complex))
        for k in (2, 4, 8):
            probe = tensor(zero, max_coherent(k).density())
            out = apply_channel(extend_channel(had, k), probe)
            gain = c_l1(out) - c_l1(probe)
            assert gain == pytest.approx(float(k), abs=1e-8)
            assert gain > 1.0


def test_criterion_6_max_cohering_saturation():
    with criterion(6, "maximally cohering channel saturates log2(d) for d = 2, 3, 4"):
        for d in (2, 3, 4):
            plain = cohering_power(max_cohering(d), Measure.REL_ENTROPY, SINGLE_CFG,
                                   cross_check=False)
            gen = generalized_cohering_power(max_cohering(d), Measure.REL_ENTROPY, SINGLE_CFG)
            assert plain.value == pytest.approx(math.log2(d), abs=1e-6)
            assert gen.value == pytest.approx(math.log2(d), abs=1e-6)


def test_criterion_7_bell_hadamard_counterexample():
    with criterion(7, "Bell input gains 1 bit under Hadamard, its marginal gains 0"):
        bell = PureState(np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2), (2, 2))
        rho = bell.density()
        ext = extend_channel(hadamard(), 2)
        gain_bell = c_rel_entropy(apply_channel(ext, rho)) - c_rel_entropy(rho)
        marginal = partial_trace(rho, 0)
        gain_marg = c_rel_entropy(apply_channel(hadamard(), marginal)) - c_rel_entropy(marginal)
        assert gain_bell == pytest.approx(1.0, abs=1e-9)
        assert gain_marg == pytest.approx(0.0, abs=1e-9)


def test_criterion_8_psi_phi_asymmetry():
    with criterion(8, "equally coherent probes keep (1 - h(1/4), 0) bits after erasure"):
        theta = math.pi / 6
        s, c = math.sin(theta), math.cos(theta)
        psi = PureState(np.array([s, s, c, -c], dtype=complex) / math.sqrt(2), (2, 2))
        phi = PureState(np.array([s, c, s, -c], dtype=complex) / math.sqrt(2), (2, 2))
        pre_gap = abs(c_rel_entropy(psi.density()) - c_rel_entropy(phi.density()))
        assert pre_gap <= 1e-9
        first, second = psi_phi_asymmetry(theta)
        assert first == pytest.approx(1.0 - H_QUARTER, abs=1e-6)
        assert second == pytest.approx(0.0, abs=1e-6)


class TestCriterion9PropertySuites:
    """Randomized invariants, at least 1000 seeded instances each."""

    N = 1000

    def test_convexity(self):
        with criterion(9, "convexity of both measures (1000 instances)"):
            rng = np.random.default_rng(90)
            for _ in range(self.N):
                d = int(rng.integers(2, 5))
                rho, sigma = random_density(rng, d), random_density(rng, d)
                lam = float(rng.uniform())
                mix = DensityMatrix(lam * rho.matrix + (1 - lam) * sigma.matrix, check=False)
                assert c_rel_entropy(mix) <= lam * c_rel_entropy(rho) + (1 - lam) * c_rel_entropy(sigma) + 1e-9
                assert c_l1(mix) <= lam * c_l1(rho) + (1 - lam) * c_l1(sigma) + 1e-9

    def test_additivity_on_products(self):
        with criterion(9, "coherence additivity on product states (1000 instances)"):
            rng = np.random.default_rng(91)
            for _ in range(self.N):
                a = random_density(rng, int(rng.integers(2, 4)))
                b = random_density(rng, int(rng.integers(2, 4)))
                prod = tensor(a, b)
                assert c_rel_entropy(prod) == pytest.approx(
                    c_rel_entropy(a) + c_rel_entropy(b), abs=1e-9
                )

    def test_l1_product_formula(self):
        with criterion(9, "l1 product formula (1000 instances)"):
            rng = np.random.default_rng(92)
            for _ in range(self.N):
                a = random_density(rng, int(rng.integers(2, 4)))
                b = random_density(rng, int(rng.integers(2, 4)))
                lhs = c_l1(tensor(a, b))
                rhs = (c_l1(a) + 1.0) * (c_l1(b) + 1.0) - 1.0
                assert lhs == pytest.approx(rhs, abs=1e-9)

    def test_qi_additivity(self):
        with criterion(9, "block additivity on quantum-incoherent states (1000 instances)"):
            rng = np.random.default_rng(93)
            for _ in range(self.N):
                d = int(rng.integers(2, 4))
                n = int(rng.integers(2, 4))
                weights = rng.dirichlet(np.ones(n))
                blocks = tuple(random_density(rng, d) for _ in range(n))
                assert qi_coherence_additivity_check(QIDecomposition(weights, blocks)) <= 1e-8

    def test_dephasing_idempotence(self):
        with criterion(9, "dephasing idempotence (1000 instances)"):
            rng = np.random.default_rng(94)
            for _ in range(self.N):
                d = int(rng.integers(2, 5))
                rho = random_density(rng, d)
                once = dephase(rho)
                np.testing.assert_allclose(dephase(once).matrix, once.matrix, atol=1e-12)

    def test_data_processing(self):
        with criterion(9, "relative entropy shrinks under channels (1000 instances)"):
            rng = np.random.default_rng(95)
            checked = 0
            trial = 0
            while checked < self.N:
                trial += 1
                d = int(rng.integers(2, 5))
                phi = random_channel(d, seed=95000 + trial)
                rho, sigma = random_density(rng, d), random_density(rng, d)
                before = relative_entropy(rho, sigma)
                if not math.isfinite(before):
                    continue
                after = relative_entropy(apply_channel(phi, rho), apply_channel(phi, sigma))
                assert after <= before + 1e-8
                checked += 1

    def test_partial_trace_monotonicity(self):
        with criterion(9, "coherence never grows under partial trace (1000 instances)"):
            rng = np.random.default_rng(96)
            for _ in range(self.N):
                da = int(rng.integers(2, 4))
                db = int(rng.integers(2, 4))
                rho = random_density(rng, da * db, (da, db))
                assert c_rel_entropy(partial_trace(rho, 1)) <= c_rel_entropy(rho) + 1e-9
                assert c_rel_entropy(partial_trace(rho, 0)) <= c_rel_entropy(rho) + 1e-9
