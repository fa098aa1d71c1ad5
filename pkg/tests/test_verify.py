import pytest

from cohpow.verify import CLAIMS, all_passed, run_all, verify_psi_phi

from conftest import VERIFY_SEED

EXPECTED_CLAIM_IDS = [
    "bell-marginal",
    "erasing-decohering",
    "lemma1",
    "lemma2-bounds",
    "prop1-unbounded",
    "psi-phi",
    "theorem1",
]


def test_registry_matches_expected_claims():
    assert sorted(CLAIMS) == EXPECTED_CLAIM_IDS


def test_all_claims_pass_at_regression_seed(verify_results):
    assert sorted(verify_results) == EXPECTED_CLAIM_IDS
    for claim_id, result in verify_results.items():
        assert result.passed, f"{claim_id} failed: {result.measured}"


def test_results_reproducible_from_recorded_seed(verify_results):
    recorded = verify_results["psi-phi"]
    rerun = verify_psi_phi(seed=recorded.seed)
    assert rerun.measured == recorded.measured
    assert rerun.passed


def test_claim_filter_preserves_subseeds(verify_results):
    only = run_all(seed=VERIFY_SEED, claim_ids=["psi-phi"])
    assert len(only) == 1
    assert only[0].measured == verify_results["psi-phi"].measured
    assert only[0].seed == verify_results["psi-phi"].seed


def test_empty_claim_set_is_a_vacuous_pass():
    results = run_all(seed=VERIFY_SEED, claim_ids=[])
    assert results == []
    assert all_passed(results)


def test_unknown_claim_rejected():
    with pytest.raises(KeyError, match="unknown claim"):
        run_all(seed=VERIFY_SEED, claim_ids=["lemma3"])


def test_key_diagnostics_present(verify_results):
    lemma2 = verify_results["lemma2-bounds"]
    assert "max_separable_minus_generalized" in lemma2.measured
    assert lemma2.measured["max_complete_value"] <= 2.0 + 1e-5
    theorem1 = verify_results["theorem1"]
    assert theorem1.measured["max_complete_minus_generalized"] <= 1e-5
    assert theorem1.measured["max_generalized_minus_complete"] <= 1e-4


def test_results_ordered_by_claim_id(verify_results):
    ordered = run_all(seed=VERIFY_SEED, claim_ids=["theorem1", "lemma1"])
    assert [r.claim_id for r in ordered] == ["lemma1", "theorem1"]
    assert ordered[0].measured == verify_results["lemma1"].measured
