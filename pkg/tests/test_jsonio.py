import json
import math

import numpy as np
import pytest

from cohpow import (
    DimensionError,
    FormatError,
    InvariantError,
    Measure,
    OptimizerConfig,
    max_coherent,
    maximally_mixed,
)
from cohpow import jsonio
from cohpow.powers import PowerKind, PowerReport
from cohpow.verify import ClaimResult
from cohpow.zoo import ChannelSpec, build, random_channel


def random_state(seed, dim, dims=None):
    rng = np.random.default_rng(seed)
    t = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = t @ t.conj().T
    from cohpow import DensityMatrix

    return DensityMatrix(m / np.trace(m).real, dims)


class TestStateRoundTrip:
    def test_entrywise_identical(self):
        rho = random_state(1, 6, (2, 3))
        obj = jsonio.state_to_json(rho)
        # Through an actual JSON text round trip: repr floats are exact.
        back = jsonio.state_from_json(json.loads(json.dumps(obj)))
        assert np.array_equal(back.matrix, rho.matrix)
        assert back.dims == rho.dims

    def test_missing_matrix_field(self):
        with pytest.raises(FormatError, match="state.matrix") as err:
            jsonio.state_from_json({"dims": [2]})
        assert err.value.field == "state.matrix"

    def test_bad_complex_pair_named(self):
        obj = jsonio.state_to_json(maximally_mixed(2))
        obj["matrix"][0][1] = [0.0]
        with pytest.raises(FormatError, match=r"state.matrix\[0\]\[1\]"):
            jsonio.state_from_json(obj)

    def test_ragged_rows_rejected(self):
        with pytest.raises(FormatError, match=r"matrix\[1\]"):
            jsonio.matrix_from_json([[[0, 0], [0, 0]], [[0, 0]]], "matrix")

    def test_bad_dims_entry(self):
        obj = jsonio.state_to_json(maximally_mixed(2))
        obj["dims"] = [2, "x"]
        with pytest.raises(FormatError, match=r"state.dims\[1\]"):
            jsonio.state_from_json(obj)

    def test_dims_product_mismatch_is_dimension_error(self):
        obj = jsonio.state_to_json(maximally_mixed(4))
        obj["dims"] = [3]
        with pytest.raises(DimensionError):
            jsonio.state_from_json(obj)

    def test_unphysical_state_reports_residual(self):
        obj = {
            "dims": [2],
            "matrix": [[[1.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-0.5, 0.0]]],
        }
        with pytest.raises(InvariantError) as err:
            jsonio.state_from_json(obj)
        assert err.value.residual == pytest.approx(0.5, abs=1e-12)


class TestChannelRoundTrip:
    def test_entrywise_identical(self):
        phi = random_channel(3, env_dim=2, seed=5)
        obj = jsonio.channel_to_json(phi)
        back = jsonio.channel_from_json(json.loads(json.dumps(obj)))
        assert len(back.kraus) == len(phi.kraus)
        for a, b in zip(back.kraus, phi.kraus):
            assert np.array_equal(a, b)

    def test_declared_dims_checked(self):
        obj = jsonio.channel_to_json(random_channel(2, seed=1))
        obj["dim_in"] = 3
        with pytest.raises(FormatError, match="channel.dim_in"):
            jsonio.channel_from_json(obj)

    def test_empty_kraus_list(self):
        with pytest.raises(FormatError, match="channel.kraus"):
            jsonio.channel_from_json({"kraus": []})

    def test_incomplete_kraus_reports_residual(self):
        obj = {"kraus": [jsonio.matrix_to_json(0.5 * np.eye(2))]}
        with pytest.raises(InvariantError):
            jsonio.channel_from_json(obj)


class TestSpec:
    def test_round_trip(self):
        spec = ChannelSpec("random", dim=3, env_dim=2, seed=11)
        back = jsonio.spec_from_json(json.loads(json.dumps(jsonio.spec_to_json(spec))))
        assert back == spec

    def test_unitary_matrix_round_trip(self):
        h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        spec = ChannelSpec("unitary", matrix=h)
        back = jsonio.spec_from_json(jsonio.spec_to_json(spec))
        build(back).validate()

    def test_name_required(self):
        with pytest.raises(FormatError, match="spec.name"):
            jsonio.spec_from_json({"dim": 2})

    def test_bad_parameter_type(self):
        with pytest.raises(FormatError, match="spec.dim"):
            jsonio.spec_from_json({"name": "erasing", "dim": "two"})


class TestReportsAndClaims:
    def test_infinity_encoding(self):
        assert jsonio.real_to_json(math.inf) == "inf"
        assert jsonio.real_to_json(-math.inf) == "-inf"
        assert jsonio.real_from_json("inf", "x") == math.inf
        assert jsonio.real_from_json(1.25, "x") == 1.25
        with pytest.raises(FormatError):
            jsonio.real_from_json("huge", "x")

    def test_report_serializes_with_inf_bound(self):
        report = PowerReport(
            kind=PowerKind.COMPLETE_COHERING,
            measure=Measure.L1_NORM,
            k=2,
            value=3.0,
            upper_bound=math.inf,
            optimal_input=max_coherent(2).density(),
            config=OptimizerConfig(rng_seed=4),
            family="bipartite-pure",
            product_lower_bound=2.0,
        )
        obj = jsonio.report_to_json(report)
        text = json.dumps(obj)  # must be strictly valid JSON
        parsed = json.loads(text)
        assert parsed["upper_bound"] == "inf"
        assert parsed["config"]["rng_seed"] == 4
        assert parsed["product_lower_bound"] == 2.0

    def test_claim_serialization(self):
        claim = ClaimResult(
            claim_id="demo",
            description="demo claim",
            measured={"a": 1.0, "b": math.inf},
            tolerance=1e-6,
            passed=True,
            seed=7,
        )
        obj = jsonio.claim_to_json(claim)
        assert obj["measured"]["b"] == "inf"
        json.dumps(obj)
