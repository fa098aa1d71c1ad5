import pytest

from cohpow.verify import run_all

VERIFY_SEED = 42


@pytest.fixture(scope="session")
def verify_results():
    """Full claim-suite run at the repository's regression seed.

    Session-scoped because the optimization-heavy claims take minutes;
    both the verification tests and the acceptance criteria read from the
    same run.
    """
    return {r.claim_id: r for r in run_all(seed=VERIFY_SEED)}
