import pytest

from keyvar.registry import RunConfig, default_registry, run_checks


@pytest.fixture(scope="session")
def registry_results():
    """One full run of the default registry at seed 0, keyed by check id."""
    results = run_checks(default_registry(), RunConfig(seed=0))
    return {r.id: r for r in results}
