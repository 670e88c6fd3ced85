import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cayley7.atlas import builtin_group, default_witness_dir

settings.register_profile("artifact", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("artifact")


def perms(n):
    """Hypothesis strategy for permutations of degree n as tuples."""
    return st.permutations(list(range(n))).map(tuple)


@pytest.fixture(scope="session")
def witness_dir():
    return default_witness_dir()


@pytest.fixture(scope="session")
def S7():
    return builtin_group("S:7")


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, when the acceptance module ran."""
    import sys
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        status, detail = verdicts[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {detail}")
