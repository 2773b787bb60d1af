import json
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from admskein.catdata import build_graded_vect, build_lambda2, build_trivial, build_z3_zeta
from admskein.exactla import Field

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("repo")

ORACLES = json.loads((Path(__file__).parent / "oracles.json").read_text())


@lru_cache(maxsize=None)
def category(name: str, field: str = "F7"):
    fld = Field.rationals() if field == "Q" else Field.prime(int(field[1:]))
    if name == "trivial":
        return build_trivial(fld)
    if name == "z2":
        return build_graded_vect(2, [1, -1], fld, title="graded_vect_2_sign")
    if name == "z3":
        return build_z3_zeta(fld)
    if name == "z3sph":
        return build_graded_vect(3, [1, 1, 1], fld)
    if name == "lambda2":
        return build_lambda2(fld)
    raise KeyError(name)


@pytest.fixture(scope="session")
def oracles():
    return ORACLES


@pytest.fixture(scope="session")
def F7():
    return Field.prime(7)


@pytest.fixture(scope="session")
def Q():
    return Field.rationals()


# acceptance verdicts, filled in by test_acceptance and echoed after the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
