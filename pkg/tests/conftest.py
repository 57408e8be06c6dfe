from functools import lru_cache

import pytest

from adlv.affine_weyl import AffineWeylGroup
from adlv.reduction_oracle import Oracle
from adlv.root_system import parse_group


@lru_cache(maxsize=None)
def group(spec: str) -> AffineWeylGroup:
    return AffineWeylGroup(parse_group(spec))


@lru_cache(maxsize=None)
def oracle(spec: str, policy: str = "first") -> Oracle:
    return Oracle(group(spec), policy, budget=10**8)


@pytest.fixture
def A1():
    return group("A1")


@pytest.fixture
def A2():
    return group("A2")


@pytest.fixture
def B2():
    return group("B2")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
