from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

import acceptance_log
from hahnfield.coeffs import PerfectHull, PrimeField, RationalFunctions, Rationals
from hahnfield.groups import integers, lex_power, p_hull, rational_subgroup
from hahnfield.series import HahnField, RootSection, derive_factor_set

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def QZ():
    return HahnField(integers(), Rationals())


@pytest.fixture(scope="session")
def QZ2():
    return HahnField(lex_power(2), Rationals())


@pytest.fixture(scope="session")
def QH():
    return HahnField(p_hull(2, 8), Rationals())


@pytest.fixture(scope="session")
def QHalf():
    """Q((1/2 Z)) twisted by the section with (t^(1/2))^2 = 2 t."""
    k = Rationals()
    return HahnField(rational_subgroup([Fraction(1, 2)]), k, derive_factor_set(RootSection(k, 2, 2)))


@pytest.fixture(scope="session")
def PH2():
    return HahnField(p_hull(2, 8), PerfectHull(2, "y", 4))


@pytest.fixture(scope="session")
def F2y():
    return HahnField(integers(), RationalFunctions(2, "y"))


@pytest.fixture(scope="session")
def F5():
    return HahnField(integers(), PrimeField(5))


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_log.LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
