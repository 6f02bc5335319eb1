import pytest

from hasseforge.algcore import Cocycle, KummerExtension, make_crossed_product
from hasseforge.deltaalg import crossed_product_derivation
from hasseforge.exactfield import GF, function_field
from hasseforge.itderiv import extend_to_kummer, hasse_table


@pytest.fixture(scope="session")
def F5():
    return function_field(GF(5))


@pytest.fixture(scope="session")
def hasse24(F5):
    return hasse_table(F5, 24)


@pytest.fixture(scope="session")
def quaternion(F5, hasse24):
    """The quaternion model over F_5(t): K = F_5(s), s^2 = t, u^2 = 2, derivation to order 24."""
    kum = KummerExtension(F5, 2)
    B = make_crossed_product(kum, Cocycle.cyclic(kum, 2))
    D_K = extend_to_kummer(hasse24, kum)
    DB = crossed_product_derivation(B, D_K, 24, hasse24)
    return kum, B, D_K, DB


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
