import cmath
import math

import pytest

from splitroots.poly import IntPolynomial
from splitroots.relations import RelationBasis

ZETA7 = cmath.exp(2j * math.pi / 7)
# a root of x^6 + 3
ZETA_SIX = 3 ** (1 / 6) * cmath.exp(1j * math.pi / 6)


def poly_in(z, coeffs):
    """sum coeffs[k] * z^k for a low-first coefficient list."""
    return sum(c * z ** k for k, c in enumerate(coeffs))


def basis(n, *rows):
    return RelationBasis(n, tuple(tuple(r) for r in rows))


@pytest.fixture(scope="session")
def sextic():
    return IntPolynomial.parse("x^6+14*x^4+49*x^2+7")


@pytest.fixture(scope="session")
def sextic_basis():
    """Relation rows for x^6+14x^4+49x^2+7 in the cyclotomic root numbering."""
    return basis(6, (1, 0, 0, 1, 0, 0, 0), (0, 1, 0, 0, 1, 0, 0), (0, 0, 1, 0, 0, 1, 0),
                 (1, 0, 1, 0, 1, 0, 0))


@pytest.fixture(scope="session")
def two_quadratics_basis():
    return basis(4, (1, 0, 0, 1, -2), (0, 1, 1, 0, -1))


@pytest.fixture(scope="session")
def shifted_sqrt2_basis():
    return basis(4, (1, 0, 0, 1, 1), (1, -1, 0, 0, -1), (1, 0, 1, 0, 0))


@pytest.fixture(scope="session")
def octic_basis():
    from splitroots import golden

    return RelationBasis(8, golden.OCTIC_ROWS)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "VERDICTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
