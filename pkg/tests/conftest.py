import pytest

from goldcode.field import field_new

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def f8():
    return field_new(3, 0b1011)


@pytest.fixture(scope="session")
def f32():
    return field_new(5)


@pytest.fixture(scope="session")
def f512():
    return field_new(9)


def naive_mul(a: int, b: int, poly: int) -> int:
    """Schoolbook carry-less product followed by long division."""
    m = poly.bit_length() - 1
    prod = 0
    for i in range(b.bit_length()):
        if (b >> i) & 1:
            prod ^= a << i
    for deg in range(prod.bit_length() - 1, m - 1, -1):
        if (prod >> deg) & 1:
            prod ^= poly << (deg - m)
    return prod


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
