import pytest

from grasscycle.field import make_field

POLY_25 = [1, 0, 1, 0, 0, 1]        # x^5 + x^2 + 1
POLY_35 = [1, 2, 0, 0, 0, 1]        # 1 + 2x + x^5
POLY_27 = [1, 1, 0, 0, 0, 0, 0, 1]  # x^7 + x + 1

REMARK_35 = (1, 54, 82, 18, 2, 3, 9, 162, 6, 27)


@pytest.fixture(scope="session")
def f25():
    return make_field(2, 5, POLY_25)


@pytest.fixture(scope="session")
def f35():
    return make_field(3, 5, POLY_35)


@pytest.fixture(scope="session")
def f27():
    return make_field(2, 7, POLY_27)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
