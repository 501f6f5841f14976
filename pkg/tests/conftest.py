import pytest

from skewbrace import enumeration as en

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def representatives():
    """One skew brace per isomorphism class, orders 1..8."""
    return en.all_braces_up_to(8)


@pytest.fixture(scope="session")
def labelled_population():
    """Every labelled skew brace on every group of order 1..8."""
    out = []
    for n in range(1, 9):
        for G in en.all_groups_of_order(n):
            out.extend(en.enumerate_gammas(G))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
