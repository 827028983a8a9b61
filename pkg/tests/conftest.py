"""Shared fixtures and the acceptance reporting hook."""

import pytest

_acceptance_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _acceptance_results.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, status in _acceptance_results:
        terminalreporter.write_line(f"  {status}  {name}")


@pytest.fixture(scope="session")
def unit_square_quad():
    from qmod.geometry import quad_from_points

    return quad_from_points(1 + 1j, 1j, 0j, 1 + 0j)


@pytest.fixture(scope="session")
def rectangle_quad():
    """1 x 2 rectangle with modulus 2."""
    from qmod.geometry import quad_from_points

    return quad_from_points(1 + 2j, 2j, 0j, 1 + 0j)


@pytest.fixture(scope="session")
def square_ring():
    """Concentric squares, sides 4 and 1."""
    from qmod.geometry import RingCondenser, validate_polygon

    outer = validate_polygon([(-2, -2), (2, -2), (2, 2), (-2, 2)])
    inner = validate_polygon([(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)])
    return RingCondenser(outer, inner)
