import pytest

from splinelab import builders
from splinelab.complexes import PlanarComplex, SmoothnessAssignment, cone, star_problem


def two_triangle_fan():
    return PlanarComplex([(0, 0), (2, 0), (0, 2), (2, 2)], [(0, 1, 3), (0, 3, 2)])


def three_triangle_fan():
    return PlanarComplex([(0, 0), (3, 0), (2, 2), (0, 3), (-2, 2)], [(0, 1, 2), (0, 2, 3), (0, 3, 4)])


def single_triangle():
    return PlanarComplex([(0, 0), (1, 0), (0, 1)], [(0, 1, 2)])


@pytest.fixture(scope="session")
def delta_problem():
    cx, alpha = builders.build_delta_example()
    return cone(cx, alpha, "delta")


@pytest.fixture(scope="session")
def q_problems():
    cx = builders.build_q_example()
    return {r: cone(cx, SmoothnessAssignment(r), f"q{r}") for r in range(4)}


@pytest.fixture(scope="session")
def octahedron_problems():
    st = builders.build_octahedron()
    return {r: star_problem(st, SmoothnessAssignment(r), f"oct{r}") for r in range(3)}


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance(capsys):
    """Record and immediately print one PASS/FAIL line for a criterion."""

    def report(number, ok, detail):
        line = f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
