"""Shared fixtures: the worked-example pair and the seeded random pair suites.

The suites are expensive (two homotopy traces per pair), so they are built
once per session and reused by the homotopy, pencil, splitting and
acceptance tests.
"""

from dataclasses import dataclass

import numpy as np
import pytest

from indefsplit.generators import paper_example, random_sym_with_inertia
from indefsplit.homotopy import HomotopyTrajectory, trace
from indefsplit.report import sweep_case
from indefsplit.splitting import SplittingReport, contractivity_report

SUITE_SEED = 90210
SUITE_SIZE = 500
SUITE_DIMS = tuple(range(2, 9))

# criterion number -> (title, passed, detail), filled by test_acceptance
ACCEPTANCE = {}
ACCEPTANCE_TITLES = {
    1: "worked-example golden values",
    2: "different inertia gives a negative real eigenvalue",
    3: "negative/positive real counts and crossings",
    4: "SPD M: real spectrum with the inertia of A",
    5: "saddle-point inertia (m, 0, n)",
    6: "constraint preconditioner: real positive spectrum",
    7: "general_eigen agrees with the charpoly oracle",
    8: "stationary iteration converges/diverges as predicted",
    9: "Chebyshev polynomials exceed 1 on negative values",
    10: "byte-identical JSON across runs",
}


@dataclass(frozen=True)
class PairResult:
    a: np.ndarray
    m: np.ndarray
    report: SplittingReport
    traj_t: HomotopyTrajectory
    traj_s: HomotopyTrajectory


def suite_dim(index):
    return SUITE_DIMS[index % len(SUITE_DIMS)]


def matched_case(dim, index, seed):
    """Pair with equal inertia (p, 0, dim - p) from independent seeds."""
    rng = np.random.default_rng([seed, dim, index, 1])
    p = int(rng.integers(0, dim + 1))
    seed_a, seed_m = (int(x) for x in rng.integers(0, 2**63 - 1, size=2))
    return random_sym_with_inertia(p, dim - p, seed_a), random_sym_with_inertia(p, dim - p, seed_m)


def evaluate(a, m):
    return PairResult(a, m, contractivity_report(a, m), trace(a, m, "T"), trace(a, m, "S"))


@pytest.fixture(scope="session")
def example_pair():
    return paper_example()


@pytest.fixture(scope="session")
def mismatched_suite():
    out = []
    for i in range(SUITE_SIZE):
        a, m, _ = sweep_case(suite_dim(i), i, SUITE_SEED, mismatch_only=True)
        out.append(evaluate(a, m))
    return out


@pytest.fixture(scope="session")
def matched_suite():
    return [evaluate(*matched_case(suite_dim(i), i, SUITE_SEED)) for i in range(SUITE_SIZE)]


@pytest.fixture
def criterion():
    """Record an acceptance verdict; the terminal summary prints one line per criterion."""

    def record(number, passed, detail=""):
        ACCEPTANCE[number] = (ACCEPTANCE_TITLES[number], bool(passed), detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {ACCEPTANCE_TITLES[number]} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_TITLES):
        if number in ACCEPTANCE:
            title, passed, detail = ACCEPTANCE[number]
            verdict = "PASS" if passed else "FAIL"
        else:
            title, verdict, detail = ACCEPTANCE_TITLES[number], "NOT RUN", ""
        terminalreporter.write_line(f"criterion {number:2d}: {verdict:7s} {title}  {detail}".rstrip())
