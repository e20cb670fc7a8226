"""Eigenvalue curves of the symmetric homotopies between A and +-M.

Two families are traced over ``theta`` in [0, 1]:

* kind ``"T"``: ``T(theta) = (1 - theta) A + theta M``
* kind ``"S"``: ``S(theta) = (1 - theta) A - theta M``

``T(theta)`` is singular exactly when ``theta / (theta - 1)`` is an
eigenvalue of ``M^{-1} A`` (always negative), and ``S(theta)`` exactly when
``theta / (1 - theta)`` is (always positive). Crossings are found from jumps
in the negative-eigenvalue count on a uniform grid and refined by bisection
on that count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densekernel import (
    as_symmetric,
    default_zero_tol,
    ldlt_inertia,
    sym_eigvals_batch,
    sym_neg_count,
)
from .errors import ParameterError, SingularMatrixError
from .pencil import DEFAULT_REAL_TOL, PencilClassification, pencil_spectrum

__all__ = [
    "Crossing",
    "HomotopyTrajectory",
    "CountReport",
    "homotopy_matrix",
    "trace",
    "crossing_eigenvalue",
    "count_report",
]

KINDS = ("T", "S")
MIN_STEPS = 16
DEFAULT_STEPS = 512
BRACKET_TOL = 1e-10
# extra bisection on the implied pencil eigenvalue, which is stiff near theta = 1
IMPLIED_TOL = 1e-9


@dataclass(frozen=True)
class Crossing:
    theta_hat: float
    bracket_width: float
    implied_pencil_eigenvalue: float
    direction: int  # +1 if the negative count grows through theta_hat, -1 if it drops


@dataclass(frozen=True)
class HomotopyTrajectory:
    kind: str
    theta_grid: np.ndarray
    curves: np.ndarray  # (K + 1, n), ascending per row
    crossings: tuple
    neg_counts: np.ndarray  # negative-eigenvalue count at each grid point
    refined: bool = False

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def theta_hats(self) -> np.ndarray:
        return np.array([c.theta_hat for c in self.crossings])

    @property
    def implied_eigenvalues(self) -> np.ndarray:
        return np.array([c.implied_pencil_eigenvalue for c in self.crossings])


@dataclass(frozen=True)
class CountReport:
    """Negative/positive real eigenvalue counts against the avoidance-of-crossing bounds.

    ``s`` and ``t`` are None when the count identities have no non-negative
    integer solution.
    """

    p: int
    n: int
    r: int
    neg_real_count: int
    pos_real_count: int
    s: int | None
    t: int | None
    s_max: int
    t_max: int
    proposition_holds: bool
    corollary_holds: bool


def _check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise ParameterError(f"kind must be 'T' or 'S', got {kind!r}")
    return kind


def homotopy_matrix(A, M, theta: float, kind: str = "T") -> np.ndarray:
    sign = 1.0 if _check_kind(kind) == "T" else -1.0
    return (1.0 - theta) * np.asarray(A, dtype=float) + theta * sign * np.asarray(M, dtype=float)


def crossing_eigenvalue(theta_hat: float, kind: str = "T") -> float:
    """Pencil eigenvalue implied by a singular homotopy matrix at ``theta_hat``.

    ``theta / (theta - 1)`` for kind T, ``theta / (1 - theta)`` for kind S.
    """
    _check_kind(kind)
    if not 0.0 < theta_hat < 1.0:
        raise ParameterError(f"theta_hat must lie in (0, 1), got {theta_hat}")
    if kind == "T":
        return theta_hat / (theta_hat - 1.0)
    return theta_hat / (1.0 - theta_hat)


def _neg_count(a, m, theta, kind, zero_tol):
    # a and m are exactly symmetric, so the combination is too
    return sym_neg_count(homotopy_matrix(a, m, theta, kind), zero_tol)


def _implied(theta, kind):
    if theta <= 0.0 or theta >= 1.0:
        return np.inf
    return crossing_eigenvalue(theta, kind)


def _isolate(a, m, kind, lo, hi, zero_tol):
    """Bisection on the negative count inside one grid interval.

    Halves every sub-interval whose end counts differ, so two crossings that
    share a grid cell are still separated. Returns (theta_hat, width, jump)
    triples.
    """
    c_lo = _neg_count(a, m, lo, kind, zero_tol)
    c_hi = _neg_count(a, m, hi, kind, zero_tol)
    found = []
    stack = [(lo, hi, c_lo, c_hi)]
    while stack:
        lo, hi, c_lo, c_hi = stack.pop()
        if c_lo == c_hi:
            continue
        mid = 0.5 * (lo + hi)
        narrow = hi - lo <= BRACKET_TOL and abs(_implied(hi, kind) - _implied(lo, kind)) <= IMPLIED_TOL
        if narrow or mid <= lo or mid >= hi:
            found.append((mid, hi - lo, c_hi - c_lo))
            continue
        c_mid = _neg_count(a, m, mid, kind, zero_tol)
        # push the right half first so crossings come out in increasing theta
        stack.append((mid, hi, c_mid, c_hi))
        stack.append((lo, mid, c_lo, c_mid))
    return found


def trace(A, M, kind: str = "T", steps: int = DEFAULT_STEPS, zero_tol: float | None = None,
          refine: bool = True) -> HomotopyTrajectory:
    """Sample the eigenvalue curves of the kind-T or kind-S homotopy and locate its crossings.

    Parameters
    ----------
    A, M : array_like
        Symmetric invertible matrices of equal dimension.
    kind : {"T", "S"}
    steps : int
        Number of uniform grid intervals (>= 16).
    zero_tol : float, optional
        Zero threshold for the negative counts; defaults to
        ``1e-12 * dim * max(|A|, |M|)``.
    refine : bool
        Split any grid interval whose count jumps by more than one at its
        midpoint before bisecting. Curves stay on the uniform grid.

    Each unit of count change between the ends of a final bisection bracket
    (width <= 1e-10) yields one crossing at the bracket midpoint.
    """
    _check_kind(kind)
    if steps < MIN_STEPS:
        raise ParameterError(f"steps must be >= {MIN_STEPS}, got {steps}")
    a = as_symmetric(A, "A")
    m = as_symmetric(M, "M")
    if a.shape != m.shape:
        raise ParameterError(f"A is {a.shape[0]}x{a.shape[0]} but M is {m.shape[0]}x{m.shape[0]}")
    for name, mat in (("A", a), ("M", m)):
        _, inr = ldlt_inertia(mat, zero_tol)
        if inr.zero:
            raise SingularMatrixError(f"{name} is singular: inertia {inr}", inertia=inr)
    tol = max(default_zero_tol(a), default_zero_tol(m)) if zero_tol is None else zero_tol
    sign = 1.0 if kind == "T" else -1.0

    grid = np.linspace(0.0, 1.0, steps + 1)
    stack = (1.0 - grid)[:, None, None] * a + (sign * grid)[:, None, None] * m
    curves = sym_eigvals_batch(stack)
    counts = np.count_nonzero(curves < -tol, axis=1)

    edges = list(zip(grid[:-1], grid[1:], counts[:-1], counts[1:]))
    refined = False
    if refine and any(abs(int(c1) - int(c0)) > 1 for _, _, c0, c1 in edges):
        refined = True
        jumpy = [e for e in edges if abs(int(e[3]) - int(e[2])) > 1]
        mids = np.array([0.5 * (lo + hi) for lo, hi, _, _ in jumpy])
        mid_stack = (1.0 - mids)[:, None, None] * a + (sign * mids)[:, None, None] * m
        mid_counts = np.count_nonzero(sym_eigvals_batch(mid_stack) < -tol, axis=1)
        split = {}
        for (lo, hi, c0, c1), mid, cm in zip(jumpy, mids, mid_counts):
            split[lo] = [(lo, mid, c0, cm), (mid, hi, cm, c1)]
        edges = [piece for e in edges for piece in split.get(e[0], [e])]

    crossings = []
    for lo, hi, c0, c1 in edges:
        if c0 == c1:
            continue
        for theta_hat, width, jump in _isolate(a, m, kind, lo, hi, tol):
            implied = crossing_eigenvalue(theta_hat, kind)
            step = 1 if jump > 0 else -1
            crossings.extend(Crossing(theta_hat, width, implied, step) for _ in range(abs(jump)))
    return HomotopyTrajectory(kind, grid, curves, tuple(crossings), counts, refined)


def _proposition_bound(p, n, r):
    return (p + n - r) // 2


def _corollary_bound(p, n, r):
    return min((2 * p + r) // 2, (2 * n - r) // 2)


def count_report(A, M, real_tol: float = DEFAULT_REAL_TOL,
                 classification: PencilClassification | None = None,
                 zero_tol: float | None = None) -> CountReport:
    """Counts of real eigenvalues of ``M^{-1} A`` against the crossing-count formulas.

    With A of inertia ``(p, 0, n)`` and M of inertia ``(p + r, 0, n - r)``
    the negative real count must be ``|r| + 2 s`` with
    ``0 <= s <= (p + n - r) // 2``, and the positive real count
    ``|p + r - n| + 2 t`` with ``0 <= t <= min((2p + r) // 2, (2n - r) // 2)``.
    """
    a = as_symmetric(A, "A")
    m = as_symmetric(M, "M")
    _, ia = ldlt_inertia(a, zero_tol)
    _, im = ldlt_inertia(m, zero_tol)
    for name, inr in (("A", ia), ("M", im)):
        if inr.zero:
            raise SingularMatrixError(f"{name} is singular: inertia {inr}", inertia=inr)
    cls = classification if classification is not None else pencil_spectrum(a, m, real_tol, zero_tol)
    p, n = ia.pos, ia.neg
    r = im.pos - p
    neg, pos = cls.neg_count, cls.pos_count
    s_max = _proposition_bound(p, n, r)
    t_max = _corollary_bound(p, n, r)

    s = _half_excess(neg, abs(r))
    t = _half_excess(pos, abs(p + r - n))
    prop = s is not None and s <= s_max and neg + pos <= p + n
    cor = t is not None and t <= t_max and neg + pos <= p + n
    return CountReport(p, n, r, neg, pos, s, t, s_max, t_max, prop, cor)


def _half_excess(count: int, minimum: int):
    excess = count - minimum
    if excess < 0 or excess % 2:
        return None
    return excess // 2
