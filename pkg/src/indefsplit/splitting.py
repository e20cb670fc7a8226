"""Stationary iteration ``M x_{k+1} = N x_k + b`` with ``A = M - N`` and its contractivity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densekernel import Inertia, as_symmetric, ldlt, ldlt_inertia
from .errors import ParameterError, SingularMatrixError
from .homotopy import CountReport, count_report
from .pencil import DEFAULT_REAL_TOL, PencilClassification, pencil_spectrum

__all__ = ["SplittingReport", "IterationTrace", "contractivity_report", "stationary_iterate"]

CONVERGED_RTOL = 1e-12
DIVERGED_RTOL = 1e12


@dataclass(frozen=True)
class SplittingReport:
    inertia_a: Inertia
    inertia_m: Inertia
    r: int
    classification: PencilClassification
    spectral_radius: float
    contractive: bool
    all_eigenvalues_in_b11: bool
    count_report: CountReport


@dataclass(frozen=True)
class IterationTrace:
    residual_norms: np.ndarray
    converged: bool
    diverged: bool
    iterates: np.ndarray | None = None

    @property
    def iterations(self) -> int:
        return len(self.residual_norms) - 1

    def fitted_rate(self, window: int = 10) -> float:
        """Geometric decay/growth factor from a log-linear fit over the last ``window`` steps."""
        res = self.residual_norms[-(window + 1):]
        if len(res) < 3 or np.any(res <= 0):
            raise ParameterError("not enough positive residuals to fit a rate")
        k = np.arange(len(res))
        slope = np.polyfit(k, np.log(res), 1)[0]
        return float(np.exp(slope))


def contractivity_report(A, M, real_tol: float = DEFAULT_REAL_TOL,
                         zero_tol: float | None = None) -> SplittingReport:
    """Spectral radius of ``I - M^{-1} A`` and the resulting contractivity verdict.

    The iteration is contractive iff every eigenvalue of ``M^{-1} A`` lies in
    the open disc of radius 1 centred at 1.
    """
    a = as_symmetric(A, "A")
    m = as_symmetric(M, "M")
    cls = pencil_spectrum(a, m, real_tol, zero_tol)
    counts = count_report(a, m, real_tol, classification=cls, zero_tol=zero_tol)
    _, ia = ldlt_inertia(a, zero_tol)
    _, im = ldlt_inertia(m, zero_tol)
    dist = np.abs(1.0 - cls.spectrum.eigenvalues)
    rho = float(np.max(dist))
    return SplittingReport(
        inertia_a=ia,
        inertia_m=im,
        r=counts.r,
        classification=cls,
        spectral_radius=rho,
        contractive=rho < 1.0,
        all_eigenvalues_in_b11=bool(np.all(dist < 1.0)),
        count_report=counts,
    )


def stationary_iterate(A, M, b, x0=None, max_iter: int = 50, keep_iterates: bool = False) -> IterationTrace:
    """Run ``x_{k+1} = x_k + M^{-1}(b - A x_k)``, the residual-correction form of the splitting.

    Stops early once ``||b - A x_k||_inf`` drops below ``1e-12 (1 + ||b||_inf)``
    or exceeds ``1e12 (1 + ||b||_inf)``.
    """
    if max_iter < 1:
        raise ParameterError(f"max_iter must be >= 1, got {max_iter}")
    a = as_symmetric(A, "A")
    m = as_symmetric(M, "M")
    factors = ldlt(m)
    pivot = factors.zero_pivot()
    if pivot is not None:
        raise SingularMatrixError(
            f"M is singular: inertia {factors.inertia()}", inertia=factors.inertia(), pivot=pivot
        )
    rhs = np.asarray(b, dtype=float)
    x = np.zeros_like(rhs) if x0 is None else np.array(x0, dtype=float)
    scale = 1.0 + float(np.max(np.abs(rhs)))
    residual = rhs - a @ x
    norms = [float(np.max(np.abs(residual)))]
    iterates = [x.copy()] if keep_iterates else None
    converged = norms[0] < CONVERGED_RTOL * scale
    diverged = False
    k = 0
    while not converged and k < max_iter:
        x = x + factors.solve(residual)
        residual = rhs - a @ x
        norms.append(float(np.max(np.abs(residual))))
        if keep_iterates:
            iterates.append(x.copy())
        k += 1
        if norms[-1] < CONVERGED_RTOL * scale:
            converged = True
        elif not norms[-1] <= DIVERGED_RTOL * scale:
            diverged = True
            break
    return IterationTrace(
        np.array(norms), converged, diverged, np.array(iterates) if keep_iterates else None
    )
