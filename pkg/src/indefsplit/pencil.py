"""Spectrum of the preconditioned matrix ``M^{-1} A`` and the checks built on it."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densekernel import (
    GeneralSpectrum,
    Inertia,
    as_symmetric,
    general_eigen,
    inertia_from_eigenvalues,
    ldlt_inertia,
    solve_linear,
    spd_sqrt,
)
from .errors import NotPositiveDefiniteError, ParameterError, SingularMatrixError

__all__ = [
    "DEFAULT_REAL_TOL",
    "PencilClassification",
    "LemmaVerdict",
    "SimilarityCheck",
    "preconditioned_matrix",
    "pencil_spectrum",
    "verify_lemma",
    "spd_similarity_check",
    "chebyshev_value",
]

DEFAULT_REAL_TOL = 1e-8
# a real pencil eigenvalue this close to zero means A is singular
_SINGULAR_EIG = 1e-10


@dataclass(frozen=True)
class PencilClassification:
    """Eigenvalues of ``M^{-1} A`` split into negative real, positive real and complex.

    ``complex_pairs`` keeps one representative (im > 0) per conjugate pair.
    """

    spectrum: GeneralSpectrum
    negative_real: np.ndarray
    positive_real: np.ndarray
    complex_pairs: np.ndarray
    real_tol: float

    @property
    def dim(self) -> int:
        return len(self.spectrum)

    @property
    def neg_count(self) -> int:
        return len(self.negative_real)

    @property
    def pos_count(self) -> int:
        return len(self.positive_real)

    @property
    def all_real(self) -> bool:
        return len(self.complex_pairs) == 0


@dataclass(frozen=True)
class LemmaVerdict:
    inertia_a: Inertia
    inertia_m: Inertia
    inertia_differs: bool
    has_negative_real: bool

    @property
    def lemma_consistent(self) -> bool:
        # only "different inertia => negative eigenvalue" is claimed, not the converse
        return (not self.inertia_differs) or self.has_negative_real


@dataclass(frozen=True)
class SimilarityCheck:
    """Result of the SPD-preconditioner similarity / Sylvester check."""

    transformed: np.ndarray
    symmetric: bool
    all_real: bool
    inertia_preserved: bool
    inertia_a: Inertia
    inertia_transformed: Inertia
    real_spectrum_inertia: Inertia
    classification: PencilClassification

    @property
    def ok(self) -> bool:
        return self.symmetric and self.all_real and self.inertia_preserved


def _check_pair(A, M):
    a = as_symmetric(A, "A")
    m = as_symmetric(M, "M")
    if a.shape != m.shape:
        raise ParameterError(f"A is {a.shape[0]}x{a.shape[0]} but M is {m.shape[0]}x{m.shape[0]}")
    return a, m


def preconditioned_matrix(A, M, zero_tol: float | None = None) -> np.ndarray:
    """``M^{-1} A`` formed as ``I + M^{-1} (A - M)`` from the LDL^T factors of M.

    Solving against ``A - M`` keeps columns where A and M agree exactly equal
    to unit vectors and makes the rounding error scale with ``||A - M||``
    rather than ``||A||``, which matters when M is a good preconditioner.
    """
    a, m = _check_pair(A, M)
    _, inertia_m = ldlt_inertia(m, zero_tol)
    if inertia_m.zero:
        raise SingularMatrixError(f"M is singular: inertia {inertia_m}", inertia=inertia_m)
    return np.eye(a.shape[0]) + solve_linear(m, a - m, zero_tol)


def _classify(spectrum: GeneralSpectrum, real_tol: float) -> PencilClassification:
    ev = spectrum.eigenvalues
    real = np.abs(ev.imag) <= real_tol * (1.0 + np.abs(ev))
    re = ev.real[real]
    near_zero = np.abs(re) <= _SINGULAR_EIG
    if near_zero.any():
        raise SingularMatrixError(
            f"A numerically singular: M^-1 A has eigenvalue {re[near_zero][0]:.3e}"
        )
    upper = ev[~real & (ev.imag > 0)]
    lower = ev[~real & (ev.imag < 0)]
    if len(upper) != len(lower):
        raise SingularMatrixError("complex eigenvalues of M^-1 A are not in conjugate pairs")
    return PencilClassification(
        spectrum=spectrum,
        negative_real=np.sort(re[re < 0]),
        positive_real=np.sort(re[re > 0]),
        complex_pairs=upper,
        real_tol=real_tol,
    )


def pencil_spectrum(A, M, real_tol: float = DEFAULT_REAL_TOL,
                    zero_tol: float | None = None) -> PencilClassification:
    """Classify the eigenvalues of ``M^{-1} A`` (equivalently of the pencil ``A - lambda M``).

    An eigenvalue is real when ``|im| <= real_tol * (1 + |lambda|)``.

    Raises
    ------
    SingularMatrixError
        If M is singular (with its inertia attached) or if a real eigenvalue
        is within 1e-10 of zero, which means A is singular.
    """
    g = preconditioned_matrix(A, M, zero_tol)
    return _classify(general_eigen(g, real_tol=real_tol), real_tol)


def verify_lemma(A, M, real_tol: float = DEFAULT_REAL_TOL, classification=None,
                 zero_tol: float | None = None) -> LemmaVerdict:
    """Different inertia of A and M must force a negative real eigenvalue of ``M^{-1} A``."""
    a, m = _check_pair(A, M)
    _, ia = ldlt_inertia(a, zero_tol)
    _, im = ldlt_inertia(m, zero_tol)
    if ia.zero:
        raise SingularMatrixError(f"A is singular: inertia {ia}", inertia=ia)
    if im.zero:
        raise SingularMatrixError(f"M is singular: inertia {im}", inertia=im)
    cls = classification if classification is not None else pencil_spectrum(a, m, real_tol, zero_tol)
    return LemmaVerdict(ia, im, ia != im, cls.neg_count > 0)


def spd_similarity_check(A, M, real_tol: float = DEFAULT_REAL_TOL, sym_tol: float = 1e-9) -> SimilarityCheck:
    """Check the consequences of an SPD preconditioner M.

    ``C = M^{-1/2} A M^{-1/2}`` is similar to ``M^{-1} A`` and congruent to
    A, so the pencil spectrum must be real and carry the inertia of A.
    """
    a, m = _check_pair(A, M)
    _, im = ldlt_inertia(m)
    if im != (m.shape[0], 0, 0):
        raise NotPositiveDefiniteError(f"M is not positive definite: inertia {im}", inertia=im)
    root = spd_sqrt(m)
    # C = S^-1 A S^-1 = S^-1 (S^-1 A)^T since S and A are symmetric
    c = solve_linear(root, solve_linear(root, a).T)
    asym = float(np.max(np.abs(c - c.T)))
    symmetric = asym <= sym_tol * (1.0 + float(np.max(np.abs(c))))
    c_sym = as_symmetric(0.5 * (c + c.T))
    _, ia = ldlt_inertia(a)
    _, ic = ldlt_inertia(c_sym)
    cls = pencil_spectrum(a, m, real_tol)
    real_vals = np.concatenate([cls.negative_real, cls.positive_real])
    return SimilarityCheck(
        transformed=c_sym,
        symmetric=symmetric,
        all_real=cls.all_real,
        inertia_preserved=(ic == ia),
        inertia_a=ia,
        inertia_transformed=ic,
        real_spectrum_inertia=inertia_from_eigenvalues(real_vals, 0.0),
        classification=cls,
    )


def _cheb_ratio(k: int, x: float, x0: float) -> float:
    """``T_k(x) / T_k(x0)`` for ``x0 > 1``, without overflow."""
    beta = math.acosh(x0)
    # log cosh(k b) = k b + log((1 + e^{-2kb}) / 2)
    log_den = k * beta + math.log1p(math.exp(-2.0 * k * beta)) - math.log(2.0)
    if abs(x) <= 1.0:
        return math.cos(k * math.acos(x)) * math.exp(-log_den)
    alpha = math.acosh(abs(x))
    log_num = k * alpha + math.log1p(math.exp(-2.0 * k * alpha)) - math.log(2.0)
    sign = -1.0 if (x < 0 and k % 2) else 1.0
    return sign * math.exp(log_num - log_den)


def chebyshev_value(low: float, high: float, degree: int, lam: float) -> float:
    """Scaled and shifted Chebyshev polynomial on ``[low, high]`` with ``p(0) = 1``.

    ``p_k(lam) = T_k((low + high - 2 lam) / (high - low)) / T_k((low + high) / (high - low))``

    This is the optimal polynomial for eigenvalues in ``[low, high]``;
    for ``lam < 0`` it grows exponentially in ``degree``.
    """
    if not (low > 0 and high > low):
        raise ParameterError(f"need 0 < low < high, got [{low}, {high}]")
    if degree < 1:
        raise ParameterError(f"degree must be >= 1, got {degree}")
    width = high - low
    x0 = (low + high) / width
    x = (low + high - 2.0 * lam) / width
    if x == x0:
        return 1.0
    return _cheb_ratio(int(degree), x, x0)
