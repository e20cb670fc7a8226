"""Test problems: random symmetric matrices, saddle-point systems, preconditioners.

All randomness comes from an explicit integer seed fed to
``numpy.random.default_rng``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .densekernel import (
    Inertia,
    as_dense,
    as_symmetric,
    ldlt_inertia,
    solve_linear,
    sym_eigen,
)
from .errors import GeneratorError, NotPositiveDefiniteError, ParameterError

__all__ = [
    "SaddlePointSystem",
    "paper_example",
    "random_orthogonal",
    "random_sym_with_inertia",
    "random_spd",
    "random_full_rank",
    "random_pencil_pair",
    "saddle_point",
    "constraint_preconditioner",
    "block_diag_preconditioner",
]

_EXAMPLE_A = [
    [0.33, -0.05, -0.29, 0.01, 0.01],
    [-0.05, 0.36, -0.11, -0.22, -0.19],
    [-0.29, -0.11, -0.32, 0.11, -0.01],
    [0.01, -0.22, 0.11, 0.49, -0.12],
    [0.01, -0.19, -0.01, -0.12, 0.18],
]
_EXAMPLE_M = [
    [0.14, 0.10, 0.25, 0.09, -0.28],
    [0.10, -0.07, 0.02, 0.08, -0.11],
    [0.25, 0.02, 0.49, -0.11, -0.23],
    [0.09, 0.08, -0.11, 0.24, -0.34],
    [-0.28, -0.11, -0.23, -0.34, 0.35],
]


def paper_example():
    """The 5x5 pair (A, M) of the eigenvalue-avoidance worked example."""
    return as_symmetric(_EXAMPLE_A), as_symmetric(_EXAMPLE_M)


@dataclass(frozen=True)
class SaddlePointSystem:
    """``[[H, B^T], [B, 0]]`` together with its block-elimination data.

    ``schur`` is ``-B H^{-1} B^T`` and ``congruence_residual`` the max-norm
    error of ``E diag(H, S) E^T`` against ``assembled`` with
    ``E = [[I, 0], [B H^{-1}, I]]``; both are None when H is singular.
    """

    H: np.ndarray
    B: np.ndarray
    assembled: np.ndarray
    inertia: Inertia
    schur: np.ndarray | None = None
    congruence_residual: float | None = None
    inertia_h: Inertia | None = None
    inertia_schur: Inertia | None = None

    @property
    def m(self) -> int:
        return self.H.shape[0]

    @property
    def n(self) -> int:
        return self.B.shape[0]

    @property
    def congruence_ok(self) -> bool | None:
        if self.schur is None:
            return None
        split = Inertia(*(x + y for x, y in zip(self.inertia_h, self.inertia_schur)))
        return split == self.inertia


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Product of ``n`` Householder reflectors built from Gaussian vectors."""
    q = np.eye(n)
    for _ in range(n):
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        q -= 2.0 * np.outer(q @ v, v)
    return q


def random_sym_with_inertia(p: int, n_neg: int, seed: int) -> np.ndarray:
    """Random symmetric ``Q D Q^T`` with inertia ``(p, 0, n_neg)``.

    Positive entries of D are uniform on [0.1, 1], negative ones on
    [-1, -0.1], so the result is comfortably invertible.
    """
    if p < 0 or n_neg < 0 or p + n_neg < 1:
        raise ParameterError(f"need p, n_neg >= 0 and p + n_neg >= 1, got ({p}, {n_neg})")
    rng = np.random.default_rng(seed)
    dim = p + n_neg
    d = np.concatenate([rng.uniform(0.1, 1.0, p), -rng.uniform(0.1, 1.0, n_neg)])
    q = random_orthogonal(dim, rng)
    a = as_symmetric((q * d) @ q.T)
    _, got = ldlt_inertia(a)
    if got != (p, 0, n_neg):
        raise GeneratorError(f"generated matrix has inertia {got}, wanted ({p}, 0, {n_neg})")
    return a


def random_spd(m: int, seed: int) -> np.ndarray:
    return random_sym_with_inertia(m, 0, seed)


def random_full_rank(n: int, m: int, seed: int, min_sv: float = 1e-3, max_tries: int = 100):
    """Gaussian ``n x m`` matrix (n <= m) whose smallest singular value is >= ``min_sv``.

    Rejected draws are replaced by fresh ones from the same stream.
    """
    if n > m:
        raise ParameterError(f"need n <= m for full row rank, got {n} x {m}")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        b = rng.standard_normal((n, m))
        smallest = sym_eigen(b @ b.T).eigenvalues[0]
        if smallest >= min_sv * min_sv:
            return b
    raise GeneratorError(f"no {n}x{m} matrix with singular values >= {min_sv} in {max_tries} draws")


def random_pencil_pair(ratios, signs, seed: int):
    """Pair (A, M) whose pencil eigenvalues (of ``M^{-1} A``) are ``ratios``.

    Both matrices are built by congruence with the same random invertible
    X, ``A = X diag(a) X^T`` and ``M = X diag(m) X^T`` with
    ``a_i / m_i = ratios[i]``; ``signs`` fixes the sign of each ``m_i``.
    """
    ratios = np.asarray(ratios, dtype=float)
    signs = np.asarray(signs, dtype=float)
    if ratios.shape != signs.shape or ratios.ndim != 1 or np.any(ratios == 0):
        raise ParameterError("ratios and signs must be equal-length vectors with nonzero ratios")
    rng = np.random.default_rng(seed)
    dim = len(ratios)
    mdiag = signs * rng.uniform(0.5, 1.0, dim)
    x = random_orthogonal(dim, rng) * rng.uniform(0.5, 1.5, dim)
    x = x @ random_orthogonal(dim, rng)
    a = as_symmetric((x * (ratios * mdiag)) @ x.T)
    m = as_symmetric((x * mdiag) @ x.T)
    return a, m


def _assemble(h, b):
    m = h.shape[0]
    n = b.shape[0]
    k = np.zeros((m + n, m + n))
    k[:m, :m] = h
    k[m:, :m] = b
    k[:m, m:] = b.T
    return k


def saddle_point(H, B) -> SaddlePointSystem:
    """Assemble ``[[H, B^T], [B, 0]]`` and check the block-elimination congruence.

    When H is invertible the Schur complement ``S = -B H^{-1} B^T`` is
    formed and ``inertia(A) = inertia(H) + inertia(S)`` recorded through
    ``congruence_ok``.
    """
    h = as_symmetric(H, "H")
    b = np.atleast_2d(as_dense(B, "B", square=False))
    m = h.shape[0]
    n = b.shape[0]
    if b.shape[1] != m:
        raise ParameterError(f"B must have {m} columns to match H, got shape {b.shape}")
    if n > m:
        raise ParameterError(f"B must have at most {m} rows, got {n}")
    k = _assemble(h, b)
    _, inertia = ldlt_inertia(k)
    _, inertia_h = ldlt_inertia(h)
    if inertia_h.zero:
        return SaddlePointSystem(h, b, k, inertia, inertia_h=inertia_h)
    hinv_bt = solve_linear(h, b.T)
    schur = as_symmetric(-b @ hinv_bt)
    _, inertia_s = ldlt_inertia(schur)
    e = np.eye(m + n)
    e[m:, :m] = hinv_bt.T
    mid = np.zeros_like(k)
    mid[:m, :m] = h
    mid[m:, m:] = schur
    residual = float(np.max(np.abs(e @ mid @ e.T - k)))
    return SaddlePointSystem(h, b, k, inertia, schur, residual, inertia_h, inertia_s)


def constraint_preconditioner(W, B) -> SaddlePointSystem:
    """``[[W, B^T], [B, 0]]``: same constraint block as the saddle-point matrix."""
    return saddle_point(W, B)


def block_diag_preconditioner(H, S_approx) -> np.ndarray:
    """SPD block-diagonal preconditioner ``diag(H, S_approx)``."""
    h = as_symmetric(H, "H")
    s = as_symmetric(S_approx, "S_approx")
    for name, blk in (("H", h), ("S_approx", s)):
        _, inr = ldlt_inertia(blk)
        if inr != (blk.shape[0], 0, 0):
            raise NotPositiveDefiniteError(f"{name} block is not SPD: inertia {inr}", inertia=inr)
    m, n = h.shape[0], s.shape[0]
    out = np.zeros((m + n, m + n))
    out[:m, :m] = h
    out[m:, m:] = s
    return out
