"""Dense linear algebra kernels.

Everything here works on small dense numpy arrays (desk scale, dim up to a
few hundred) and favours accuracy and predictability over speed:

* ``sym_eigen``       cyclic Jacobi rotations for symmetric matrices
* ``ldlt_inertia``    Bunch-Kaufman symmetric indefinite LDL^T and inertia
* ``general_eigen``   Householder-Hessenberg reduction + Francis double-shift QR
* ``charpoly_eigen_oracle``  Faddeev-LeVerrier + Durand-Kerner, test oracle only
* ``solve_linear``    LDL^T solve for symmetric input, partial pivoting otherwise
* ``spd_sqrt``        principal square root of an SPD matrix

Symmetric matrices are plain 2-D float arrays; ``as_symmetric`` treats the
lower triangle as authoritative and mirrors it into the upper one.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    ConvergenceError,
    NotPositiveDefiniteError,
    ParameterError,
    SingularMatrixError,
)

__all__ = [
    "Inertia",
    "SymEigenDecomposition",
    "LdltFactorization",
    "GeneralSpectrum",
    "as_symmetric",
    "as_dense",
    "default_zero_tol",
    "matrix_hash",
    "sym_eigen",
    "sym_eigvals_batch",
    "ldlt",
    "ldlt_inertia",
    "sym_neg_count",
    "inertia_from_eigenvalues",
    "general_eigen",
    "charpoly_eigen_oracle",
    "sort_spectrum",
    "solve_linear",
    "spd_sqrt",
]

_EPS = np.finfo(float).eps
# Bunch-Kaufman pivot threshold, (1 + sqrt(17)) / 8.
_BK_ALPHA = (1.0 + math.sqrt(17.0)) / 8.0


class Inertia(NamedTuple):
    """Counts of positive, zero and negative eigenvalues."""

    pos: int
    zero: int
    neg: int

    @property
    def dim(self) -> int:
        return self.pos + self.zero + self.neg

    def as_dict(self) -> dict:
        return {"p": self.pos, "z": self.zero, "n": self.neg}

    def __str__(self) -> str:
        return f"({self.pos}, {self.zero}, {self.neg})"


@dataclass(frozen=True)
class SymEigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0


@dataclass(frozen=True)
class LdltFactorization:
    """``P A P^T = L D L^T`` with D block diagonal (1x1 and 2x2 blocks).

    ``permutation[i]`` is the row of A that ends up in row i of ``P A P^T``.
    ``blocks`` lists ``(start, size)`` for each diagonal block of D and
    ``block_values`` holds the matching 1x1 or 2x2 arrays.
    """

    permutation: np.ndarray
    lower: np.ndarray
    blocks: tuple
    block_values: tuple
    zero_tol: float

    @property
    def dim(self) -> int:
        return len(self.permutation)

    def block_eigenvalues(self) -> np.ndarray:
        vals = []
        for d in self.block_values:
            if d.shape == (1, 1):
                vals.append(d[0, 0])
            else:
                vals.extend(_eig2x2_sym(d[0, 0], d[1, 0], d[1, 1]))
        return np.asarray(vals, dtype=float)

    def inertia(self) -> Inertia:
        return inertia_from_eigenvalues(self.block_eigenvalues(), self.zero_tol)

    def zero_pivot(self):
        """Index (in permuted order) of the first negligible pivot, or None."""
        for (start, size), d in zip(self.blocks, self.block_values):
            if size == 1:
                if abs(d[0, 0]) <= self.zero_tol:
                    return start
            else:
                lo, hi = _eig2x2_sym(d[0, 0], d[1, 0], d[1, 1])
                if min(abs(lo), abs(hi)) <= self.zero_tol:
                    return start
        return None

    def solve(self, rhs) -> np.ndarray:
        """Solve ``A x = rhs`` for one or several right-hand sides."""
        pivot = self.zero_pivot()
        if pivot is not None:
            raise SingularMatrixError(
                f"matrix is singular within tolerance {self.zero_tol:.3g} "
                f"(negligible pivot at permuted index {pivot})",
                inertia=self.inertia(),
                pivot=pivot,
            )
        b = np.array(rhs, dtype=float)
        vector = b.ndim == 1
        if vector:
            b = b[:, None]
        n = self.dim
        L = self.lower
        y = b[self.permutation]
        for i in range(n):
            y[i] -= L[i, :i] @ y[:i]
        for (start, size), d in zip(self.blocks, self.block_values):
            sl = slice(start, start + size)
            if size == 1:
                y[sl] /= d[0, 0]
            else:
                y[sl] = _solve2x2(d, y[sl])
        for i in range(n - 1, -1, -1):
            y[i] -= L[i + 1:, i] @ y[i + 1:]
        x = np.empty_like(y)
        x[self.permutation] = y
        return x[:, 0] if vector else x


@dataclass(frozen=True)
class GeneralSpectrum:
    """Eigenvalues of a real square matrix, sorted by (re, im)."""

    eigenvalues: np.ndarray
    real_tol: float = 1e-8
    iterations: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def real_mask(self, real_tol=None) -> np.ndarray:
        tol = self.real_tol if real_tol is None else real_tol
        ev = self.eigenvalues
        return np.abs(ev.imag) <= tol * (1.0 + np.abs(ev))


# ---------------------------------------------------------------------------
# input handling


def as_symmetric(a, name: str = "matrix") -> np.ndarray:
    """Return a float copy of ``a`` with the upper triangle mirrored from the lower."""
    arr = np.array(a, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ParameterError(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} has non-finite entries")
    low = np.tril(arr)
    return low + np.tril(arr, -1).T


def as_dense(g, name: str = "matrix", square: bool = True) -> np.ndarray:
    arr = np.array(g, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise ParameterError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise ParameterError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} has non-finite entries")
    return arr


def default_zero_tol(a: np.ndarray) -> float:
    """``1e-12 * dim * max|a_ij|``: the zero threshold used for inertia."""
    if a.size == 0:
        return 0.0
    return 1e-12 * a.shape[0] * float(np.max(np.abs(a)))


def matrix_hash(a: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(a, dtype=float).tobytes()).hexdigest()[:16]


def inertia_from_eigenvalues(values, zero_tol: float) -> Inertia:
    v = np.asarray(values, dtype=float)
    neg = int(np.count_nonzero(v < -zero_tol))
    pos = int(np.count_nonzero(v > zero_tol))
    return Inertia(pos, v.size - pos - neg, neg)


# ---------------------------------------------------------------------------
# symmetric eigenproblem: cyclic Jacobi


def _jacobi(stack: np.ndarray, want_vectors: bool, max_sweeps: int):
    """Cyclic Jacobi on a stack of symmetric matrices of shape (B, n, n).

    Every rotation (p, q) is applied to the whole stack at once; matrices
    that have already converged just see identity rotations.
    """
    a = np.array(stack, dtype=float)
    bsz, n, _ = a.shape
    v = np.tile(np.eye(n), (bsz, 1, 1)) if want_vectors else None
    if n == 1:
        return a[:, 0, :].copy(), v, 0
    iu, ju = np.triu_indices(n, 1)
    scale = np.sqrt(np.sum(a * a, axis=(1, 2)))
    target = n * _EPS * scale
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(2.0 * np.sum(a[:, iu, ju] ** 2, axis=1))
        if np.all(off <= target):
            return np.diagonal(a, axis1=1, axis2=2).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                active = apq != 0.0
                if not active.any():
                    continue
                with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                    theta = (a[:, q, q] - a[:, p, p]) / (2.0 * apq)
                    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cc = c[:, None]
                sc = s[:, None]
                rp = a[:, p, :].copy()
                rq = a[:, q, :].copy()
                a[:, p, :] = cc * rp - sc * rq
                a[:, q, :] = sc * rp + cc * rq
                cp = a[:, :, p].copy()
                cq = a[:, :, q].copy()
                a[:, :, p] = cc * cp - sc * cq
                a[:, :, q] = sc * cp + cc * cq
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
                if v is not None:
                    vp = v[:, :, p].copy()
                    vq = v[:, :, q].copy()
                    v[:, :, p] = cc * vp - sc * vq
                    v[:, :, q] = sc * vp + cc * vq
    worst = int(np.argmax(off / np.where(scale > 0, scale, 1.0)))
    raise ConvergenceError(
        f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
        f"(dim {n}, matrix hash {matrix_hash(stack[worst])})"
    )


def sym_eigen(a, max_sweeps: int | None = None) -> SymEigenDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.

    Parameters
    ----------
    a : array_like, shape (n, n)
        Symmetric matrix; only the lower triangle is read.
    max_sweeps : int, optional
        Sweep cap, defaults to ``100 * n``.

    Raises
    ------
    ConvergenceError
        If the off-diagonal mass has not vanished after ``max_sweeps`` sweeps.
    """
    s = as_symmetric(a)
    n = s.shape[0]
    cap = 100 * n if max_sweeps is None else max_sweeps
    lam, vec, sweeps = _jacobi(s[None], True, cap)
    lam = lam[0]
    order = np.argsort(lam, kind="stable")
    return SymEigenDecomposition(lam[order], vec[0][:, order], sweeps)


def sym_eigvals_batch(stack, max_sweeps: int | None = None) -> np.ndarray:
    """Ascending eigenvalues for every matrix in a (B, n, n) stack of symmetric matrices."""
    arr = np.asarray(stack, dtype=float)
    n = arr.shape[-1]
    cap = 100 * n if max_sweeps is None else max_sweeps
    lam, _, _ = _jacobi(arr, False, cap)
    return np.sort(lam, axis=1)


# ---------------------------------------------------------------------------
# symmetric indefinite factorization


def _eig2x2_sym(a, b, d):
    """Eigenvalues (ascending) of [[a, b], [b, d]]."""
    mean = 0.5 * (a + d)
    rad = math.hypot(0.5 * (a - d), b)
    hi = mean + rad if mean >= 0 else mean - rad
    if hi == 0.0:
        return 0.0, 0.0
    # product of eigenvalues is the determinant; avoids cancellation in the small one
    other = (a * d - b * b) / hi
    return (other, hi) if other <= hi else (hi, other)


def _solve2x2(d, rhs):
    a, b, c = d[0, 0], d[1, 0], d[1, 1]
    det = a * c - b * b
    return np.array([(c * rhs[0] - b * rhs[1]) / det, (a * rhs[1] - b * rhs[0]) / det])


def ldlt(a, zero_tol: float | None = None) -> LdltFactorization:
    """Bunch-Kaufman factorization ``P A P^T = L D L^T`` of a symmetric matrix.

    Never fails: a trailing column whose entries are all within ``zero_tol``
    becomes a zero 1x1 pivot and is skipped.
    """
    work = as_symmetric(a)
    tol = default_zero_tol(work) if zero_tol is None else float(zero_tol)
    if tol < 0:
        raise ParameterError("zero_tol must be non-negative")
    return _bunch_kaufman(work, tol)


def _bunch_kaufman(work: np.ndarray, tol: float) -> LdltFactorization:
    """Factor ``work`` in place; it must already be an exactly symmetric float array."""
    n = work.shape[0]
    L = np.eye(n)
    perm = np.arange(n)
    blocks = []
    values = []
    k = 0
    while k < n:
        akk = abs(work[k, k])
        if k + 1 < n:
            col = np.abs(work[k + 1:, k])
            imax = k + 1 + int(np.argmax(col))
            colmax = float(col[imax - k - 1])
        else:
            imax, colmax = k, 0.0
        if max(akk, colmax) <= tol:
            blocks.append((k, 1))
            values.append(work[k:k + 1, k:k + 1].copy())
            k += 1
            continue
        step, kp = 1, k
        if akk < _BK_ALPHA * colmax:
            row = np.abs(work[imax, k:])
            row[imax - k] = 0.0
            rowmax = float(np.max(row))
            if akk * rowmax >= _BK_ALPHA * colmax * colmax:
                pass
            elif abs(work[imax, imax]) >= _BK_ALPHA * rowmax:
                kp = imax
            else:
                kp, step = imax, 2
        kk = k + step - 1
        if kp != kk:
            work[[kk, kp], :] = work[[kp, kk], :]
            work[:, [kk, kp]] = work[:, [kp, kk]]
            L[[kk, kp], :k] = L[[kp, kk], :k]
            perm[[kk, kp]] = perm[[kp, kk]]
        if step == 1:
            d = work[k, k]
            l = work[k + 1:, k] / d
            work[k + 1:, k + 1:] -= np.outer(l, work[k + 1:, k])
            L[k + 1:, k] = l
        else:
            D = work[k:k + 2, k:k + 2].copy()
            W = work[k + 2:, k:k + 2]
            det = D[0, 0] * D[1, 1] - D[1, 0] * D[1, 0]
            Dinv = np.array([[D[1, 1], -D[1, 0]], [-D[1, 0], D[0, 0]]]) / det
            Lb = W @ Dinv
            work[k + 2:, k + 2:] -= Lb @ W.T
            L[k + 2:, k:k + 2] = Lb
        blocks.append((k, step))
        values.append(work[k:k + step, k:k + step].copy())
        work[k + step:, k:k + step] = 0.0
        work[k:k + step, k + step:] = 0.0
        k += step
    return LdltFactorization(perm, L, tuple(blocks), tuple(values), tol)


def ldlt_inertia(a, zero_tol: float | None = None):
    """Return ``(factorization, inertia)`` for a symmetric matrix.

    The inertia counts the signs of the 1x1 pivots and of the two eigenvalues
    of each 2x2 pivot; anything within ``zero_tol`` counts as zero
    (default ``1e-12 * dim * max|a_ij|``).
    """
    f = ldlt(a, zero_tol)
    return f, f.inertia()


def sym_neg_count(a: np.ndarray, zero_tol: float) -> int:
    """Negative-eigenvalue count of an exactly symmetric array, skipping input validation."""
    return _bunch_kaufman(np.array(a, dtype=float), zero_tol).inertia().neg


# ---------------------------------------------------------------------------
# nonsymmetric eigenproblem


def _hessenberg(a: np.ndarray) -> np.ndarray:
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            continue
        alpha = -math.copysign(norm, x[0])
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v)
        h[k + 1, k] = alpha
        h[k + 2:, k] = 0.0
    return h


def _balance(a: np.ndarray):
    """Permute and scale ``a`` by a similarity (EISPACK balanc).

    Rows and columns that isolate an eigenvalue are moved to the bottom and
    top, so the result is block upper triangular with the active block
    ``[lo, hi]`` in the middle; that block is then scaled by powers of 2 to
    equalise row and column norms. Returns ``(b, lo, hi)``.
    """
    b = a.copy()
    n = b.shape[0]
    lo, hi = 0, n - 1

    def swap(i, j):
        if i != j:
            b[[i, j], :] = b[[j, i], :]
            b[:, [i, j]] = b[:, [j, i]]

    # rows that are zero off the diagonal go to the bottom
    found = True
    while found and hi > 0:
        found = False
        for j in range(hi, -1, -1):
            row = b[j, :hi + 1]
            if np.count_nonzero(row) - (row[j] != 0) == 0:
                swap(j, hi)
                hi -= 1
                found = True
                break
    # columns that are zero off the diagonal go to the top
    found = True
    while found and lo < hi:
        found = False
        for j in range(lo, hi + 1):
            col = b[lo:hi + 1, j]
            if np.count_nonzero(col) - (col[j - lo] != 0) == 0:
                swap(j, lo)
                lo += 1
                found = True
                break

    done = False
    while not done:
        done = True
        for i in range(lo, hi + 1):
            col = np.abs(b[lo:hi + 1, i])
            row = np.abs(b[i, lo:hi + 1])
            col[i - lo] = row[i - lo] = 0.0
            c = float(np.sum(col))
            r = float(np.sum(row))
            if c == 0.0 or r == 0.0:
                continue
            s = c + r
            f = 1.0
            g = r / 2.0
            while c < g:
                f *= 2.0
                c *= 4.0
            g = r * 2.0
            while c >= g:
                f /= 2.0
                c /= 4.0
            if (c + r) / f < 0.95 * s:
                done = False
                b[i, :] /= f
                b[:, i] *= f
    return b, lo, hi


def _hqr(h: np.ndarray, max_its: int):
    """Francis double-shift QR on an upper Hessenberg matrix (EISPACK hqr).

    Works with 1-based indices on a padded list so the classic recurrences
    read as written. Returns real and imaginary parts plus the total number
    of QR sweeps.
    """
    n = h.shape[0]
    a = [[0.0] * (n + 1)] + [[0.0] + row for row in h.tolist()]
    wr = [0.0] * (n + 1)
    wi = [0.0] * (n + 1)
    anorm = 0.0
    for i in range(1, n + 1):
        for j in range(max(i - 1, 1), n + 1):
            anorm += abs(a[i][j])
    nn = n
    t = 0.0
    total = 0
    while nn >= 1:
        its = 0
        while True:
            l = 1
            for ll in range(nn, 1, -1):
                s = abs(a[ll - 1][ll - 1]) + abs(a[ll][ll])
                if s == 0.0:
                    s = anorm
                if abs(a[ll][ll - 1]) + s == s:
                    a[ll][ll - 1] = 0.0
                    l = ll
                    break
            x = a[nn][nn]
            if l == nn:
                wr[nn] = x + t
                wi[nn] = 0.0
                nn -= 1
            else:
                y = a[nn - 1][nn - 1]
                w = a[nn][nn - 1] * a[nn - 1][nn]
                if l == nn - 1:
                    p = 0.5 * (y - x)
                    q = p * p + w
                    z = math.sqrt(abs(q))
                    x += t
                    if q >= 0.0:
                        z = p + math.copysign(z, p)
                        wr[nn - 1] = wr[nn] = x + z
                        if z != 0.0:
                            wr[nn] = x - w / z
                        wi[nn - 1] = wi[nn] = 0.0
                    else:
                        wr[nn - 1] = wr[nn] = x + p
                        wi[nn - 1] = -z
                        wi[nn] = z
                    nn -= 2
                else:
                    if its == max_its:
                        raise ConvergenceError(
                            f"QR iteration did not converge after {max_its} sweeps "
                            f"on eigenvalue {nn} of {n} (matrix hash {matrix_hash(h)})"
                        )
                    if its % 10 == 0 and its > 0:
                        # exceptional shift
                        t += x
                        for i in range(1, nn + 1):
                            a[i][i] -= x
                        s = abs(a[nn][nn - 1]) + abs(a[nn - 1][nn - 2])
                        y = x = 0.75 * s
                        w = -0.4375 * s * s
                    its += 1
                    total += 1
                    m = nn - 2
                    while m >= l:
                        z = a[m][m]
                        r = x - z
                        s = y - z
                        p = (r * s - w) / a[m + 1][m] + a[m][m + 1]
                        q = a[m + 1][m + 1] - z - r - s
                        r = a[m + 2][m + 1]
                        s = abs(p) + abs(q) + abs(r)
                        p /= s
                        q /= s
                        r /= s
                        if m == l:
                            break
                        u = abs(a[m][m - 1]) * (abs(q) + abs(r))
                        v = abs(p) * (abs(a[m - 1][m - 1]) + abs(z) + abs(a[m + 1][m + 1]))
                        if u + v == v:
                            break
                        m -= 1
                    for i in range(m + 2, nn + 1):
                        a[i][i - 2] = 0.0
                        if i != m + 2:
                            a[i][i - 3] = 0.0
                    for k in range(m, nn):
                        if k != m:
                            p = a[k][k - 1]
                            q = a[k + 1][k - 1]
                            r = a[k + 2][k - 1] if k != nn - 1 else 0.0
                            x = abs(p) + abs(q) + abs(r)
                            if x != 0.0:
                                p /= x
                                q /= x
                                r /= x
                        s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                        if s != 0.0:
                            if k == m:
                                if l != m:
                                    a[k][k - 1] = -a[k][k - 1]
                            else:
                                a[k][k - 1] = -s * x
                            p += s
                            x = p / s
                            y = q / s
                            z = r / s
                            q /= p
                            r /= p
                            rk, rk1 = a[k], a[k + 1]
                            rk2 = a[k + 2] if k != nn - 1 else None
                            for j in range(k, nn + 1):
                                p = rk[j] + q * rk1[j]
                                if rk2 is not None:
                                    p += r * rk2[j]
                                    rk2[j] -= p * z
                                rk1[j] -= p * y
                                rk[j] -= p * x
                            mmin = min(nn, k + 3)
                            for i in range(l, mmin + 1):
                                ai = a[i]
                                p = x * ai[k] + y * ai[k + 1]
                                if k != nn - 1:
                                    p += z * ai[k + 2]
                                    ai[k + 2] -= p * r
                                ai[k + 1] -= p * q
                                ai[k] -= p
            if l >= nn - 1:
                break
    return wr[1:], wi[1:], total


def sort_spectrum(values) -> np.ndarray:
    """Sort complex values ascending by (re, im)."""
    v = np.asarray(values, dtype=complex)
    order = np.lexsort((v.imag, v.real))
    return v[order]


def general_eigen(g, max_its: int | None = None, real_tol: float = 1e-8) -> GeneralSpectrum:
    """All eigenvalues of a real square matrix.

    Balancing, Hessenberg reduction by Householder reflectors, then Francis
    double-shift QR; complex conjugate pairs come out of 2x2 diagonal blocks
    of the real Schur form, so pairs are exact conjugates. Eigenvalues
    isolated by the balancing permutation are read off the diagonal exactly.

    Parameters
    ----------
    max_its : int, optional
        QR sweeps allowed per eigenvalue, default ``30 * max(10, n)``.

    Raises
    ------
    ConvergenceError
        If one eigenvalue needs more than ``max_its`` QR sweeps.
    """
    a = as_dense(g)
    n = a.shape[0]
    if max_its is None:
        max_its = 30 * max(10, n)
    b, lo, hi = _balance(a)
    diag = np.diag(b)
    isolated = np.concatenate([diag[:lo], diag[hi + 1:]]).astype(complex)
    total = 0
    if hi > lo:
        h = _hessenberg(b[lo:hi + 1, lo:hi + 1])
        wr, wi, total = _hqr(h, max_its)
        ev = np.concatenate([isolated, np.array(wr) + 1j * np.array(wi)])
    else:
        ev = np.concatenate([isolated, diag[lo:hi + 1].astype(complex)])
    return GeneralSpectrum(sort_spectrum(ev), real_tol, total)


def _faddeev_leverrier(a: np.ndarray) -> np.ndarray:
    """Coefficients c_0..c_n (c_n = 1) of det(zI - A) = sum c_k z^k."""
    n = a.shape[0]
    c = np.zeros(n + 1)
    c[n] = 1.0
    mk = np.zeros_like(a)
    eye = np.eye(n)
    for k in range(1, n + 1):
        mk = a @ mk + c[n - k + 1] * eye
        c[n - k] = -np.trace(a @ mk) / k
    return c


def _durand_kerner(coeffs: np.ndarray, max_iter: int, tol: float) -> np.ndarray:
    n = len(coeffs) - 1
    poly = coeffs[::-1]  # highest degree first, monic
    radius = 1.0 + float(np.max(np.abs(coeffs[:-1])))
    z = radius * (0.4 + 0.9j) ** np.arange(n) / abs(0.4 + 0.9j) ** np.arange(n)
    z = z * np.exp(0.25j)
    for _ in range(max_iter):
        biggest = 0.0
        for i in range(n):
            num = np.polyval(poly, z[i])
            den = np.prod(z[i] - np.delete(z, i))
            if den == 0:
                den = 1e-300
            delta = num / den
            z[i] -= delta
            biggest = max(biggest, abs(delta) / max(1.0, abs(z[i])))
        if biggest <= tol:
            return z
    raise ConvergenceError(
        f"Durand-Kerner did not converge in {max_iter} iterations (degree {n})"
    )


def _conjugate_symmetrize(z: np.ndarray) -> np.ndarray:
    """Pair each root with its nearest conjugate and average the pair.

    Roots of a real polynomial come in conjugate pairs; the root finder only
    delivers them approximately so, so this restores the symmetry exactly.
    """
    z = np.asarray(z, dtype=complex)
    n = len(z)
    cz = np.conj(z)
    dist = np.abs(z[:, None] - cz[None, :])
    partner = -np.ones(n, dtype=int)
    for flat in np.argsort(dist, axis=None):
        i, j = divmod(int(flat), n)
        if partner[i] < 0 and partner[j] < 0:
            partner[i] = j
            partner[j] = i
    out = z.copy()
    for i in range(n):
        j = partner[i]
        if j == i:
            out[i] = z[i].real
        else:
            out[i] = 0.5 * (z[i] + np.conj(z[j]))
    return out


def charpoly_eigen_oracle(g, max_iter: int = 500, tol: float = 1e-12) -> GeneralSpectrum:
    """Eigenvalues via the characteristic polynomial; an independent test oracle.

    Only for dim <= 8: the Faddeev-LeVerrier coefficients lose accuracy
    quickly as the dimension grows.
    """
    a = as_dense(g)
    n = a.shape[0]
    if n > 8:
        raise ParameterError(f"charpoly oracle is limited to dim <= 8, got {n}")
    coeffs = _faddeev_leverrier(a)
    if n == 1:
        roots = np.array([-coeffs[0] + 0j])
    else:
        roots = _conjugate_symmetrize(_durand_kerner(coeffs, max_iter, tol))
    return GeneralSpectrum(sort_spectrum(roots))


# ---------------------------------------------------------------------------
# solves and square roots


def _lu_solve(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    n = a.shape[0]
    u = a.copy()
    x = b.copy()
    for k in range(n):
        piv = k + int(np.argmax(np.abs(u[k:, k])))
        if abs(u[piv, k]) <= tol:
            raise SingularMatrixError(
                f"matrix is singular within tolerance {tol:.3g} (pivot {k})", pivot=k
            )
        if piv != k:
            u[[k, piv]] = u[[piv, k]]
            x[[k, piv]] = x[[piv, k]]
        f = u[k + 1:, k] / u[k, k]
        u[k + 1:, k:] -= np.outer(f, u[k, k:])
        x[k + 1:] -= np.outer(f, x[k])
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - u[k, k + 1:] @ x[k + 1:]) / u[k, k]
    return x


def solve_linear(m, rhs, zero_tol: float | None = None) -> np.ndarray:
    """Solve ``m @ x = rhs``.

    Exactly symmetric ``m`` goes through the Bunch-Kaufman LDL^T factors,
    anything else through Gaussian elimination with partial pivoting.
    ``rhs`` may be a vector or a matrix of right-hand sides.

    Raises
    ------
    SingularMatrixError
        Naming the offending pivot when ``m`` is singular within tolerance.
    """
    a = as_dense(m)
    b = np.array(rhs, dtype=float)
    if b.shape[0] != a.shape[0]:
        raise ParameterError(f"rhs has {b.shape[0]} rows, matrix has {a.shape[0]}")
    tol = default_zero_tol(a) if zero_tol is None else zero_tol
    if np.array_equal(a, a.T):
        return ldlt(a, tol).solve(b)
    vector = b.ndim == 1
    x = _lu_solve(a, b[:, None] if vector else b, tol)
    return x[:, 0] if vector else x


def spd_sqrt(m) -> np.ndarray:
    """Principal (symmetric positive definite) square root ``Q sqrt(Lambda) Q^T``."""
    s = as_symmetric(m)
    _, inertia = ldlt_inertia(s)
    if inertia != (s.shape[0], 0, 0):
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: inertia {inertia}", inertia=inertia
        )
    dec = sym_eigen(s)
    q = dec.eigenvectors
    root = (q * np.sqrt(np.maximum(dec.eigenvalues, 0.0))) @ q.T
    return 0.5 * (root + root.T)
