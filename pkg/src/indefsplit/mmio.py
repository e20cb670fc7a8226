"""Matrix Market reading and writing for dense real matrices.

Accepted headers are ``%%MatrixMarket matrix {array|coordinate} {real|integer}
{symmetric|general}``. Numbers are written with 12 significant digits so a
write/read/write cycle reproduces the file byte for byte.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

__all__ = ["MatrixMarketError", "MatrixMarketFile", "fmt12", "read_matrix", "load_symmetric", "write_matrix"]

_FORMATS = ("array", "coordinate")
_FIELDS = ("real", "integer", "double")
_SYMMETRIES = ("symmetric", "general")


class MatrixMarketError(ValueError):
    """Malformed or unsupported Matrix Market input; ``line``/``col`` are 1-based."""

    def __init__(self, message, source="<input>", line=None, col=None):
        where = source
        if line is not None:
            where += f":{line}"
            if col is not None:
                where += f":{col}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line
        self.col = col


@dataclass(frozen=True)
class MatrixMarketFile:
    matrix: np.ndarray
    format: str
    symmetry: str
    source: str


def fmt12(x: float) -> str:
    """Fixed 12-significant-digit text form used for every numeric output."""
    return format(float(x), ".12g")


def _tokens(line: str):
    """Yield (token, 1-based column) pairs."""
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield tok, col + 1
        col += len(tok)


def _number(tok, col, lineno, source):
    try:
        return float(tok)
    except ValueError:
        raise MatrixMarketError(f"expected a number, got {tok!r}", source, lineno, col) from None


def _index(tok, col, lineno, source, limit):
    try:
        v = int(tok)
    except ValueError:
        raise MatrixMarketError(f"expected an integer index, got {tok!r}", source, lineno, col) from None
    if not 1 <= v <= limit:
        raise MatrixMarketError(f"index {v} out of range 1..{limit}", source, lineno, col)
    return v - 1


def _parse(text: str, source: str) -> MatrixMarketFile:
    lines = text.splitlines()
    if not lines:
        raise MatrixMarketError("empty file", source, 1, 1)
    head = lines[0].split()
    if len(head) != 5 or head[0].lower() != "%%matrixmarket":
        raise MatrixMarketError("missing '%%MatrixMarket matrix <format> <field> <symmetry>' header", source, 1, 1)
    obj, fmt, fld, sym = (h.lower() for h in head[1:])
    for value, allowed, what, pos in (
        (obj, ("matrix",), "object", 2),
        (fmt, _FORMATS, "format", 3),
        (fld, _FIELDS, "field", 4),
        (sym, _SYMMETRIES, "symmetry", 5),
    ):
        if value not in allowed:
            col = lines[0].lower().index(value) + 1
            raise MatrixMarketError(f"unsupported {what} {value!r}", source, 1, col)

    body = [
        (i + 1, ln) for i, ln in enumerate(lines[1:], start=1)
        if ln.strip() and not ln.lstrip().startswith("%")
    ]
    if not body:
        raise MatrixMarketError("missing size line", source, len(lines), 1)
    size_no, size_line = body[0]
    size_toks = list(_tokens(size_line))
    want = 2 if fmt == "array" else 3
    if len(size_toks) != want:
        raise MatrixMarketError(f"size line needs {want} integers", source, size_no, 1)
    dims = []
    for tok, col in size_toks:
        try:
            dims.append(int(tok))
        except ValueError:
            raise MatrixMarketError(f"expected an integer, got {tok!r}", source, size_no, col) from None
    rows, cols = dims[0], dims[1]
    if rows < 1 or cols < 1:
        raise MatrixMarketError("matrix dimensions must be positive", source, size_no, 1)
    if sym == "symmetric" and rows != cols:
        raise MatrixMarketError("symmetric matrix must be square", source, size_no, 1)

    out = np.zeros((rows, cols))
    entries = body[1:]
    if fmt == "array":
        # column-major; symmetric files list only the lower triangle
        if sym == "symmetric":
            slots = [(i, j) for j in range(cols) for i in range(j, rows)]
        else:
            slots = [(i, j) for j in range(cols) for i in range(rows)]
        values = []
        for lineno, ln in entries:
            for tok, col in _tokens(ln):
                values.append((_number(tok, col, lineno, source), lineno, col))
        if len(values) != len(slots):
            last = entries[-1][0] if entries else size_no
            raise MatrixMarketError(f"expected {len(slots)} values, found {len(values)}", source, last, 1)
        for (i, j), (v, _, _) in zip(slots, values):
            out[i, j] = v
            if sym == "symmetric":
                out[j, i] = v
    else:
        nnz = dims[2]
        if len(entries) != nnz:
            last = entries[-1][0] if entries else size_no
            raise MatrixMarketError(f"expected {nnz} entries, found {len(entries)}", source, last, 1)
        seen = {}
        for lineno, ln in entries:
            toks = list(_tokens(ln))
            if len(toks) != 3:
                raise MatrixMarketError("coordinate entry needs 'row col value'", source, lineno, 1)
            i = _index(toks[0][0], toks[0][1], lineno, source, rows)
            j = _index(toks[1][0], toks[1][1], lineno, source, cols)
            v = _number(toks[2][0], toks[2][1], lineno, source)
            if sym == "symmetric":
                key = (max(i, j), min(i, j))
                if key in seen and seen[key] != v:
                    scale = max(abs(seen[key]), abs(v), 1e-300)
                    if abs(seen[key] - v) > 1e-12 * scale:
                        raise MatrixMarketError(
                            f"entry ({i + 1},{j + 1}) contradicts its mirror", source, lineno, toks[2][1]
                        )
                seen[key] = v
                out[i, j] = out[j, i] = v
            else:
                out[i, j] = v
    if not np.all(np.isfinite(out)):
        raise MatrixMarketError("non-finite value", source)
    return MatrixMarketFile(out, fmt, sym, source)


def read_matrix(path_or_text, source: str | None = None) -> MatrixMarketFile:
    """Read a Matrix Market file from a path or a file object."""
    if hasattr(path_or_text, "read"):
        text = path_or_text.read()
        src = source or getattr(path_or_text, "name", "<stream>")
    else:
        src = source or os.fspath(path_or_text)
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    return _parse(text, src)


def load_symmetric(path, symmetrize: bool = False) -> np.ndarray:
    """Read a square symmetric matrix, averaging with the transpose only when asked.

    ``general`` files are refused unless ``symmetrize`` is set.
    """
    mm = read_matrix(path)
    a = mm.matrix
    if a.shape[0] != a.shape[1]:
        raise MatrixMarketError(f"matrix must be square, got {a.shape[0]}x{a.shape[1]}", mm.source)
    if mm.symmetry == "general":
        if not symmetrize:
            raise MatrixMarketError("general (unsymmetric) header; pass --symmetrize to average with the transpose", mm.source, 1)
        asym = float(np.max(np.abs(a - a.T)))
        return 0.5 * (a + a.T) if asym else a
    return a


def write_matrix(target, a, fmt: str = "array", comment: str | None = None) -> str:
    """Write a symmetric matrix as ``array`` or ``coordinate real symmetric``.

    ``target`` may be a path, a file object, or None; the text is returned
    in every case.
    """
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"need a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    buf = io.StringIO()
    buf.write(f"%%MatrixMarket matrix {fmt} real symmetric\n")
    if comment:
        for ln in comment.splitlines():
            buf.write(f"% {ln}\n")
    if fmt == "array":
        buf.write(f"{n} {n}\n")
        for j in range(n):
            for i in range(j, n):
                buf.write(fmt12(arr[i, j]) + "\n")
    elif fmt == "coordinate":
        entries = [(i, j) for j in range(n) for i in range(j, n) if arr[i, j] != 0.0]
        buf.write(f"{n} {n} {len(entries)}\n")
        for i, j in entries:
            buf.write(f"{i + 1} {j + 1} {fmt12(arr[i, j])}\n")
    else:
        raise ValueError(f"format must be 'array' or 'coordinate', got {fmt!r}")
    text = buf.getvalue()
    if target is None:
        return text
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
