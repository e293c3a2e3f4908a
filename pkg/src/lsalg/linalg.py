"""Exact dense linear algebra over Gaussian rationals.

Rows are plain Python lists of :class:`~lsalg.scalar.Scalar`.  The
:class:`Matrix` wrapper is immutable; the free functions (``rref``,
``rank``, ``nullspace``, ``solve``) accept anything row-iterable and never
mutate their input.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Matrix",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "congruence_reduce",
    "vec",
    "vadd",
    "vsub",
    "vscale",
    "dot",
    "is_zero_vec",
]


# vectors ---------------------------------------------------------------------

def vec(*coords) -> tuple:
    """Exact vector from loose coordinates: ``vec(1, "1/2", 0)``."""
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Scalar)):
        coords = tuple(coords[0])
    return tuple(as_scalar(c) for c in coords)


def vadd(x, y) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x, y) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def vscale(s, x) -> tuple:
    s = as_scalar(s)
    return tuple(s * a for a in x)


def dot(x, y) -> Scalar:
    acc = ZERO
    for a, b in zip(x, y):
        if a and b:
            acc = acc + a * b
    return acc


def is_zero_vec(x) -> bool:
    return not any(x)


# elimination -----------------------------------------------------------------

def rref(rows: Iterable[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns:
        (reduced, pivots): the nonzero reduced rows and their pivot columns.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        pivot_row = [v * inv if v else v for v in m[r]]
        m[r] = pivot_row
        nz = [j for j in range(c, ncols) if pivot_row[j]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row = m[i]
                for j in nz:
                    row[j] = row[j] - f * pivot_row[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of ``{x : rows @ x = 0}``; one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple | None:
    """One exact solution of ``rows @ x = rhs`` or ``None`` if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [as_scalar(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)


# matrix ----------------------------------------------------------------------

class Matrix:
    """Immutable exact matrix; 0-based ``m[i, j]`` indexing."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(as_scalar(v) for v in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "Matrix":
        return cls([[ZERO] * (r if c is None else c) for _ in range(r)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return cls(zip(*cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self.rows)) if self.rows else self

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matmul")
            cols = other.columns()
            return Matrix([[dot(r, c) for c in cols] for r in self.rows])
        if len(other) != self.ncols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(dot(r, other) for r in self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([vadd(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([vsub(a, b) for a, b in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-v for v in r] for r in self.rows])

    def scale(self, s) -> "Matrix":
        return Matrix([vscale(s, r) for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def trace(self) -> Scalar:
        acc = ZERO
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def rank(self) -> int:
        return rank(self.rows, self.ncols)

    def nullspace(self) -> list[tuple]:
        return nullspace(self.rows, self.ncols)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("only square matrices invert")
        n = self.nrows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)]
               for i, r in enumerate(self.rows)]
        red, pivots = rref(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(red) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix([r[n:] for r in red])

    def det(self) -> Scalar:
        if not self.is_square():
            raise ValueError("det of non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        d = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d = d * m[c][c]
            inv = ONE / m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    for j in range(c, n):
                        m[i][j] = m[i][j] - f * m[c][j]
        return d

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def to_numpy(self) -> np.ndarray:
        real = all(v.is_real for r in self.rows for v in r)
        dtype = float if real else complex
        conv = (lambda v: float(v.re)) if real else complex
        return np.array([[conv(v) for v in r] for r in self.rows], dtype=dtype).reshape(
            self.nrows, self.ncols)

    def __repr__(self):
        body = "; ".join(", ".join(str(v) for v in r) for r in self.rows)
        return f"Matrix([{body}])"


def _abs2_key(s: Scalar):
    return s.abs2()


def congruence_reduce(gram: Matrix):
    """Exact symmetric elimination ``T^T G T = diag(d)``.

    Pivots on the largest-modulus diagonal entry; when the remaining diagonal
    is zero but the block is not, ``e_i <- e_i + e_j`` creates a pivot.

    Returns:
        (T, d): exact change of basis and the diagonal.  Nonzero entries of
        ``d`` come first.
    """
    if not gram.is_symmetric():
        raise ValueError("Gram matrix is not symmetric")
    n = gram.nrows
    g = [list(r) for r in gram.rows]
    t = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

    def swap(a, b):
        g[a], g[b] = g[b], g[a]
        for row in g:
            row[a], row[b] = row[b], row[a]
        for row in t:
            row[a], row[b] = row[b], row[a]

    for r in range(n):
        best = max(range(r, n), key=lambda i: _abs2_key(g[i][i]))
        if not g[best][best]:
            off = next(((i, j) for i in range(r, n) for j in range(i + 1, n) if g[i][j]), None)
            if off is None:
                break
            i, j = off
            # e_i <- e_i + e_j
            for row in t:
                row[i] = row[i] + row[j]
            for k in range(n):
                g[i][k] = g[i][k] + g[j][k]
            for k in range(n):
                g[k][i] = g[k][i] + g[k][j]
            best = i
        if best != r:
            swap(best, r)
        piv = g[r][r]
        for j in range(r + 1, n):
            if g[r][j]:
                m = g[r][j] / piv
                for row in t:
                    row[j] = row[j] - m * row[r]
                for k in range(n):
                    g[j][k] = g[j][k] - m * g[r][k]
                for k in range(n):
                    g[k][j] = g[k][j] - m * g[k][r]
    return Matrix(t), [g[i][i] for i in range(n)]
