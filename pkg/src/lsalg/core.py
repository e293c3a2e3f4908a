"""Algebras given by structure constants, and the identities checked on them.

An :class:`Algebra` of dimension ``n`` stores ``C[i][j][k]``, the coefficient
of ``e_k`` in ``e_i * e_j``.  Python-side indices are 0-based; everything
that faces a user (file formats, CLI, :meth:`Algebra.from_products`,
:func:`basis_vector`) is 1-based like ``e_1, ..., e_n``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .linalg import Matrix, congruence_reduce, dot, vec
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "MAX_EXACT_DIM",
    "DimensionError",
    "NotLeftSymmetricError",
    "JacobiError",
    "LinearFunctional",
    "SymBilinearForm",
    "Algebra",
    "LieAlgebra",
    "basis_vector",
    "zero_vector",
    "multiply",
    "associator",
    "is_left_symmetric",
    "left_mult",
    "right_mult",
    "sub_adjacent_lie",
    "form_rank",
    "congruence_diagonalize",
]

MAX_EXACT_DIM = 16


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


class NotLeftSymmetricError(ValueError):
    """An operation that needs a left-symmetric algebra got something else."""


class JacobiError(ValueError):
    """A bracket tensor failed antisymmetry or the Jacobi identity."""


def basis_vector(n: int, i: int) -> tuple:
    """``e_i`` in dimension ``n``; ``i`` is 1-based."""
    if not 1 <= i <= n:
        raise IndexError(f"basis index {i} outside 1..{n}")
    return tuple(ONE if k == i - 1 else ZERO for k in range(n))


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def _check_dim(n: int, *vectors):
    for v in vectors:
        if len(v) != n:
            raise DimensionError(f"expected dimension {n}, got {len(v)}")


# functionals and forms -----------------------------------------------------

class LinearFunctional:
    """``x -> sum_i coeffs[i] * x[i]``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = vec(coeffs)
        if not self.coeffs:
            raise ValueError("a functional needs dimension >= 1")

    @classmethod
    def zero(cls, n: int) -> "LinearFunctional":
        return cls([ZERO] * n)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, x) -> Scalar:
        _check_dim(self.dim, x)
        return dot(self.coeffs, x)

    def __bool__(self):
        return any(self.coeffs)

    def __neg__(self):
        return LinearFunctional([-c for c in self.coeffs])

    def __add__(self, other: "LinearFunctional"):
        return LinearFunctional([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "LinearFunctional"):
        return LinearFunctional([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, s) -> "LinearFunctional":
        s = as_scalar(s)
        return LinearFunctional([s * c for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, LinearFunctional) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "LinearFunctional([" + ", ".join(map(str, self.coeffs)) + "])"


class SymBilinearForm:
    """Symmetric bilinear form given by its Gram matrix."""

    __slots__ = ("gram",)

    def __init__(self, gram):
        gram = gram if isinstance(gram, Matrix) else Matrix(gram)
        if not gram.is_symmetric():
            raise ValueError("Gram matrix must be square and symmetric")
        self.gram = gram

    @classmethod
    def zero(cls, n: int) -> "SymBilinearForm":
        return cls(Matrix.zeros(n))

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __call__(self, x, y) -> Scalar:
        _check_dim(self.dim, x, y)
        return dot(x, self.gram @ y)

    def apply(self, x) -> tuple:
        """Coefficients of the functional ``h(x, .)``."""
        return self.gram @ x

    def __bool__(self):
        return not self.gram.is_zero()

    def __eq__(self, other):
        return isinstance(other, SymBilinearForm) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"SymBilinearForm({self.gram!r})"


# algebra -------------------------------------------------------------------

def _freeze_tensor(c) -> tuple:
    n = len(c)
    out = tuple(tuple(tuple(as_scalar(v) for v in c[i][j]) for j in range(n)) for i in range(n))
    for i in range(n):
        if len(out[i]) != n or any(len(out[i][j]) != n for j in range(n)):
            raise ValueError("structure tensor must be n x n x n")
    return out


class Algebra:
    """Finite-dimensional algebra fixed by its structure constants.

    No identity (associativity, left-symmetry, ...) is presumed; they are
    all checked by the functions in this module and in :mod:`lsalg.analysis`.
    """

    __slots__ = ("c", "dim", "_sparse", "_hash")

    def __init__(self, c_tensor):
        self.c = _freeze_tensor(c_tensor)
        self.dim = len(self.c)
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if self.dim > MAX_EXACT_DIM:
            raise ValueError(f"exact routines are capped at dimension {MAX_EXACT_DIM}")
        self._sparse = tuple(
            tuple(tuple((k, v) for k, v in enumerate(self.c[i][j]) if v) for j in range(self.dim))
            for i in range(self.dim))
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "Algebra":
        return cls([[[ZERO] * n for _ in range(n)] for _ in range(n)])

    @classmethod
    def from_products(cls, n: int, products: Mapping) -> "Algebra":
        """Build from ``{(i, j): {k: coeff}}`` with 1-based indices.

        ``Algebra.from_products(2, {(1, 1): {1: 2}, (1, 2): {2: 1}})`` is the
        algebra with ``e_1e_1 = 2e_1, e_1e_2 = e_2``.
        """
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), terms in products.items():
            for k, v in terms.items():
                if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
                    raise IndexError(f"index ({i},{j},{k}) outside 1..{n}")
                c[i - 1][j - 1][k - 1] = c[i - 1][j - 1][k - 1] + as_scalar(v)
        return cls(c)

    def coeff(self, i: int, j: int, k: int) -> Scalar:
        """``C_{ij}^k`` with 1-based indices."""
        return self.c[i - 1][j - 1][k - 1]

    def basis_product(self, i: int, j: int) -> tuple:
        """``e_i * e_j`` with 0-based indices."""
        return self.c[i][j]

    def nonzero(self):
        """Yield ``(i, j, k, value)``, 0-based, for every nonzero constant."""
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in self._sparse[i][j]:
                    yield i, j, k, v

    def mul(self, x, y) -> tuple:
        n = self.dim
        acc = [ZERO] * n
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            for j in range(n):
                yj = y[j]
                if not yj:
                    continue
                s = xi * yj
                for k, v in self._sparse[i][j]:
                    acc[k] = acc[k] + s * v
        return tuple(acc)

    def is_zero(self) -> bool:
        return not any(self._sparse[i][j] for i in range(self.dim) for j in range(self.dim))

    def change_basis(self, p: Matrix) -> "Algebra":
        """Structure constants in the basis given by the columns of ``p``."""
        if p.shape != (self.dim, self.dim):
            raise DimensionError("change of basis must be n x n")
        pinv = p.inverse()
        cols = p.columns()
        c = [[pinv @ self.mul(cols[i], cols[j]) for j in range(self.dim)]
             for i in range(self.dim)]
        return Algebra(c)

    def to_numpy(self) -> np.ndarray:
        real = all(v.is_real for _, _, _, v in self.nonzero())
        out = np.zeros((self.dim,) * 3, dtype=float if real else complex)
        for i, j, k, v in self.nonzero():
            out[i, j, k] = float(v.re) if real else complex(v)
        return out

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c)
        return self._hash

    def __repr__(self):
        terms = []
        for i in range(self.dim):
            for j in range(self.dim):
                sp = self._sparse[i][j]
                if sp:
                    rhs = " + ".join(f"{v}*e{k + 1}" for k, v in sp)
                    terms.append(f"e{i + 1}e{j + 1} = {rhs}")
        return f"Algebra(dim={self.dim}: " + ("; ".join(terms) or "trivial") + ")"


class LieAlgebra(Algebra):
    """Bracket algebra; antisymmetry and Jacobi are verified at construction."""

    __slots__ = ()

    def __init__(self, bracket_tensor):
        super().__init__(bracket_tensor)
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                if any(a + b for a, b in zip(self.c[i][j], self.c[j][i])):
                    raise JacobiError(f"bracket not antisymmetric on (e{i + 1}, e{j + 1})")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    ei, ej, ek = (basis_vector(n, t + 1) for t in (i, j, k))
                    s = [ZERO] * n
                    for a, b, cc in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
                        t = self.mul(a, self.mul(b, cc))
                        s = [u + v for u, v in zip(s, t)]
                    if any(s):
                        raise JacobiError(
                            f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{k + 1})")

    @property
    def bracket_tensor(self):
        return self.c

    def bracket(self, x, y) -> tuple:
        return self.mul(x, y)

    def ad(self, x) -> Matrix:
        """Matrix of ``y -> [x, y]``."""
        return left_mult(self, x)

    def is_abelian(self) -> bool:
        return self.is_zero()


# operations ----------------------------------------------------------------

def multiply(a: Algebra, x, y) -> tuple:
    """``x * y`` in ``a``."""
    _check_dim(a.dim, x, y)
    return a.mul(x, y)


def associator(a: Algebra, x, y, z) -> tuple:
    """``(x*y)*z - x*(y*z)``."""
    _check_dim(a.dim, x, y, z)
    left = a.mul(a.mul(x, y), z)
    right = a.mul(x, a.mul(y, z))
    return tuple(p - q for p, q in zip(left, right))


def basis_associators(a: Algebra):
    """All ``(e_i, e_j, e_k)`` associators as a nested ``[i][j][k]`` list."""
    n = a.dim
    real = all(not v.im for row in a._sparse for cell in row for _, v in cell)
    if real:
        # plain rationals are several times faster than going through Scalar
        sp = [[[(l, v.re) for l, v in cell] for cell in row] for row in a._sparse]
        zero = ZERO.re
    else:
        sp = a._sparse
        zero = ZERO
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = [zero] * n
                for l, v in sp[i][j]:
                    for m, w in sp[l][k]:
                        acc[m] = acc[m] + v * w
                for l, v in sp[j][k]:
                    for m, w in sp[i][l]:
                        acc[m] = acc[m] - v * w
                out[i][j][k] = [Scalar._raw(x, zero) for x in acc] if real else acc
    return out


def is_left_symmetric(a: Algebra) -> bool:
    """``(x,y,z) = (y,x,z)`` on every basis triple (enough by trilinearity)."""
    assoc = basis_associators(a)
    n = a.dim
    return all(assoc[i][j][k] == assoc[j][i][k]
               for i in range(n) for j in range(i + 1, n) for k in range(n))


def left_mult(a: Algebra, x) -> Matrix:
    """Matrix of ``L_x : y -> x*y`` (columns are images of ``e_j``)."""
    _check_dim(a.dim, x)
    n = a.dim
    cols = [a.mul(x, basis_vector(n, j + 1)) for j in range(n)]
    return Matrix.from_columns(cols)


def right_mult(a: Algebra, x) -> Matrix:
    """Matrix of ``R_x : y -> y*x``."""
    _check_dim(a.dim, x)
    n = a.dim
    cols = [a.mul(basis_vector(n, j + 1), x) for j in range(n)]
    return Matrix.from_columns(cols)


def commutator_tensor(a: Algebra):
    n = a.dim
    return [[[a.c[i][j][k] - a.c[j][i][k] for k in range(n)] for j in range(n)]
            for i in range(n)]


def sub_adjacent_lie(a: Algebra) -> LieAlgebra:
    """Commutator Lie algebra ``[x, y] = xy - yx``.

    Raises:
        NotLeftSymmetricError: ``a`` is not left-symmetric (its commutator
            may still happen to be a Lie bracket, but is not sub-adjacent).
    """
    if not is_left_symmetric(a):
        raise NotLeftSymmetricError("sub-adjacent Lie algebra needs a left-symmetric algebra")
    return LieAlgebra(commutator_tensor(a))


# symmetric bilinear forms --------------------------------------------------

def form_rank(h: SymBilinearForm) -> int:
    if not isinstance(h, SymBilinearForm):
        h = SymBilinearForm(h)
    return h.gram.rank()


def congruence_diagonalize(h: SymBilinearForm, *, exact_part: bool = False):
    """Basis in which ``h`` reads ``diag(1, ..., 1, 0, ..., 0)``.

    The rank and an exact diagonalizing congruence are computed over the
    Gaussian rationals; the final normalization needs square roots, so the
    returned basis matrix ``T`` is complex floating point with
    ``T.T @ G @ T ~ diag(1,..,1,0,..,0)``.

    Returns:
        ``(rank, T)``; with ``exact_part=True`` also the exact congruence and
        the exact diagonal as a third element ``(T_exact, d)``.
    """
    if not isinstance(h, SymBilinearForm):
        h = SymBilinearForm(h)
    t_exact, d = congruence_reduce(h.gram)
    r = sum(1 for v in d if v)
    t = t_exact.to_numpy().astype(complex)
    for i in range(r):
        t[:, i] /= np.sqrt(complex(d[i]))
    if exact_part:
        return r, t, (t_exact, d)
    return r, t


def symmetric_rank_one_factor(h: SymBilinearForm):
    """For rank-one ``h``: index ``p`` with ``h(e_p, e_p) != 0``.

    ``h(x, y) = h(x, e_p) h(e_p, y) / h(e_p, e_p)`` then holds exactly.
    """
    g = h.gram
    for p in range(h.dim):
        if g[p, p]:
            return p
    raise ValueError("form has no nonzero diagonal entry (not rank one)")

