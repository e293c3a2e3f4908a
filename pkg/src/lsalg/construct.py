"""Algebras built from linear functions.

Two product rules are covered:

* the pair rule ``x*y = f(y) x + g(x) y``;
* the extended rule ``x*y = f(x) y + g(y) x + h(x, y) c`` with ``h``
  symmetric and ``c`` a fixed nonzero vector.

Note the role swap: in the extended rule ``f`` multiplies ``y``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core import (
    Algebra,
    DimensionError,
    JacobiError,
    LieAlgebra,
    LinearFunctional,
    SymBilinearForm,
    basis_associators,
    basis_vector,
    form_rank,
    is_left_symmetric,
    symmetric_rank_one_factor,
)
from .linalg import Matrix, dot, rank, vec
from .scalar import ONE, ZERO, Scalar

__all__ = [
    "PairSpec",
    "ExtendedSpec",
    "PairVerdict",
    "CaseVerdict",
    "NotALieAlgebra",
    "algebra_from_pair",
    "normalized_basis_for_functional",
    "matrix_representation",
    "lie_bracket_from_pair",
    "algebra_from_extended",
    "identity_violations",
    "classify_extended",
    "algebra_from_inner_product",
    "spec_from_inner_product",
]


class NotALieAlgebra(JacobiError):
    """``[x, y] = f(x) y + g(y) x`` is a Lie bracket only when ``f = -g``."""


def _functional(v) -> LinearFunctional:
    return v if isinstance(v, LinearFunctional) else LinearFunctional(v)


@dataclass(frozen=True)
class PairSpec:
    f: LinearFunctional
    g: LinearFunctional

    def __post_init__(self):
        object.__setattr__(self, "f", _functional(self.f))
        object.__setattr__(self, "g", _functional(self.g))
        if self.f.dim != self.g.dim:
            raise DimensionError("f and g must have the same dimension")
        if self.f.dim < 2:
            raise ValueError("dimension must be >= 2")

    @property
    def dim(self) -> int:
        return self.f.dim


@dataclass(frozen=True)
class ExtendedSpec:
    """Data ``(f, g, h, c)`` of the extended product rule."""

    f: LinearFunctional
    g: LinearFunctional
    h: SymBilinearForm
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "f", _functional(self.f))
        object.__setattr__(self, "g", _functional(self.g))
        if not isinstance(self.h, SymBilinearForm):
            object.__setattr__(self, "h", SymBilinearForm(self.h))
        object.__setattr__(self, "c", vec(self.c))
        n = self.f.dim
        if not (self.g.dim == self.h.dim == len(self.c) == n):
            raise DimensionError("f, g, h, c must share one dimension")
        if n < 2:
            raise ValueError("dimension must be >= 2")
        if not any(self.c):
            raise ValueError("c must be nonzero")
        if not self.h:
            raise ValueError("h must be nonzero")

    @property
    def dim(self) -> int:
        return self.f.dim

    def hc(self) -> tuple:
        """Coefficients of the functional ``x -> h(x, c)``."""
        return self.h.apply(self.c)

    def in_basis(self, p: Matrix) -> "ExtendedSpec":
        """The same algebra written in the basis formed by the columns of ``p``."""
        pt = p.T
        return ExtendedSpec(
            f=pt @ self.f.coeffs,
            g=pt @ self.g.coeffs,
            h=SymBilinearForm(pt @ self.h.gram @ p),
            c=p.inverse() @ self.c,
        )


# pair rule -------------------------------------------------------------------

class PairVerdict(enum.Enum):
    LEFT_SYMMETRIC_ASSOCIATIVE = "LeftSymmetricAssociative"
    NOT_LEFT_SYMMETRIC = "NotLeftSymmetric"


def _pair_tensor(f: LinearFunctional, g: LinearFunctional):
    n = f.dim
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # e_i * e_j = f(e_j) e_i + g(e_i) e_j
            c[i][j][i] = c[i][j][i] + f.coeffs[j]
            c[i][j][j] = c[i][j][j] + g.coeffs[i]
    return c


def algebra_from_pair(spec: PairSpec):
    """``x*y = f(y) x + g(x) y`` with its left-symmetry verdict.

    The verdict is associative-and-left-symmetric exactly when ``f = 0`` or
    ``g = 0``; in that case the vanishing of every basis associator is
    re-checked before returning.
    """
    a = Algebra(_pair_tensor(spec.f, spec.g))
    if spec.f and spec.g:
        return a, PairVerdict.NOT_LEFT_SYMMETRIC
    assoc = basis_associators(a)
    if any(any(v) for plane in assoc for row in plane for v in row):
        raise AssertionError("pair algebra with f = 0 or g = 0 must be associative")
    return a, PairVerdict.LEFT_SYMMETRIC_ASSOCIATIVE


def normalized_basis_for_functional(g) -> Matrix:
    """Basis ``T`` with ``g(T e_1) = 1`` and ``g(T e_i) = 0`` for ``i >= 2``."""
    g = _functional(g)
    n = g.dim
    p = next((i for i, v in enumerate(g.coeffs) if v), None)
    if p is None:
        raise ValueError("functional is zero")
    gp = g.coeffs[p]
    cols = [tuple(ONE / gp if k == p else ZERO for k in range(n))]
    for i in range(n):
        if i == p:
            continue
        # (g_i / g_p) e_p - e_i lies in ker g
        ratio = g.coeffs[i] / gp
        cols.append(tuple(ratio if k == p else (-ONE if k == i else ZERO) for k in range(n)))
    return Matrix.from_columns(cols)


def _unit_matrix(n: int, i: int, j: int) -> Matrix:
    return Matrix([[ONE if (r, s) == (i, j) else ZERO for s in range(n)] for r in range(n)])


def matrix_representation(n: int, side: str = "left") -> list[Matrix]:
    """Matrices ``E_{1i}`` (left) or ``E_{i1}`` (right) realizing the pair algebras.

    ``side='left'`` matches ``L_{e_1} = Id``; ``side='right'`` matches
    ``R_{e_1} = Id``.  The structure constants are re-derived from the
    matrix products before returning.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    side = side.lower()
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if side == "left":
        mats = [_unit_matrix(n, 0, i) for i in range(n)]
        pair = PairSpec(f=LinearFunctional.zero(n), g=basis_vector(n, 1))
    else:
        mats = [_unit_matrix(n, i, 0) for i in range(n)]
        pair = PairSpec(f=basis_vector(n, 1), g=LinearFunctional.zero(n))
    a, _ = algebra_from_pair(pair)
    for i in range(n):
        for j in range(n):
            expected = Matrix.zeros(n)
            for k, v in a._sparse[i][j]:
                expected = expected + mats[k].scale(v)
            if mats[i] @ mats[j] != expected:
                raise AssertionError(f"matrix product disagrees on (e{i + 1}, e{j + 1})")
    return mats


def lie_bracket_from_pair(f, g) -> LieAlgebra:
    """``[x, y] = f(x) y + g(y) x``.

    Raises:
        NotALieAlgebra: unless ``f = -g``.
    """
    f, g = _functional(f), _functional(g)
    if f.dim != g.dim:
        raise DimensionError("f and g must have the same dimension")
    n = f.dim
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c[i][j][j] = c[i][j][j] + f.coeffs[i]
            c[i][j][i] = c[i][j][i] + g.coeffs[j]
    try:
        return LieAlgebra(c)
    except JacobiError as exc:
        raise NotALieAlgebra(str(exc)) from None


# extended rule ---------------------------------------------------------------

def algebra_from_extended(spec: ExtendedSpec) -> Algebra:
    """``x*y = f(x) y + g(y) x + h(x, y) c``; left-symmetry is not assumed."""
    n = spec.dim
    f, g, hg, c = spec.f.coeffs, spec.g.coeffs, spec.h.gram, spec.c
    t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            row = t[i][j]
            hij = hg[i, j]
            if hij:
                for k in range(n):
                    if c[k]:
                        row[k] = hij * c[k]
            row[j] = row[j] + f[i]
            row[i] = row[i] + g[j]
    return Algebra(t)


def identity_violations(spec: ExtendedSpec) -> tuple[str, ...]:
    """Which of the three left-symmetry identities fail on basis tuples.

    ``"fg_symmetry"``: ``f(y) g(x) = g(y) f(x)``;
    ``"g_c_balance"``: ``f(y) g(z) + g(c) h(y, z) = 0``;
    ``"h_proportionality"``: ``[(g-f)(y) + h(y,c)] h(x,z) = [(g-f)(x) + h(x,c)] h(y,z)``.
    """
    n = spec.dim
    f, g, hg = spec.f.coeffs, spec.g.coeffs, spec.h.gram
    gc = dot(g, spec.c)
    hc = spec.hc()
    phi = [g[i] - f[i] + hc[i] for i in range(n)]
    out = []
    if any(f[y] * g[x] != g[y] * f[x] for x in range(n) for y in range(x + 1, n)):
        out.append("fg_symmetry")
    if any(f[y] * g[z] + gc * hg[y, z] for y in range(n) for z in range(n)):
        out.append("g_c_balance")
    if any(phi[y] * hg[x, z] != phi[x] * hg[y, z]
           for x in range(n) for y in range(x + 1, n) for z in range(n)):
        out.append("h_proportionality")
    return tuple(out)


@dataclass(frozen=True)
class CaseVerdict:
    """Outcome of :func:`classify_extended`.

    ``case`` is 1..7, or ``None`` when the data violates the identities
    (``violated`` names them).  In dimension two the identities are not
    necessary: some violating data still yields a left-symmetric product,
    flagged by ``outside_cases`` and confirmed by the exact associator check.
    Case 4 carries
    ``alpha``, ``a1`` (exact when the normalizing square root is a Gaussian
    rational, else complex) and the exact ratio ``lam = (2 a1 - alpha) /
    (a1 - alpha)``; case 6 carries ``alpha``; case 7 carries the exact
    ``alpha`` with ``g = alpha f``; cases 1, 3, 5 carry ``rank_h``.
    """

    case: int | None
    rank_h: int | None = None
    alpha: Scalar | complex | None = None
    a1: Scalar | complex | None = None
    lam: Scalar | None = None
    violated: tuple[str, ...] = field(default=())
    outside_cases: bool = False

    @property
    def left_symmetric(self) -> bool:
        return self.case is not None or self.outside_cases

    @property
    def tag(self) -> str:
        if self.case is not None:
            return f"Case{self.case}"
        return "LeftSymmetricOutsideCases" if self.outside_cases else "NotLeftSymmetric"

    def as_dict(self) -> dict:
        def enc(v):
            if v is None or isinstance(v, int):
                return v
            if isinstance(v, Scalar):
                return str(v)
            return [v.real, v.imag]
        return {"verdict": self.tag, "rank_h": self.rank_h, "alpha": enc(self.alpha),
                "a1": enc(self.a1), "lambda": enc(self.lam), "violated": list(self.violated),
                "outside_cases": self.outside_cases}


def _in_span(v, w) -> bool:
    """Is ``v`` a multiple of the nonzero vector ``w``?"""
    return rank([list(v), list(w)], len(v)) <= 1


def _scaled_by_root(value: Scalar, square: Scalar):
    """``value / sqrt(square)``, exact if the root is a Gaussian rational."""
    root = square.exact_sqrt()
    if root is not None:
        return value / root
    return complex(value) / complex(square) ** 0.5


def classify_extended(spec: ExtendedSpec) -> CaseVerdict:
    """Decide left-symmetry and the case of the extended product rule.

    The three identities are checked first, then the case conditions in the
    order 1..7; the first match wins.  Violating data is re-checked with the
    exact associator test so the verdict never calls a left-symmetric
    product non-left-symmetric.
    """
    violated = identity_violations(spec)
    if violated:
        outside = is_left_symmetric(algebra_from_extended(spec))
        return CaseVerdict(None, violated=violated, outside_cases=outside)
    f, g, h, c = spec.f, spec.g, spec.h, spec.c
    hg = h.gram
    hc = spec.hc()
    rk = form_rank(h)
    f0, g0 = not f, not g
    hcc = dot(c, hc)

    if f0 and g0:
        if not any(hc):
            return CaseVerdict(1, rank_h=rk)
        if rk == 1:
            return CaseVerdict(2, rank_h=rk)
    if g0 and not f0:
        if f.coeffs == hc:
            return CaseVerdict(3, rank_h=rk)
        if rk == 1:
            p = symmetric_rank_one_factor(h)
            diff = [a - b for a, b in zip(f.coeffs, hc)]
            if _in_span(diff, hg.row(p)):
                hp_c, f_p, h_pp = hc[p], f.coeffs[p], hg[p, p]
                alpha = _scaled_by_root(hp_c - f_p, h_pp)
                a1 = _scaled_by_root(hp_c, h_pp)
                return CaseVerdict(4, rank_h=rk, alpha=alpha, a1=a1, lam=(hp_c + f_p) / f_p)
    if f0 and not g0:
        if g.coeffs == tuple(-v for v in hc) and not hcc:
            return CaseVerdict(5, rank_h=rk)
        if rk == 1 and not any(hc):
            p = symmetric_rank_one_factor(h)
            if _in_span(g.coeffs, hg.row(p)):
                return CaseVerdict(6, rank_h=rk, alpha=_scaled_by_root(g.coeffs[p], hg[p, p]))
    if not f0 and not g0:
        fc = f(c)
        p = next(i for i, v in enumerate(f.coeffs) if v)
        alpha = g.coeffs[p] / f.coeffs[p]
        if fc and g.coeffs == tuple(alpha * v for v in f.coeffs):
            expected = Matrix([[-(a * b) / fc for b in f.coeffs] for a in f.coeffs])
            if hg == expected:
                return CaseVerdict(7, rank_h=rk, alpha=alpha)
    raise AssertionError(
        "identities hold but no case matched; this contradicts the case analysis")


# inner-product example -------------------------------------------------------

def spec_from_inner_product(a) -> ExtendedSpec:
    """Extended data of ``u*v = (u, v) a + (u, a) v`` with the bilinear dot product."""
    a = vec(a)
    n = len(a)
    if n < 2:
        raise ValueError("dimension must be >= 2")
    if not any(a):
        raise ValueError("a must be nonzero")
    return ExtendedSpec(f=a, g=LinearFunctional.zero(n), h=SymBilinearForm(Matrix.identity(n)), c=a)


def algebra_from_inner_product(a) -> Algebra:
    """``u*v = (u, v) a + (u, a) v``, i.e. ``C[i][j][k] = d_ij a_k + a_i d_jk``."""
    a = vec(a)
    n = len(a)
    if n < 2:
        raise ValueError("dimension must be >= 2")
    if not any(a):
        raise ValueError("a must be nonzero")
    t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                for k in range(n):
                    t[i][j][k] = t[i][j][k] + a[k]
            t[i][j][j] = t[i][j][j] + a[i]
    return Algebra(t)
