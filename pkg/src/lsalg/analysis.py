"""Property detectors for left-symmetric algebras and classical r-matrices.

All checks run on basis vectors with exact arithmetic; multilinearity makes
that sufficient.  Transitivity is the one polynomial question: it is decided
by evaluating ``x -> tr(R_x^m)`` on a point set on which a nonzero
homogeneous polynomial of degree ``<= n`` cannot vanish.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from itertools import combinations_with_replacement

from .construct import ExtendedSpec, algebra_from_extended, classify_extended
from .core import (
    Algebra,
    DimensionError,
    LieAlgebra,
    NotLeftSymmetricError,
    basis_associators,
    basis_vector,
    is_left_symmetric,
    left_mult,
    right_mult,
)
from .linalg import Matrix, dot, rref, solve
from .scalar import ZERO

__all__ = [
    "PropertyReport",
    "HInvariance",
    "identity_flags",
    "is_commutative",
    "is_associative",
    "is_novikov",
    "is_bisymmetric",
    "is_transitive",
    "transitivity",
    "is_interior_derivation",
    "mult_algebra_dim",
    "is_simple",
    "h_invariance",
    "property_report",
    "is_r_matrix",
    "lsa_from_r_matrix",
    "GRID_MAX_DIM",
]

GRID_MAX_DIM = 6


def is_commutative(a: Algebra) -> bool:
    n = a.dim
    return all(a.c[i][j] == a.c[j][i] for i in range(n) for j in range(i + 1, n))


def is_associative(a: Algebra) -> bool:
    assoc = basis_associators(a)
    return not any(any(v) for plane in assoc for row in plane for v in row)


def identity_flags(a: Algebra) -> tuple[bool, bool]:
    """``(commutative, associative)``."""
    return is_commutative(a), is_associative(a)


def _right_mults(a: Algebra) -> list[Matrix]:
    return [right_mult(a, basis_vector(a.dim, i + 1)) for i in range(a.dim)]


def _left_mults(a: Algebra) -> list[Matrix]:
    return [left_mult(a, basis_vector(a.dim, i + 1)) for i in range(a.dim)]


def _right_mults_commute(a: Algebra) -> bool:
    rs = _right_mults(a)
    return all(rs[i] @ rs[j] == rs[j] @ rs[i]
               for i in range(a.dim) for j in range(i + 1, a.dim))


def is_novikov(a: Algebra) -> bool:
    """Left-symmetric with pairwise commuting right multiplications."""
    return is_left_symmetric(a) and _right_mults_commute(a)


def _associator_right_symmetric(a: Algebra) -> bool:
    assoc = basis_associators(a)
    n = a.dim
    return all(assoc[i][j][k] == assoc[i][k][j]
               for i in range(n) for j in range(n) for k in range(j + 1, n))


def is_bisymmetric(a: Algebra) -> bool:
    """Associator symmetric in the first two and in the last two arguments."""
    return is_left_symmetric(a) and _associator_right_symmetric(a)


# transitivity ------------------------------------------------------------------

def _lattice(n: int, total: int):
    """Points of ``N^n`` with coordinate sum ``total``."""
    for combo in combinations_with_replacement(range(n), total):
        x = [0] * n
        for i in combo:
            x[i] += 1
        yield x


def _combo(mats: list[Matrix], x) -> Matrix:
    n = mats[0].nrows
    rows = [[ZERO] * n for _ in range(n)]
    for m, xi in zip(mats, x):
        if not xi:
            continue
        for r in range(n):
            src, dst = m.rows[r], rows[r]
            for c in range(n):
                if src[c]:
                    dst[c] = dst[c] + xi * src[c]
    return Matrix(rows)


def _power_traces_vanish(r: Matrix, top: int) -> bool:
    p = r
    for _ in range(top):
        if p.trace():
            return False
        p = p @ r
    return True


def _all_right_nilpotent(a: Algebra, *, seed: int = 0, samples: int = 64):
    n = a.dim
    rs = _right_mults(a)
    if n <= GRID_MAX_DIM:
        # tr(R_x^m), m <= n, is homogeneous of degree m; times (sum x)^(n-m) it
        # is degree n and agrees with itself on {sum x = n}, a unisolvent set
        # for degree-n forms.  So vanishing there means vanishing everywhere.
        ok = all(_power_traces_vanish(_combo(rs, x), n) for x in _lattice(n, n))
        return ok, "exact-grid"
    rng = random.Random(seed)
    ok = all(_power_traces_vanish(_combo(rs, [rng.randint(-10**6, 10**6) for _ in range(n)]), n)
             for _ in range(samples))
    return ok, "randomized"


def transitivity(a: Algebra, *, seed: int = 0) -> tuple[bool, str]:
    """``(every R_x nilpotent, mode)``; mode is ``exact-grid`` or ``randomized``.

    The randomized mode (``n > 6``) can only err by answering true for a
    non-transitive algebra, with probability below ``n / 10**6`` per sample.
    """
    if not is_left_symmetric(a):
        raise NotLeftSymmetricError("transitivity is defined for left-symmetric algebras")
    return _all_right_nilpotent(a, seed=seed)


def is_transitive(a: Algebra) -> bool:
    return transitivity(a)[0]


# interior derivations -------------------------------------------------------------

def _left_is_inner(a: Algebra) -> bool:
    """Every ``L_{e_i}`` equals ``ad z = L_z - R_z`` for some ``z``."""
    n = a.dim
    ls, rs = _left_mults(a), _right_mults(a)
    ads = [l - r for l, r in zip(ls, rs)]
    # unknown z_k; equation per matrix entry (r, c)
    system = [[ads[k][r, c] for k in range(n)] for r in range(n) for c in range(n)]
    for target in ls:
        rhs = [target[r, c] for r in range(n) for c in range(n)]
        if solve(system, rhs) is None:
            return False
    return True


def is_interior_derivation(a: Algebra) -> bool:
    if not is_left_symmetric(a):
        raise NotLeftSymmetricError("interior derivations need a left-symmetric algebra")
    return _left_is_inner(a)


# simplicity -------------------------------------------------------------------------

def _flatten(m: Matrix) -> list:
    return [v for row in m.rows for v in row]


def mult_algebra_dim(a: Algebra) -> int:
    """Dimension of the unital associative algebra generated by all ``L_x, R_x``."""
    n = a.dim
    gens = [g for g in _left_mults(a) + _right_mults(a) if not g.is_zero()]
    basis: list[Matrix] = [Matrix.identity(n)]
    reduced, _ = rref([_flatten(basis[0])], n * n)
    frontier = list(basis)
    while frontier:
        fresh = []
        for m in frontier:
            for g in gens:
                cand = m @ g
                if cand.is_zero():
                    continue
                new_red, _ = rref(reduced + [_flatten(cand)], n * n)
                if len(new_red) > len(reduced):
                    reduced = new_red
                    fresh.append(cand)
                    if len(reduced) == n * n:
                        return n * n
        frontier = fresh
    return len(reduced)


def is_simple(a: Algebra) -> bool:
    """No ideals besides 0 and ``a`` (Burnside: envelope is all of ``End(a)``)."""
    return mult_algebra_dim(a) == a.dim ** 2


# h-invariance ---------------------------------------------------------------------

@dataclass(frozen=True)
class HInvariance:
    """Which invariance identities of ``h`` hold on the built algebra.

    ``swap``: ``h(x*y, z) = h(y*x, z) = h(x*z, y)``;
    ``right_adjoint``: ``h(x*y, z) = h(x, z*y)``;
    ``left_skew``: ``h(x*y, z) + h(y, x*z) = 0``.
    """

    swap: bool
    right_adjoint: bool
    left_skew: bool

    def as_dict(self) -> dict:
        return asdict(self)


def h_invariance(spec: ExtendedSpec) -> HInvariance:
    if not classify_extended(spec).left_symmetric:
        raise NotLeftSymmetricError("spec does not define a left-symmetric algebra")
    a = algebra_from_extended(spec)
    n = a.dim
    h = spec.h

    def hv(x, y):
        return dot(x, h.gram @ y)

    prod = [[a.c[i][j] for j in range(n)] for i in range(n)]
    e = [basis_vector(n, i + 1) for i in range(n)]
    swap = right_adjoint = left_skew = True
    for x in range(n):
        for y in range(n):
            for z in range(n):
                hxy_z = hv(prod[x][y], e[z])
                if swap and not (hxy_z == hv(prod[y][x], e[z]) == hv(prod[x][z], e[y])):
                    swap = False
                if right_adjoint and hxy_z != hv(e[x], prod[z][y]):
                    right_adjoint = False
                if left_skew and hxy_z + hv(e[y], prod[x][z]):
                    left_skew = False
    return HInvariance(swap, right_adjoint, left_skew)


# report ----------------------------------------------------------------------------

@dataclass(frozen=True)
class PropertyReport:
    """Exact property flags.

    ``transitive`` and ``interior_derivation`` describe the underlying
    operator statements (``R_x`` nilpotent, ``L_x = ad z``) and are reported
    for any algebra; ``novikov`` and ``bisymmetric`` include left-symmetry.
    """

    commutative: bool
    associative: bool
    left_symmetric: bool
    novikov: bool
    bisymmetric: bool
    transitive: bool
    interior_derivation: bool
    simple: bool
    transitive_mode: str

    def __post_init__(self):
        if self.associative and not self.left_symmetric:
            raise AssertionError("associative algebra reported as not left-symmetric")
        if self.commutative and self.left_symmetric and not self.associative:
            raise AssertionError("commutative left-symmetric algebra must be associative")

    def as_dict(self) -> dict:
        return asdict(self)


def property_report(a: Algebra, *, seed: int = 0) -> PropertyReport:
    comm, assoc = identity_flags(a)
    ls = assoc or is_left_symmetric(a)
    trans, mode = _all_right_nilpotent(a, seed=seed)
    return PropertyReport(
        commutative=comm,
        associative=assoc,
        left_symmetric=ls,
        novikov=ls and _right_mults_commute(a),
        bisymmetric=ls and _associator_right_symmetric(a),
        transitive=trans,
        interior_derivation=_left_is_inner(a),
        simple=is_simple(a),
        transitive_mode=mode,
    )


# r-matrices ----------------------------------------------------------------------------

def _check_operator(lie: LieAlgebra, r: Matrix) -> None:
    if r.shape != (lie.dim, lie.dim):
        raise DimensionError(f"operator must be {lie.dim} x {lie.dim}")


def is_r_matrix(lie: LieAlgebra, r: Matrix) -> bool:
    """``[R x, R y] = R([R x, y] + [x, R y])`` on every basis pair."""
    _check_operator(lie, r)
    n = lie.dim
    images = r.columns()
    for i in range(n):
        for j in range(n):
            ei, ej = basis_vector(n, i + 1), basis_vector(n, j + 1)
            lhs = lie.bracket(images[i], images[j])
            inner = tuple(p + q for p, q in zip(lie.bracket(images[i], ej),
                                                lie.bracket(ei, images[j])))
            if lhs != r @ inner:
                return False
    return True


def lsa_from_r_matrix(lie: LieAlgebra, r: Matrix) -> Algebra:
    """``x * y = [R x, y]``."""
    if not is_r_matrix(lie, r):
        raise ValueError("operator is not a classical r-matrix")
    n = lie.dim
    images = r.columns()
    c = [[lie.bracket(images[i], basis_vector(n, j + 1)) for j in range(n)] for i in range(n)]
    return Algebra(c)
