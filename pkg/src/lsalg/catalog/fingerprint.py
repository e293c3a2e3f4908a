"""Isomorphism invariants of finite-dimensional algebras.

Every field of :class:`Fingerprint` except ``idempotent_spectra`` is a
proven invariant: two algebras with different values cannot be isomorphic.
``trace_relations`` records the linear relations among trace functionals
(degree one) and trace quadratic forms (degree two); both lists transform
by the same change of variables, so the relation space is basis free.  It is
what tells ``A4_lambda`` and ``A7_alpha`` apart for different parameters.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from itertools import combinations

import numpy as np
import sympy

from ..analysis import (
    _all_right_nilpotent,
    _associator_right_symmetric,
    _left_is_inner,
    _left_mults,
    _right_mults,
    _right_mults_commute,
    identity_flags,
    mult_algebra_dim,
)
from ..core import Algebra, basis_vector, is_left_symmetric, left_mult, right_mult
from ..linalg import Matrix, nullspace, rank, rref
from ..scalar import Scalar, format_scalar

__all__ = ["Fingerprint", "fingerprint", "EXACT_FIELDS", "first_difference"]


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    associative: bool
    commutative: bool
    left_symmetric: bool
    novikov: bool
    bisymmetric: bool
    transitive: bool
    interior_derivation: bool
    dim_product_span: int
    dim_commutator_span: int
    dim_left_annihilator: int
    dim_right_annihilator: int
    mult_algebra_dim: int
    rank_trace_ll: int
    rank_trace_rr: int
    rank_trace_lr: int
    rank_trace_r_prod: int
    trace_relations: tuple
    idempotent_spectra: tuple

    def as_dict(self) -> dict:
        return asdict(self)


EXACT_FIELDS = tuple(f.name for f in fields(Fingerprint) if f.name != "idempotent_spectra")


def first_difference(a: Fingerprint, b: Fingerprint) -> str | None:
    """Name of the first exact field on which the fingerprints disagree."""
    for name in EXACT_FIELDS:
        if getattr(a, name) != getattr(b, name):
            return name
    return None


def _span_dim(vectors, n: int) -> int:
    vs = [v for v in vectors if any(v)]
    return rank(vs, n) if vs else 0


def _annihilator_dim(mats: list[Matrix], n: int) -> int:
    # x with x*e_j = 0 for all j (left) is the common kernel of the maps x -> R_{e_j} x
    rows = [list(row) for m in mats for row in m.rows]
    return len(nullspace(rows, n)) if rows else n


def _gram(a: Algebra, fn) -> Matrix:
    n = a.dim
    return Matrix([[fn(i, j) for j in range(n)] for i in range(n)])


def _sym_vec(m: Matrix) -> list:
    n = m.nrows
    return [m[i, j] + m[j, i] if i != j else m[i, i] for i in range(n) for j in range(i, n)]


def _relations(columns: list[list], width: int) -> tuple:
    """Canonical basis of ``{c : sum_k c_k columns[k] = 0}``."""
    rows = [list(r) for r in zip(*columns)] if columns and columns[0] else []
    if not rows:
        return tuple(tuple(format_scalar(Scalar(1 if i == j else 0)) for j in range(width))
                     for i in range(width))
    null = nullspace(rows, width)
    if not null:
        return ()
    red, _ = rref(null, width)
    return tuple(tuple(format_scalar(v) for v in r) for r in red)


def _trace_data(a: Algebra):
    n = a.dim
    ls, rs = _left_mults(a), _right_mults(a)
    tl = [m.trace() for m in ls]
    tr = [m.trace() for m in rs]
    prods = [[a.c[i][j] for j in range(n)] for i in range(n)]

    def tr_of(vec_, side):
        return (left_mult if side == "L" else right_mult)(a, vec_).trace()

    g_ll = _gram(a, lambda i, j: (ls[i] @ ls[j]).trace())
    g_rr = _gram(a, lambda i, j: (rs[i] @ rs[j]).trace())
    g_lr = _gram(a, lambda i, j: (ls[i] @ rs[j]).trace())
    g_r_prod = _gram(a, lambda i, j: tr_of(prods[i][j], "R"))
    g_l_prod = _gram(a, lambda i, j: tr_of(prods[i][j], "L"))
    outer = lambda u, v: Matrix([[u[i] * v[j] for j in range(n)] for i in range(n)])  # noqa: E731

    degree1 = _relations([tl, tr], 2)
    quad = [outer(tl, tl), outer(tl, tr), outer(tr, tr), g_ll, g_rr, g_lr, g_r_prod, g_l_prod]
    degree2 = _relations([_sym_vec(q) for q in quad], len(quad))
    ranks = (g_ll.rank(), g_rr.rank(), g_lr.rank(), g_r_prod.rank())
    return ranks, (degree1, degree2)


# idempotents (heuristic) ----------------------------------------------------------

def _spectrum(m: Matrix) -> tuple:
    if all(v.is_real for r in m.rows for v in r):
        try:
            sm = sympy.Matrix([[sympy.Rational(int(v.re.numerator), int(v.re.denominator))
                                for v in r] for r in m.rows])
            eig = sympy.roots(sm.charpoly().as_expr(), multiple=True)
            if len(eig) == m.nrows and all(e.is_rational for e in eig):
                return tuple(sorted(str(e) for e in eig))
        except Exception:  # pragma: no cover - sympy failure falls through
            pass
    vals = np.linalg.eigvals(m.to_numpy().astype(complex))
    return tuple(sorted(f"{complex(round(v.real, 12), round(v.imag, 12))}" for v in vals))


def _idempotents(a: Algebra, limit: int = 24) -> list[tuple]:
    """Nonzero solutions of ``x*x = x`` inside spans of one or two basis vectors."""
    n = a.dim
    found: list[tuple] = []
    s, t = sympy.symbols("s t")

    def to_sym(v: Scalar):
        return sympy.Rational(int(v.re.numerator), int(v.re.denominator)) + \
            sympy.I * sympy.Rational(int(v.im.numerator), int(v.im.denominator))

    for size in (1, 2):
        for idx in combinations(range(n), size):
            syms = (s, t)[:size]
            eqs = []
            for k in range(n):
                expr = -sum(sym for sym, i in zip(syms, idx) if i == k)
                for a_i, x in zip(idx, syms):
                    for b_i, y in zip(idx, syms):
                        v = a.c[a_i][b_i][k]
                        if v:
                            expr += to_sym(v) * x * y
                eqs.append(sympy.expand(expr))
            eqs = [e for e in eqs if e != 0]
            if not eqs:
                continue
            try:
                sols = sympy.solve(eqs, syms, dict=True)
            except Exception:  # pragma: no cover
                continue
            for sol in sols:
                vals = [sol.get(sym) for sym in syms]
                if any(v is None or v.free_symbols for v in vals):
                    continue
                if all(v == 0 for v in vals):
                    continue
                if not all(v.is_rational for v in vals):
                    continue
                x = [Scalar(0)] * n
                for i, v in zip(idx, vals):
                    x[i] = Scalar(f"{v.p}/{v.q}")
                x = tuple(x)
                if x not in found:
                    found.append(x)
                if len(found) >= limit:
                    return found
    return found


def _idempotent_spectra(a: Algebra) -> tuple:
    out = []
    for e in _idempotents(a):
        out.append((_spectrum(left_mult(a, e)), _spectrum(right_mult(a, e))))
    return tuple(sorted(out))


def fingerprint(a: Algebra, *, idempotents: bool = True) -> Fingerprint:
    n = a.dim
    comm, assoc = identity_flags(a)
    ls = assoc or is_left_symmetric(a)
    e = [basis_vector(n, i + 1) for i in range(n)]
    products = [a.c[i][j] for i in range(n) for j in range(n)]
    commutators = [tuple(p - q for p, q in zip(a.c[i][j], a.c[j][i]))
                   for i in range(n) for j in range(i + 1, n)]
    ls_mats = [left_mult(a, v) for v in e]
    rs_mats = [right_mult(a, v) for v in e]
    ranks, relations = _trace_data(a)
    return Fingerprint(
        dim=n,
        commutative=comm,
        associative=assoc,
        left_symmetric=ls,
        novikov=ls and _right_mults_commute(a),
        bisymmetric=ls and _associator_right_symmetric(a),
        transitive=_all_right_nilpotent(a)[0],
        interior_derivation=_left_is_inner(a),
        dim_product_span=_span_dim(products, n),
        dim_commutator_span=_span_dim(commutators, n),
        dim_left_annihilator=_annihilator_dim(rs_mats, n),
        dim_right_annihilator=_annihilator_dim(ls_mats, n),
        mult_algebra_dim=mult_algebra_dim(a),
        rank_trace_ll=ranks[0],
        rank_trace_rr=ranks[1],
        rank_trace_lr=ranks[2],
        rank_trace_r_prod=ranks[3],
        trace_relations=relations,
        idempotent_spectra=_idempotent_spectra(a) if idempotents else (),
    )
