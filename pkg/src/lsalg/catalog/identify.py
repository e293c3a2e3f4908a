"""Normalize an extended spec to its catalog representative.

For every case a new basis ``P`` (columns, in old coordinates) is built in
which the product has exactly the printed normal-form constants.  The
witness returned is ``T = P^{-1}``, the coordinate map from the input
algebra to the catalog algebra, so that ``T(x*y) = T(x) o T(y)``.

Cases 2, 4, 6 and 7 need no square roots and the witness is exact.  Cases 1,
3 and 5 scale by ``1/sqrt(d)`` to bring ``h`` to ``diag(1, .., 1, 0, .., 0)``
and their witnesses are complex floating point unless every ``d`` is the
square of a Gaussian rational.  The basis itself stays exact; the roots
enter only as a final row scaling of ``T``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..construct import ExtendedSpec, classify_extended
from ..core import NotLeftSymmetricError, basis_vector, symmetric_rank_one_factor
from ..linalg import Matrix, congruence_reduce, dot, nullspace, rank, vscale, vsub
from ..scalar import ONE
from .families import CatalogId

__all__ = ["Identification", "identify", "normal_basis", "apply_root_scales"]


class Identification(NamedTuple):
    """``witness = diag(sqrt(root_scales)) @ exact_part`` maps the input onto the catalog.

    ``exact_witness`` is ``exact_part`` itself when no square root is needed.
    """

    catalog_id: CatalogId
    witness: np.ndarray
    exact_witness: Matrix | None
    exact_part: Matrix
    root_scales: tuple


def apply_root_scales(part: Matrix, scales) -> np.ndarray:
    """``diag(sqrt(scales)) @ part`` in complex floating point."""
    m = part.to_numpy().astype(complex)
    for i, v in enumerate(scales):
        if v != ONE:
            m[i, :] *= np.sqrt(complex(v))
    return m


def _complete(base: list[tuple], pool: list[tuple], n: int) -> list[tuple]:
    """Extend ``base`` by vectors from ``pool`` until ``n`` independent columns."""
    cols = list(base)
    r = rank(cols, n) if cols else 0
    for v in pool:
        if len(cols) == n:
            break
        if rank(cols + [v], n) > r:
            cols.append(v)
            r += 1
    if len(cols) != n:
        raise AssertionError("could not complete to a basis")
    return cols


def _standard_complement(vectors: list[tuple], n: int) -> list[tuple]:
    pool = [basis_vector(n, i + 1) for i in range(n)]
    return _complete(vectors, pool, n)[len(vectors):]


def _diagonalize_on(h: Matrix, w: list[tuple], scale=ONE):
    """Order and normalize ``w`` so that ``scale * h`` restricted to it is diagonal.

    Returns ``(exact columns, diagonal)``: columns ``B T`` with the nonzero
    diagonal entries first.  Square roots are applied later.
    """
    if not w:
        return [], []
    b = Matrix.from_columns(w)
    g = (b.T @ h @ b).scale(scale)
    t, d = congruence_reduce(g)
    return (b @ t).columns(), d


def _ones(n: int) -> tuple:
    return (ONE,) * n


def _roots(d) -> tuple:
    """Column scales: exact square roots are folded in later, zeros stay unscaled."""
    return tuple(v if v else ONE for v in d)


def normal_basis(spec: ExtendedSpec):
    """``(CatalogId, P, scales)``.

    The normal basis is ``P`` with column ``i`` divided by ``sqrt(scales[i])``;
    ``P`` is exact and ``scales`` is all ones when no root is needed.
    """
    verdict = classify_extended(spec)
    if not verdict.left_symmetric:
        raise NotLeftSymmetricError("spec does not define a left-symmetric algebra: "
                                    + ", ".join(verdict.violated))
    if verdict.case is None:
        raise ValueError("left-symmetric, but the data fits none of the seven cases")
    n = spec.dim
    h = spec.h.gram
    c = spec.c
    f, g = spec.f.coeffs, spec.g.coeffs
    hc = spec.hc()
    case = verdict.case

    if case == 1:
        w = _standard_complement([c], n)
        cols, d = _diagonalize_on(h, w)
        r = sum(1 for v in d if v)
        return CatalogId("A1", r), Matrix.from_columns([c] + cols), _roots([ONE] + d)

    if case == 2:
        kappa = dot(c, hc)
        return CatalogId("A2"), Matrix.from_columns([vscale(ONE / kappa, c)] + h.nullspace()), _ones(n)

    if case == 3:
        kappa = dot(c, hc)
        if kappa:
            e1 = vscale(ONE / kappa, c)
            w = nullspace([list(hc)], n)
            cols, d = _diagonalize_on(h, w, kappa)
            r = sum(1 for v in d if v)
            if r == n - 1:
                cid, order = CatalogId("A3_1"), list(range(n - 1))
            else:
                cid = CatalogId("A3_2", r)
                order = [r] + list(range(r)) + list(range(r + 1, n - 1))
            cols = [cols[i] for i in order]
            d = [d[i] for i in order]
            return cid, Matrix.from_columns([e1] + cols), _roots([ONE] + d)
        q = next(i for i, v in enumerate(hc) if v)
        u = vscale(ONE / hc[q], basis_vector(n, q + 1))
        huu = dot(u, h @ u)
        u = vsub(u, vscale(huu / 2, c))
        w = nullspace([list(hc), list(h @ u)], n)
        cols, d = _diagonalize_on(h, w)
        r = sum(1 for v in d if v)
        return CatalogId("A3_3", r), Matrix.from_columns([c, u] + cols), _roots([ONE, ONE] + d)

    if case == 4:
        p_idx = symmetric_rank_one_factor(spec.h)
        h_pp, f_p, h_pc = h[p_idx, p_idx], f[p_idx], hc[p_idx]
        kernel = h.nullspace()
        if not h_pc:
            e1 = vscale(ONE / f_p, basis_vector(n, p_idx + 1))
            e2 = vscale(h_pp / (f_p * f_p), c)
            cols = _complete([e1, e2], kernel, n)
            return CatalogId("A4_1"), Matrix.from_columns(cols), _ones(n)
        dd = h_pc * f_p / h_pp
        lam = (h_pc + f_p) / f_p
        p = Matrix.from_columns([vscale(ONE / dd, c)] + kernel)
        return CatalogId("A4_lambda", lam), p, _ones(n)

    if case == 5:
        q = next(i for i, v in enumerate(hc) if v)
        u = vscale(-ONE / hc[q], basis_vector(n, q + 1))
        huu = dot(u, h @ u)
        u = tuple(a + b for a, b in zip(u, vscale(huu / 2, c)))
        w = nullspace([list(hc), list(h @ u)], n)
        cols, d = _diagonalize_on(h, w)
        r = sum(1 for v in d if v)
        return CatalogId("A5", r), Matrix.from_columns([c, u] + cols), _roots([ONE, ONE] + d)

    if case == 6:
        p_idx = symmetric_rank_one_factor(spec.h)
        h_pp, g_p = h[p_idx, p_idx], g[p_idx]
        e1 = vscale(ONE / g_p, basis_vector(n, p_idx + 1))
        e2 = vscale(h_pp / (g_p * g_p), c)
        cols = _complete([e1, e2], h.nullspace(), n)
        return CatalogId("A6"), Matrix.from_columns(cols), _ones(n)

    if case == 7:
        fc = dot(f, c)
        kernel = nullspace([list(f)], n)
        p = Matrix.from_columns([vscale(ONE / fc, c)] + kernel)
        return CatalogId("A7_alpha", verdict.alpha), p, _ones(n)

    raise AssertionError(f"unhandled case {case}")  # pragma: no cover


def identify(spec: ExtendedSpec) -> Identification:
    """Catalog representative of ``spec`` and a homomorphism witness into it."""
    cid, p, scales = normal_basis(spec)
    part = p.inverse()
    # fold exact square roots into the exact part
    folded = []
    rows = [list(r) for r in part.rows]
    for i, v in enumerate(scales):
        root = v.exact_sqrt() if v != ONE else ONE
        if root is not None:
            if root != ONE:
                rows[i] = [root * x for x in rows[i]]
            folded.append(ONE)
        else:
            folded.append(v)
    part = Matrix(rows)
    folded = tuple(folded)
    exact = part if all(v == ONE for v in folded) else None
    return Identification(cid, apply_root_scales(part, folded), exact, part, folded)
