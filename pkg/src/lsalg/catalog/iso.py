"""Homomorphism checks, isomorphism verdicts and catalog matching."""

from __future__ import annotations

import enum
import functools
import random
from dataclasses import dataclass

import numpy as np
import sympy

from ..construct import (
    ExtendedSpec,
    algebra_from_extended,
    classify_extended,
    normalized_basis_for_functional,
)
from ..core import Algebra, DimensionError, SymBilinearForm, basis_vector, left_mult, right_mult
from ..linalg import Matrix
from ..scalar import ONE, ZERO, Scalar
from .families import FAMILIES, CatalogError, CatalogId, generate
from .fingerprint import first_difference, fingerprint
from .identify import apply_root_scales, identify

__all__ = [
    "HOMOMORPHISM_TOL",
    "check_homomorphism",
    "homomorphism_residual",
    "IsoKind",
    "IsoVerdict",
    "are_isomorphic",
    "exceptional_witness",
    "CatalogMatch",
    "match_catalog",
    "recover_extended_spec",
]

HOMOMORPHISM_TOL = 1e-9


# homomorphisms -------------------------------------------------------------------------

def _exact_residual_zero(a: Algebra, b: Algebra, t: Matrix) -> bool:
    n = a.dim
    cols = t.columns()
    for i in range(n):
        for j in range(n):
            if t @ a.c[i][j] != b.mul(cols[i], cols[j]):
                return False
    return True


def homomorphism_residual(a: Algebra, b: Algebra, t) -> float:
    """``max |T(e_i e_j) - T(e_i) T(e_j)|`` over basis pairs, floating point."""
    tn = t.to_numpy().astype(complex) if isinstance(t, Matrix) else np.asarray(t, dtype=complex)
    ca, cb = a.to_numpy().astype(complex), b.to_numpy().astype(complex)
    # lhs[i, j, :] = T @ ca[i, j, :]; rhs[i, j, :] = sum_pq T[p, i] T[q, j] cb[p, q, :]
    lhs = np.einsum("kl,ijl->ijk", tn, ca)
    rhs = np.einsum("pi,qj,pqk->ijk", tn, tn, cb)
    return float(np.max(np.abs(lhs - rhs))) if a.dim else 0.0


def check_homomorphism(a: Algebra, b: Algebra, t, tol: float = HOMOMORPHISM_TOL) -> bool:
    """Is ``T`` an invertible map with ``T(x *_a y) = T(x) *_b T(y)``?

    Exact when ``T`` is an exact :class:`Matrix`; otherwise the residual and
    the invertibility test use ``tol``.
    """
    n = a.dim
    if b.dim != n:
        raise DimensionError("algebras of different dimension")
    if isinstance(t, Matrix):
        if t.shape != (n, n):
            raise DimensionError(f"map must be {n} x {n}")
        return t.is_invertible() and _exact_residual_zero(a, b, t)
    tn = np.asarray(t, dtype=complex)
    if tn.shape != (n, n):
        raise DimensionError(f"map must be {n} x {n}")
    sv = np.linalg.svd(tn, compute_uv=False)
    if sv[-1] <= tol * max(1.0, sv[0]):
        return False
    return homomorphism_residual(a, b, tn) <= tol


# verdicts --------------------------------------------------------------------------------

class IsoKind(enum.Enum):
    ISOMORPHIC = "Isomorphic"
    NON_ISOMORPHIC = "NonIsomorphic"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class IsoVerdict:
    kind: IsoKind
    witness: Matrix | np.ndarray | None = None
    invariant: str | None = None

    @property
    def isomorphic(self) -> bool:
        return self.kind is IsoKind.ISOMORPHIC

    def as_dict(self) -> dict:
        out = {"verdict": self.kind.value}
        if self.invariant is not None:
            out["invariant"] = self.invariant
        if self.witness is not None:
            out["witness"] = _witness_json(self.witness)
            out["witness_exact"] = isinstance(self.witness, Matrix)
        return out


def _witness_json(t):
    if isinstance(t, Matrix):
        return [[str(v) for v in row] for row in t.rows]
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(t)]


_W_A33_A7 = Matrix([[0, 2], [1, 0]])   # e1 -> e2, e2 -> 2e1
_W_A5_A4 = Matrix([[0, -1], [1, 0]])   # e1 -> e2, e2 -> -e1


def exceptional_witness(src: CatalogId, dst: CatalogId) -> Matrix | None:
    """Exact witness for the two isomorphic pairs of plane normal forms."""
    half, minus_one = Scalar("1/2"), Scalar(-1)
    pairs = {
        (CatalogId("A3_3", 0), CatalogId("A7_alpha", half)): _W_A33_A7,
        (CatalogId("A5", 0), CatalogId("A4_lambda", minus_one)): _W_A5_A4,
    }
    if (src, dst) in pairs:
        return pairs[(src, dst)]
    if (dst, src) in pairs:
        return pairs[(dst, src)].inverse()
    return None


def _candidate_witnesses(n: int):
    if n == 2:
        for w in (_W_A33_A7, _W_A5_A4):
            yield w
            yield w.inverse()


@functools.lru_cache(maxsize=512)
def _exact_fingerprint(a: Algebra):
    return fingerprint(a, idempotents=False)


def are_isomorphic(a: Algebra, b: Algebra, *, use_matching: bool = True, seed: int = 0) -> IsoVerdict:
    """Three-valued isomorphism test.

    NonIsomorphic only with a differing proven invariant; Isomorphic only with
    a verified witness; Unknown otherwise.
    """
    if a.dim != b.dim:
        return IsoVerdict(IsoKind.NON_ISOMORPHIC, invariant="dim")
    fa, fb = _exact_fingerprint(a), _exact_fingerprint(b)
    diff = first_difference(fa, fb)
    if diff is not None:
        return IsoVerdict(IsoKind.NON_ISOMORPHIC, invariant=diff)
    n = a.dim
    if a == b:
        return IsoVerdict(IsoKind.ISOMORPHIC, witness=Matrix.identity(n))
    for w in _candidate_witnesses(n):
        if check_homomorphism(a, b, w):
            return IsoVerdict(IsoKind.ISOMORPHIC, witness=w)
    if use_matching:
        ma, mb = match_catalog(a, seed=seed), match_catalog(b, seed=seed)
        if ma is not None and mb is not None:
            t = _compose_to(ma, mb)
            if t is not None and check_homomorphism(a, b, t):
                return IsoVerdict(IsoKind.ISOMORPHIC, witness=t)
    return IsoVerdict(IsoKind.UNKNOWN)


# catalog matching ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogMatch:
    """``witness`` maps the matched algebra onto ``generate(catalog_id, n)``."""

    catalog_id: CatalogId
    witness: Matrix | np.ndarray


def _compose_to(ma: CatalogMatch, mb: CatalogMatch):
    """Witness ``A -> B`` from two matches onto catalog algebras."""
    n = _dim_of(ma)
    if ma.catalog_id == mb.catalog_id:
        bridge = Matrix.identity(n)
    else:
        bridge = exceptional_witness(ma.catalog_id, mb.catalog_id)
        if bridge is None:
            return None
    ta, tb = ma.witness, mb.witness
    if all(isinstance(t, Matrix) for t in (ta, tb)):
        return tb.inverse() @ bridge @ ta
    to_np = lambda t: t.to_numpy().astype(complex) if isinstance(t, Matrix) else t  # noqa: E731
    return np.linalg.solve(to_np(tb), to_np(bridge) @ to_np(ta))


def _dim_of(m: CatalogMatch) -> int:
    w = m.witness
    return w.nrows if isinstance(w, Matrix) else np.asarray(w).shape[0]


def _structural(a: Algebra) -> CatalogId | None:
    """Catalog id whose generated constants equal ``a`` verbatim, if any."""
    n = a.dim
    c11 = a.c[0][0][0]
    cands = []

    for fam, (kind, _) in FAMILIES.items():
        if fam == "Lie24":
            continue
        if kind is None:
            cands.append(CatalogId(fam))
        elif kind == "k":
            cands += [CatalogId(fam, k) for k in range(1 if fam == "A1" else 0, n)]
        elif c11:
            try:
                cands.append(CatalogId(fam, c11))
            except CatalogError:
                pass
        elif fam == "A4_lambda":
            cands.append(CatalogId(fam, ZERO))
    for cid in cands:
        try:
            if generate(cid, n) == a:
                return cid
        except CatalogError:
            continue
    return None


def _unimodular(n: int, rng: random.Random) -> Matrix:
    """Dense integer matrix ``L U`` with unit triangular factors (determinant 1)."""
    lo = [[ONE if i == j else (Scalar(rng.choice((-2, -1, 1, 2))) if i > j else ZERO)
           for j in range(n)] for i in range(n)]
    up = [[ONE if i == j else (Scalar(rng.choice((-2, -1, 1, 2))) if i < j else ZERO)
           for j in range(n)] for i in range(n)]
    return Matrix(lo) @ Matrix(up)


def recover_extended_spec(a: Algebra) -> ExtendedSpec | None:
    """Data ``(f, g, h, c)`` with ``a`` equal to the extended product, if it is one.

    Needs ``n >= 3``: entries ``C_ij^k`` with ``k`` outside ``{i, j}`` equal
    ``h_ij c_k`` and fix ``h`` and ``c`` up to a common scale when the
    entries are generic enough.  The answer is checked against ``a`` exactly.
    """
    n = a.dim
    if n < 3:
        return None
    C = a.c
    seed = next(((i, j) for i in range(n) for j in range(i, n)
                 if any(C[i][j][k] for k in range(n) if k not in (i, j))), None)
    if seed is None:
        return None
    h: dict = {seed: ONE}
    c: list = [None] * n
    for k in range(n):
        if k not in seed:
            c[k] = C[seed[0]][seed[1]][k]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i, n):
                if (i, j) in h:
                    continue
                k = next((k for k in range(n) if k not in (i, j) and c[k]), None)
                if k is not None:
                    h[(i, j)] = C[i][j][k] / c[k]
                    changed = True
        for k in range(n):
            if c[k] is not None:
                continue
            pair = next(((i, j) for (i, j), v in h.items() if v and k not in (i, j)), None)
            if pair is not None:
                c[k] = C[pair[0]][pair[1]][k] / h[pair]
                changed = True
    c = [ZERO if v is None else v for v in c]
    gram = [[h.get((min(i, j), max(i, j)), ZERO) for j in range(n)] for i in range(n)]
    f = [C[i][(i + 1) % n][(i + 1) % n] - gram[i][(i + 1) % n] * c[(i + 1) % n] for i in range(n)]
    g = [C[(j + 1) % n][j][(j + 1) % n] - gram[(j + 1) % n][j] * c[(j + 1) % n] for j in range(n)]
    try:
        spec = ExtendedSpec(f=f, g=g, h=SymBilinearForm(Matrix(gram)), c=c)
    except ValueError:
        return None
    if algebra_from_extended(spec) != a:
        return None
    return spec


def _match_pair_rule(a: Algebra) -> CatalogMatch | None:
    """``x*y = f(x) y`` (AssocL) or ``x*y = g(y) x`` (AssocR) up to basis change."""
    n = a.dim
    C = a.c
    for side in ("L", "R"):
        if side == "L":
            func = [C[i][(i + 1) % n][(i + 1) % n] for i in range(n)]
        else:
            func = [C[(j + 1) % n][j][(j + 1) % n] for j in range(n)]
        if not any(func):
            continue
        t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if side == "L":
                    t[i][j][j] = func[i]
                else:
                    t[i][j][i] = func[j]
        if Algebra(t) != a:
            continue
        p = normalized_basis_for_functional(func)
        cid = CatalogId("AssocL" if side == "L" else "AssocR")
        return CatalogMatch(cid, p.inverse())
    return None


def _verified(a: Algebra, cid: CatalogId, t) -> CatalogMatch | None:
    try:
        target = generate(cid, a.dim)
    except CatalogError:
        return None
    return CatalogMatch(cid, t) if check_homomorphism(a, target, t) else None


def _match_via_spec(a: Algebra, seed: int, attempts: int = 8) -> CatalogMatch | None:
    rng = random.Random(seed)
    n = a.dim
    for _ in range(attempts):
        q = _unimodular(n, rng)
        moved = a.change_basis(q)          # coordinates x' = q^{-1} x
        spec = recover_extended_spec(moved)
        if spec is None:
            continue
        if classify_extended(spec).case is None:
            continue
        ident = identify(spec)
        qinv = q.inverse()
        part = ident.exact_part @ qinv
        t = part if ident.exact_witness is not None else apply_root_scales(part, ident.root_scales)
        return _verified(a, ident.catalog_id, t)
    return None


def _plane_parameters(a: Algebra) -> list[Scalar]:
    """Candidate ``lambda`` / ``alpha`` values from the trace functionals (n = 2)."""
    n = a.dim
    tl = [left_mult(a, basis_vector(n, i + 1)).trace() for i in range(n)]
    tr = [right_mult(a, basis_vector(n, i + 1)).trace() for i in range(n)]
    out = []
    p = next((i for i in range(n) if tr[i]), None)
    if p is None:
        out.append(ZERO)
    else:
        mu = tl[p] / tr[p]
        if mu != ONE:
            out.append((n - 1) / (mu - ONE))          # A4_lambda: lambda + n - 1 = mu lambda
        if mu * n != ONE:
            out.append(Scalar(n - 1) / (mu * n - ONE))  # A7_alpha: alpha + n - 1 = n alpha mu
    if not any(tl):
        out.append(Scalar(1 - n))
    return out


def _to_sympy(v: Scalar):
    return (sympy.Rational(int(v.re.numerator), int(v.re.denominator))
            + sympy.I * sympy.Rational(int(v.im.numerator), int(v.im.denominator)))


def _from_sympy(v) -> Scalar | None:
    re, im = v.as_real_imag()
    if not (re.is_rational and im.is_rational):
        return None
    return Scalar(f"{re.p}/{re.q}", f"{im.p}/{im.q}")


def _solve_plane(a: Algebra, cid: CatalogId) -> Matrix | np.ndarray | None:
    """Solve ``T(e_i e_j) = T e_i o T e_j`` for an invertible 2 x 2 ``T``."""
    b = generate(cid, 2)
    t = sympy.symbols("t0:4")
    T = sympy.Matrix(2, 2, t)
    ca = [[[_to_sympy(a.c[i][j][k]) for k in range(2)] for j in range(2)] for i in range(2)]
    cb = [[[_to_sympy(b.c[i][j][k]) for k in range(2)] for j in range(2)] for i in range(2)]
    eqs = []
    for i in range(2):
        for j in range(2):
            lhs = T * sympy.Matrix(ca[i][j])
            ti, tj = T[:, i], T[:, j]
            rhs = sympy.zeros(2, 1)
            for p in range(2):
                for q in range(2):
                    coeff = ti[p] * tj[q]
                    for k in range(2):
                        rhs[k] += coeff * cb[p][q][k]
            eqs += [sympy.expand(lhs[k] - rhs[k]) for k in range(2)]
    eqs = [e for e in eqs if e != 0]
    d = sympy.Symbol("d")
    eqs.append(d * T.det() - 1)
    try:
        sols = sympy.solve(eqs, list(t) + [d], dict=True)
    except Exception:  # pragma: no cover
        return None
    for sol in sols:
        mat = T.subs(sol)
        free = mat.free_symbols
        if free:
            mat = mat.subs({s: 1 for s in free})
            if mat.det() == 0:
                mat = T.subs(sol).subs({s: 2 for s in free})
        if mat.free_symbols or mat.det() == 0:
            continue
        entries = [_from_sympy(sympy.nsimplify(v)) for v in mat]
        if all(e is not None for e in entries):
            return Matrix([entries[:2], entries[2:]])
        return np.array([[complex(mat[0, 0]), complex(mat[0, 1])],
                         [complex(mat[1, 0]), complex(mat[1, 1])]])
    return None


def _plane_candidates(a: Algebra) -> list[CatalogId]:
    fa = _exact_fingerprint(a)
    out = []
    fams = ["A1", "A2", "A3_1", "A3_2", "A3_3", "A4_1", "A5", "A6", "AssocL", "AssocR", "Trivial"]
    for fam in fams:
        ks = [0, 1] if fam in ("A1", "A3_2", "A3_3", "A5") else [None]
        for k in ks:
            if fam == "A1" and k == 0:
                continue
            try:
                out.append(CatalogId(fam, k))
            except CatalogError:
                continue
    for val in _plane_parameters(a):
        for fam in ("A4_lambda", "A7_alpha"):
            try:
                out.append(CatalogId(fam, val))
            except CatalogError:
                continue
    keep = []
    for cid in out:
        try:
            fb = _exact_fingerprint(generate(cid, 2))
        except CatalogError:
            continue
        if first_difference(fa, fb) is None:
            keep.append(cid)
    return keep


def match_catalog(a: Algebra, *, seed: int = 0) -> CatalogMatch | None:
    """Catalog normal form of ``a`` with a verified witness, or ``None`` (Unknown)."""
    n = a.dim
    if n < 2:
        return None
    cid = _structural(a)
    if cid is not None:
        return CatalogMatch(cid, Matrix.identity(n))
    if n == 2:
        for cid in _plane_candidates(a):
            t = _solve_plane(a, cid)
            if t is not None:
                m = _verified(a, cid, t)
                if m is not None:
                    return m
        return None
    pair = _match_pair_rule(a)
    if pair is not None:
        return _verified(a, pair.catalog_id, pair.witness)
    return _match_via_spec(a, seed)
