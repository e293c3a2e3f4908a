"""Normal forms of the algebras built from linear functions.

Each family is addressed by a :class:`CatalogId`.  ``generate`` returns the
structure constants exactly as the normal forms are printed (only nonzero
products listed):

======================  ====================================================
``A1(k)``               ``e_j e_j = e_1``, ``j = 2..k+1``
``A2``                  ``e_1 e_1 = e_1``
``A3_1``                ``e_1e_1 = 2e_1, e_1e_j = e_j, e_je_j = e_1``
``A3_2(k)``             ``e_1e_1 = 2e_1, e_1e_j = e_j``, ``e_le_l = e_1`` for ``l = 3..k+2``
``A3_3(k)``             ``e_1e_2 = e_1, e_2e_1 = 2e_1, e_2e_2 = e_2, e_2e_j = e_j``,
                        ``e_le_l = e_1`` for ``l = 3..k+2``
``A4_1``                ``e_1e_1 = e_1 + e_2, e_1e_j = e_j``
``A4_lambda(l)``        ``e_1e_1 = l e_1, e_1e_j = e_j`` (``l`` not 1 or 2)
``A5(k)``               ``e_2e_1 = -e_1, e_2e_2 = e_2, e_je_2 = e_j``,
                        ``e_le_l = e_1`` for ``l = 3..k+2``
``A6``                  ``e_1e_1 = e_1 + e_2, e_je_1 = e_j``
``A7_alpha(a)``         ``e_1e_1 = a e_1, e_1e_j = e_j, e_je_1 = a e_j`` (``a != 0``)
``AssocL``              ``L_{e_1} = Id``
``AssocR``              ``R_{e_1} = Id``
``Trivial``             all products zero
``Lie24``               Lie bracket ``[e_1, e_i] = e_i``
======================  ====================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..core import Algebra, LieAlgebra
from ..scalar import ONE, Scalar, as_scalar, format_scalar, parse_scalar

__all__ = ["CatalogId", "CatalogError", "FAMILIES", "generate", "catalog_ids", "parse_catalog_id"]


class CatalogError(ValueError):
    """Unknown family or parameter outside its admissible range."""


# family -> (parameter kind, cli name)
FAMILIES = {
    "A1": ("k", "a1"),
    "A2": (None, "a2"),
    "A3_1": (None, "a3.1"),
    "A3_2": ("k", "a3.2"),
    "A3_3": ("k", "a3.3"),
    "A4_1": (None, "a4.1"),
    "A4_lambda": ("scalar", "a4"),
    "A5": ("k", "a5"),
    "A6": (None, "a6"),
    "A7_alpha": ("scalar", "a7"),
    "AssocL": (None, "assocL"),
    "AssocR": (None, "assocR"),
    "Trivial": (None, "trivial"),
    "Lie24": (None, "lie24"),
}

_CLI_TO_FAMILY = {cli.lower(): fam for fam, (_, cli) in FAMILIES.items()}

_K_MAX_OFFSET = {"A1": 1, "A3_2": 2, "A3_3": 2, "A5": 2}


@dataclass(frozen=True)
class CatalogId:
    family: str
    param: int | Scalar | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CatalogError(f"unknown family {self.family!r}")
        kind = FAMILIES[self.family][0]
        if kind is None and self.param is not None:
            raise CatalogError(f"{self.family} takes no parameter")
        if kind == "k":
            if not isinstance(self.param, int) or isinstance(self.param, bool):
                raise CatalogError(f"{self.family} needs an integer k")
        if kind == "scalar":
            if self.param is None:
                raise CatalogError(f"{self.family} needs a scalar parameter")
            object.__setattr__(self, "param", as_scalar(self.param))
            if self.family == "A4_lambda" and self.param in (ONE, ONE + ONE):
                raise CatalogError("A4_lambda requires lambda not in {1, 2}")
            if self.family == "A7_alpha" and not self.param:
                raise CatalogError("A7_alpha requires alpha != 0")

    def check_dim(self, n: int) -> None:
        if n < 2:
            raise CatalogError("catalog families need n >= 2")
        if self.family in _K_MAX_OFFSET:
            top = n - _K_MAX_OFFSET[self.family]
            if not 0 <= self.param <= top:
                raise CatalogError(f"{self.family} needs 0 <= k <= {top} in dimension {n}")

    @property
    def cli_name(self) -> str:
        cli = FAMILIES[self.family][1]
        if self.param is None:
            return cli
        p = format_scalar(self.param) if isinstance(self.param, Scalar) else str(self.param)
        return f"{cli}:{p.replace(' ', '')}"

    def __str__(self):
        if self.param is None:
            return self.family
        p = format_scalar(self.param) if isinstance(self.param, Scalar) else str(self.param)
        return f"{self.family}({p})"


def parse_catalog_id(text: str) -> CatalogId:
    """Parse CLI names such as ``a3.2:1``, ``a4:-1``, ``a7:1/2``, ``assocL``."""
    name, _, param = text.strip().partition(":")
    fam = _CLI_TO_FAMILY.get(name.lower())
    if fam is None:
        raise CatalogError(f"unknown family {name!r}")
    kind = FAMILIES[fam][0]
    if kind is None:
        if param:
            raise CatalogError(f"{name} takes no parameter")
        return CatalogId(fam)
    if not param:
        raise CatalogError(f"{name} needs a parameter, e.g. {name}:1")
    if kind == "k":
        try:
            return CatalogId(fam, int(param))
        except ValueError:
            raise CatalogError(f"bad integer parameter {param!r}") from None
    try:
        return CatalogId(fam, parse_scalar(param))
    except ValueError as exc:
        raise CatalogError(str(exc)) from None


@lru_cache(maxsize=None)
def generate(cid: CatalogId, n: int) -> Algebra:
    """Structure constants of the normal form ``cid`` in dimension ``n``."""
    cid.check_dim(n)
    fam, k = cid.family, cid.param
    p: dict = {}

    def put(i, j, terms):
        p[(i, j)] = terms

    rest = range(2, n + 1)
    if fam == "A1":
        for j in range(2, k + 2):
            put(j, j, {1: 1})
    elif fam == "A2":
        put(1, 1, {1: 1})
    elif fam in ("A3_1", "A3_2"):
        put(1, 1, {1: 2})
        for j in rest:
            put(1, j, {j: 1})
        diag = rest if fam == "A3_1" else range(3, k + 3)
        for l in diag:
            put(l, l, {1: 1})
    elif fam == "A3_3":
        put(1, 2, {1: 1})
        put(2, 1, {1: 2})
        put(2, 2, {2: 1})
        for j in range(3, n + 1):
            put(2, j, {j: 1})
        for l in range(3, k + 3):
            put(l, l, {1: 1})
    elif fam == "A4_1":
        put(1, 1, {1: 1, 2: 1})
        for j in rest:
            put(1, j, {j: 1})
    elif fam == "A4_lambda":
        put(1, 1, {1: k})
        for j in rest:
            put(1, j, {j: 1})
    elif fam == "A5":
        put(2, 1, {1: -1})
        put(2, 2, {2: 1})
        for j in range(3, n + 1):
            put(j, 2, {j: 1})
        for l in range(3, k + 3):
            put(l, l, {1: 1})
    elif fam == "A6":
        put(1, 1, {1: 1, 2: 1})
        for j in rest:
            put(j, 1, {j: 1})
    elif fam == "A7_alpha":
        put(1, 1, {1: k})
        for j in rest:
            put(1, j, {j: 1})
            put(j, 1, {j: k})
    elif fam == "AssocL":
        for j in range(1, n + 1):
            put(1, j, {j: 1})
    elif fam == "AssocR":
        for j in range(1, n + 1):
            put(j, 1, {j: 1})
    elif fam == "Lie24":
        for j in rest:
            put(1, j, {j: 1})
            put(j, 1, {j: -1})
        return LieAlgebra(Algebra.from_products(n, p).c)
    return Algebra.from_products(n, p)


DEFAULT_LAMBDAS = ("-1", "0", "3", "5/2")
DEFAULT_ALPHAS = ("1/2", "1", "2")


def catalog_ids(n: int, *, lambdas=DEFAULT_LAMBDAS, alphas=DEFAULT_ALPHAS,
                include_lie: bool = False, include_a1_zero: bool = False) -> list[CatalogId]:
    """Every left-symmetric normal form in dimension ``n`` at sampled parameters.

    ``A1(0)`` has the same (zero) structure constants as ``Trivial`` and is
    left out unless ``include_a1_zero`` is set.
    """
    ids = [CatalogId("A1", k) for k in range(0 if include_a1_zero else 1, n)]
    ids.append(CatalogId("A2"))
    ids.append(CatalogId("A3_1"))
    ids += [CatalogId("A3_2", k) for k in range(n - 1)]
    ids += [CatalogId("A3_3", k) for k in range(n - 1)]
    ids.append(CatalogId("A4_1"))
    ids += [CatalogId("A4_lambda", parse_scalar(l)) for l in lambdas]
    ids += [CatalogId("A5", k) for k in range(n - 1)]
    ids.append(CatalogId("A6"))
    ids += [CatalogId("A7_alpha", parse_scalar(a)) for a in alphas]
    ids += [CatalogId("AssocL"), CatalogId("AssocR"), CatalogId("Trivial")]
    if include_lie:
        ids.append(CatalogId("Lie24"))
    return ids
