"""Left-symmetric algebras built from linear functions.

Exact construction, classification and analysis over the Gaussian
rationals, plus a method-of-lines integrator for the generalized Burgers
equation attached to any left-symmetric algebra.
"""

from .core import (
    Algebra,
    DimensionError,
    JacobiError,
    LieAlgebra,
    LinearFunctional,
    NotLeftSymmetricError,
    SymBilinearForm,
    associator,
    basis_vector,
    congruence_diagonalize,
    form_rank,
    is_left_symmetric,
    left_mult,
    multiply,
    right_mult,
    sub_adjacent_lie,
)
from .linalg import Matrix
from .scalar import Scalar, format_scalar, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "DimensionError",
    "JacobiError",
    "LieAlgebra",
    "LinearFunctional",
    "Matrix",
    "NotLeftSymmetricError",
    "Scalar",
    "SymBilinearForm",
    "associator",
    "basis_vector",
    "congruence_diagonalize",
    "form_rank",
    "format_scalar",
    "is_left_symmetric",
    "left_mult",
    "multiply",
    "parse_scalar",
    "right_mult",
    "sub_adjacent_lie",
]
