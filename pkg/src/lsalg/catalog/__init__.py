"""Normal forms, identification and isomorphism tests."""

from .families import (
    FAMILIES,
    CatalogError,
    CatalogId,
    catalog_ids,
    generate,
    parse_catalog_id,
)
from .fingerprint import EXACT_FIELDS, Fingerprint, first_difference, fingerprint
from .identify import Identification, identify, normal_basis
from .iso import (
    CatalogMatch,
    IsoKind,
    IsoVerdict,
    are_isomorphic,
    check_homomorphism,
    exceptional_witness,
    homomorphism_residual,
    match_catalog,
    recover_extended_spec,
)

__all__ = [
    "FAMILIES",
    "CatalogError",
    "CatalogId",
    "catalog_ids",
    "generate",
    "parse_catalog_id",
    "EXACT_FIELDS",
    "Fingerprint",
    "first_difference",
    "fingerprint",
    "Identification",
    "identify",
    "normal_basis",
    "CatalogMatch",
    "IsoKind",
    "IsoVerdict",
    "are_isomorphic",
    "check_homomorphism",
    "exceptional_witness",
    "homomorphism_residual",
    "match_catalog",
    "recover_extended_spec",
]
