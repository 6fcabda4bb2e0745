"""Classification of linear codes over Z4 up to monomial equivalence."""

__version__ = "0.1.0"

from .code_model import (  # noqa: E402
    BinaryCode,
    CodeType,
    StandardGenerator,
    Z4Code,
    compute_type,
    dual,
    has_zero_coordinate,
    residue,
    span,
    trivial_extension,
)
from .equivalence import Monomial, apply_monomial, are_equivalent, fingerprint, partition_classes  # noqa: E402
from .weights import enumerator, weight_profile  # noqa: E402

__all__ = [
    "BinaryCode",
    "CodeType",
    "Monomial",
    "StandardGenerator",
    "Z4Code",
    "apply_monomial",
    "are_equivalent",
    "compute_type",
    "dual",
    "enumerator",
    "fingerprint",
    "has_zero_coordinate",
    "partition_classes",
    "residue",
    "span",
    "trivial_extension",
    "weight_profile",
]
