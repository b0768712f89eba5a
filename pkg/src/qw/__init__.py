"""Finite-universe workbench for generalized quantifiers, permutation groups,
and definability checks, verified against brute-force oracles."""

from .errors import (
    CapabilityError,
    DomainError,
    InvalidInputError,
    MalformedFileError,
    ParseError,
    QwError,
)
from .kernel import (
    Group,
    PartialInjection,
    Permutation,
    Relation,
    apply_to_relation,
    compose,
    downward_closure,
    extend_partial_injection,
    group_from_generators,
    index_tuple,
    orbit_equivalent,
    orbit_of_relation,
    orbit_of_tuple,
    tuple_index,
)

__all__ = [
    "CapabilityError",
    "DomainError",
    "InvalidInputError",
    "MalformedFileError",
    "ParseError",
    "QwError",
    "Group",
    "PartialInjection",
    "Permutation",
    "Relation",
    "apply_to_relation",
    "compose",
    "downward_closure",
    "extend_partial_injection",
    "group_from_generators",
    "index_tuple",
    "orbit_equivalent",
    "orbit_of_relation",
    "orbit_of_tuple",
    "tuple_index",
]
