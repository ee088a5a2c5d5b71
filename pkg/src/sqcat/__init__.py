"""Finite squares categories: validation, the object-relation group, and
the fundamental group of the diagonal nerve."""

from .core import (
    Cocone,
    FiniteCategory,
    Morphism,
    Square,
    SquaresCategory,
    ValidationReport,
    Violation,
    identity_name,
    is_distinguished,
    restricted_coproduct,
    validate_category,
    validate_squares_category,
)
from .closure import (
    GeneratingData,
    StarReport,
    StarWitness,
    check_star_condition,
    generate_from_squares,
)
from .k0 import (
    AbelianInvariants,
    IntegerMatrix,
    SNFResult,
    k0_invariants,
    k0_presentation_matrix,
    smith_normal_form,
    valuation_defects,
)
from .nerve import (
    CW2,
    Chain,
    GroupPresentation,
    VerticalTransformation,
    abelianize,
    diagonal_2_skeleton,
    enumerate_chain_transformations,
    enumerate_chains,
    pi1_presentation,
)
from .gallery import (
    example,
    example_names,
    finset_category,
    grid_interval_category,
    one_object_category,
    two_object_category,
    vect_f2_category,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants", "CW2", "Chain", "Cocone", "FiniteCategory",
    "GeneratingData", "GroupPresentation", "IntegerMatrix", "Morphism",
    "SNFResult", "Square", "SquaresCategory", "StarReport", "StarWitness",
    "ValidationReport", "VerticalTransformation", "Violation", "abelianize",
    "check_star_condition", "diagonal_2_skeleton",
    "enumerate_chain_transformations", "enumerate_chains", "example",
    "example_names", "finset_category", "generate_from_squares",
    "grid_interval_category", "identity_name", "is_distinguished",
    "k0_invariants", "k0_presentation_matrix", "one_object_category",
    "pi1_presentation", "restricted_coproduct", "smith_normal_form",
    "two_object_category", "validate_category", "validate_squares_category",
    "valuation_defects", "vect_f2_category",
]
