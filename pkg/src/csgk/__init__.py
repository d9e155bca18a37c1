"""Exact computation in the Rédei semigroup <a,b | a^2 b = a, a b^2 = b>, the
bicyclic monoid and two extensions of the former, with exhaustive checkers."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    EquationShape,
    WitnessPair,
    apply_translation,
    green_witness,
    h_related,
    hom_h,
    is_fixed,
    is_idempotent,
    mul_b,
    mul_c,
    phi,
    pow_c,
    simple_witness,
    solve_equation,
)
from .elements import BicyclicNF, CanonC, Cell, Region  # noqa: E402
from .extensions import Zero, star_mul, zero_mul  # noqa: E402
from .words import oracle_mul_c, parse_word, reduce_c, to_normal_b, to_normal_c, from_normal_c  # noqa: E402

__all__ = [
    "BicyclicNF",
    "CanonC",
    "Cell",
    "EquationShape",
    "Region",
    "WitnessPair",
    "Zero",
    "apply_translation",
    "from_normal_c",
    "green_witness",
    "h_related",
    "hom_h",
    "is_fixed",
    "is_idempotent",
    "mul_b",
    "mul_c",
    "oracle_mul_c",
    "parse_word",
    "phi",
    "pow_c",
    "reduce_c",
    "simple_witness",
    "solve_equation",
    "star_mul",
    "to_normal_b",
    "to_normal_c",
    "zero_mul",
]
