"""Exact Norton algebras of Hamming-type graph families.

Spectra via linear characters, closed-form Norton products verified against a
projection oracle, idempotent classification, automorphism actions, and
associative-spectrum counting, all in exact cyclotomic arithmetic.
"""

from .cyclotomic import Cyclotomic, cyclotomic_polynomial, root_power
from .errors import BudgetExceededError
from .families import make_family
from .norton import (
    AlgebraVector,
    BasisAlgebra,
    classified_idempotents,
    closed_form_product,
    eta,
    find_identity,
    oracle_product,
    verify_isomorphism,
    verify_oracle_space,
)
from .trees import count_classes_exact, count_classes_witness, enumerate_trees

__all__ = [
    "AlgebraVector",
    "BasisAlgebra",
    "BudgetExceededError",
    "Cyclotomic",
    "classified_idempotents",
    "closed_form_product",
    "count_classes_exact",
    "count_classes_witness",
    "cyclotomic_polynomial",
    "enumerate_trees",
    "eta",
    "find_identity",
    "make_family",
    "oracle_product",
    "root_power",
    "verify_isomorphism",
    "verify_oracle_space",
]
