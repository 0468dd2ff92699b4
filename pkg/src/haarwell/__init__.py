"""haarwell: exact Weingarten calculus for U(n), O(n) and O_n^+."""

from .errors import (
    CapExceededError,
    HaarwellError,
    ParseError,
    PoleError,
    SingularMatrixError,
    SizeMismatchError,
)
from .exactmath import ExactMatrix, IntPolynomial, RationalFunction, evaluate_at
from .integrate import MomentQuery, integrate, parse_monomial, unbalanced_zero
from .pairings import PairPartition, enumerate_noncrossing, enumerate_pairings, loops
from .symmetric import CycleType, Permutation, YoungDiagram, character, cycle_type
from .weingarten import GroupKind, WeingartenTable, get_table

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "CycleType",
    "ExactMatrix",
    "GroupKind",
    "HaarwellError",
    "IntPolynomial",
    "MomentQuery",
    "PairPartition",
    "ParseError",
    "Permutation",
    "PoleError",
    "RationalFunction",
    "SingularMatrixError",
    "SizeMismatchError",
    "WeingartenTable",
    "YoungDiagram",
    "character",
    "cycle_type",
    "enumerate_noncrossing",
    "enumerate_pairings",
    "evaluate_at",
    "get_table",
    "integrate",
    "loops",
    "parse_monomial",
    "unbalanced_zero",
]
