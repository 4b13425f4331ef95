"""Three-valued answers for budgeted decision procedures.

Free self-distributive structures admit no cheap word problem, so equality
and order queries on them are semi-decisions with an explicit budget; the
third value records that the budget ran out before a certificate was found.
"""

from enum import Enum


class Tri(Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    UNDECIDED = "undecided"


class Order(Enum):
    LESS = "less"
    NOT_COMPARABLE_AT_DEPTH = "not_comparable_at_depth"
    UNDECIDED = "undecided"


def tri_from_bool(value: bool) -> Tri:
    return Tri.EQUAL if value else Tri.NOT_EQUAL
