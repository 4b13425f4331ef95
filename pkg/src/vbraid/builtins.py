"""Named built-in structures so every computation is runnable without
authoring input files.

Carrier names: trivial1, dihedral<m>, alexander<m>,<t>, cyclic-rack,
conj-free<n>, vconj<n>, free-shelf, free-virtual-shelf, group-s3 (the
conjugation quandle of S_3).  Braided-object names add burau, twisted-burau,
uaa-dual-numbers, leibniz-solv2, group-s3 (the adjoint braiding).
"""

from __future__ import annotations

import re

from .action import ActionPair, rack_pair, virtual_rack_pair
from .errors import ParseError
from .freeshelf import FreeShelfCarrier
from .gsd import GsdStructure, from_finite_shelf, from_leibniz, from_uaa
from .linrep import (GroupTable, LinearBraidedObject, assoc_braiding,
                     burau_object, dual_numbers, group_hopf_braiding,
                     leibniz_braiding, solvable2_bracket,
                     symmetric_group_table, twisted_burau_object)
from .sdstruct import (ConjQuandle, CyclicRack, FiniteCarrier, FiniteRackTable,
                       VConjQuandle, alexander_quandle, dihedral_table,
                       trivial_quandle)

_DIHEDRAL = re.compile(r"dihedral(\d+)$")
_ALEXANDER = re.compile(r"alexander(\d+),(\d+)$")
_CONJ = re.compile(r"conj-free(\d+)$")
_VCONJ = re.compile(r"vconj(\d+)$")


def conjugation_table(group: GroupTable) -> FiniteRackTable:
    """The conjugation quandle of a finite group as an operation table."""
    m = group.order
    op = tuple(tuple(group.conj(a, b) for b in range(m)) for a in range(m))
    inv = tuple(
        tuple(group.mul(group.mul(b, a), group.inverse(b)) for b in range(m))
        for a in range(m))
    return FiniteRackTable(m, op, inv=inv)


def s3_group() -> GroupTable:
    return symmetric_group_table(3)[0]


def builtin_table(name: str) -> FiniteRackTable | None:
    if name == "trivial1":
        return trivial_quandle(1)
    if m := _DIHEDRAL.match(name):
        return dihedral_table(int(m.group(1)))
    if m := _ALEXANDER.match(name):
        return alexander_quandle(int(m.group(1)), int(m.group(2)))
    if name == "group-s3":
        return conjugation_table(s3_group())
    return None


def builtin_carrier(name: str, depth: int = 8, max_visited: int = 100_000):
    table = builtin_table(name)
    if table is not None:
        return FiniteCarrier(table, name=name)
    if name == "cyclic-rack":
        return CyclicRack()
    if m := _CONJ.match(name):
        return ConjQuandle(int(m.group(1)))
    if m := _VCONJ.match(name):
        return VConjQuandle(int(m.group(1)))
    if name == "free-shelf":
        return FreeShelfCarrier(False, depth, max_visited)
    if name == "free-virtual-shelf":
        return FreeShelfCarrier(True, depth, max_visited)
    raise ParseError(f"unknown structure name {name!r}")


def is_virtual_carrier(carrier) -> bool:
    return getattr(carrier, "f", None) is not None \
        and getattr(carrier, "f_inv", None) is not None \
        and not isinstance(carrier, CyclicRack)


def builtin_pair(name: str, depth: int = 8, max_visited: int = 100_000,
                 seed: int = 0) -> ActionPair:
    """The action pair of a named carrier; carriers built around a
    virtualizing automorphism act virtually, the rest act with the flip."""
    carrier = builtin_carrier(name, depth, max_visited)
    if is_virtual_carrier(carrier):
        return virtual_rack_pair(carrier, seed=seed)
    return rack_pair(carrier, seed=seed)


def builtin_object(name: str) -> LinearBraidedObject:
    if name == "burau":
        return burau_object()
    if name == "twisted-burau":
        return twisted_burau_object()
    if name == "uaa-dual-numbers":
        return assoc_braiding(dual_numbers())
    if name == "leibniz-solv2":
        return leibniz_braiding(solvable2_bracket())
    if name == "group-s3":
        return group_hopf_braiding(s3_group())
    table = builtin_table(name)
    if table is not None:
        from .gsd import braided_object_of
        return braided_object_of(from_finite_shelf(table, name=name))
    raise ParseError(f"unknown object name {name!r}")


def builtin_gsd(name: str) -> GsdStructure:
    table = builtin_table(name)
    if table is not None:
        return from_finite_shelf(table, name=name)
    if name == "uaa-dual-numbers":
        return from_uaa(dual_numbers(), counit=(1, 0))
    if name == "leibniz-solv2":
        return from_leibniz(solvable2_bracket())
    raise ParseError(f"unknown generalized SD structure {name!r}")
