import itertools

import pytest

from vbraid.decision import Order, Tri
from vbraid.errors import ParseError
from vbraid.freeshelf import (FreeShelfCarrier, dehornoy_less, devirtualize,
                              enumerate_terms, equal_in_free_shelf,
                              format_term, ld_neighbors, parse_term,
                              shift_subscripts, term_invariants)


def test_parse_and_format():
    t = parse_term("((x0*x0)*x1)")
    assert t == ((0, 0), 1)
    assert format_term(t) == "((x0*x0)*x1)"
    assert parse_term("x-3") == -3
    assert parse_term("x") == 0
    with pytest.raises(ParseError):
        parse_term("(x0*x0")
    with pytest.raises(ParseError):
        parse_term("x0*x0")


def test_term_invariants_examples():
    inv = term_invariants(((0, 0), 0))
    assert (inv.length, inv.first, inv.first_multiset) == (2, 0, (0, 0))
    inv = term_invariants(5)
    assert (inv.length, inv.first, inv.first_multiset) == (0, 5, ())
    inv = term_invariants(((1, 2), (3, 4)))
    assert (inv.length, inv.first, inv.first_multiset) == (2, 1, (2, 3))


def test_ld_neighbors_examples():
    assert ld_neighbors(((0, 0), 0), "expand") == {((0, 0), (0, 0))}
    assert ld_neighbors(0, "contract") == frozenset()
    assert ld_neighbors((0, 0), "expand") == frozenset()
    assert ld_neighbors(((0, 0), (0, 0)), "contract") == {((0, 0), 0)}


def test_rewrites_inside_subterms():
    t = (((0, 0), 0), 1)  # redex in the left child
    expanded = ld_neighbors(t, "expand")
    assert (((0, 1), (0, 1)), ...) not in expanded  # only the inner redex fires at depth
    assert (((0, 0), (0, 0)), 1) in expanded  # rewrite of the left child
    assert (((0, 1), (0, 1))) not in expanded


def test_invariants_constant_on_rewrite_orbit():
    for t in enumerate_terms(4, (0, 1, 2)):
        inv = term_invariants(t)
        for direction in ("expand", "contract"):
            for nb in ld_neighbors(t, direction):
                assert term_invariants(nb) == inv


def test_equality_examples():
    assert equal_in_free_shelf(((0, 0), 0), ((0, 0), (0, 0))) is Tri.EQUAL
    assert equal_in_free_shelf(0, (0, 0)) is Tri.NOT_EQUAL  # lengths differ
    assert equal_in_free_shelf(0, 1) is Tri.NOT_EQUAL  # first subscripts differ
    assert equal_in_free_shelf(0, 0) is Tri.EQUAL


def test_equality_against_orbit_oracle():
    # every term reachable by a few rewrites must be recognized as equal
    for t in enumerate_terms(4, (0,)):
        frontier = {t}
        seen = {t}
        for _ in range(3):
            frontier = {nb for s in frontier
                        for nb in ld_neighbors(s, "expand") | ld_neighbors(s, "contract")
                        } - seen
            seen |= frontier
        for other in seen:
            assert equal_in_free_shelf(t, other) is Tri.EQUAL


def test_equality_never_lies_on_invariants():
    terms = enumerate_terms(3, (0, 1))
    for t1 in terms:
        for t2 in terms:
            verdict = equal_in_free_shelf(t1, t2, depth=4, max_visited=2000)
            if term_invariants(t1) != term_invariants(t2):
                assert verdict is Tri.NOT_EQUAL
            else:
                assert verdict is not Tri.NOT_EQUAL


def test_dehornoy_examples():
    x = 0
    assert dehornoy_less(x, (x, x)) is Order.LESS
    assert dehornoy_less(1, 2) is Order.NOT_COMPARABLE_AT_DEPTH
    assert dehornoy_less(x, x) is Order.NOT_COMPARABLE_AT_DEPTH
    # generators are minimal: nothing is below a leaf
    assert dehornoy_less((x, x), x) is Order.NOT_COMPARABLE_AT_DEPTH
    # transitivity within the budget: x < x*x < (x*x)*(x*x)
    assert dehornoy_less(x, ((x, x), (x, x))) is Order.LESS


def test_dehornoy_antisymmetric_on_small_terms():
    terms = enumerate_terms(4, (0,))
    for t1, t2 in itertools.combinations(terms, 2):
        down = dehornoy_less(t1, t2, depth=4, max_visited=3000)
        up = dehornoy_less(t2, t1, depth=4, max_visited=3000)
        assert not (down is Order.LESS and up is Order.LESS)


def test_devirtualize():
    assert devirtualize(3) == 0
    assert devirtualize((1, 2)) == (0, 0)
    assert devirtualize(devirtualize(((5, -1), 2))) == devirtualize(((5, -1), 2))


def test_devirtualize_commutes_with_rewrites():
    # Expansion depends only on the tree shape, so it commutes with leaf
    # relabeling on the nose.  Contraction requires syntactically equal
    # right factors, which relabeling to a single generator can create, so
    # only the inclusion holds there: ((x0*x0)*(x0*x1)) has no contraction
    # but its image ((x0*x0)*(x0*x0)) does.
    for t in enumerate_terms(4, (0, 1, 2)):
        lhs = {devirtualize(nb) for nb in ld_neighbors(t, "expand")}
        assert lhs == set(ld_neighbors(devirtualize(t), "expand"))
        contracted = {devirtualize(nb) for nb in ld_neighbors(t, "contract")}
        assert contracted <= set(ld_neighbors(devirtualize(t), "contract"))
    witness = ((0, 0), (0, 1))
    assert ld_neighbors(witness, "contract") == frozenset()
    assert ld_neighbors(devirtualize(witness), "contract") == {((0, 0), 0)}


def test_subscript_shift_is_a_morphism():
    t = ((1, -2), 0)
    assert shift_subscripts(t, 1) == ((2, -1), 1)
    assert shift_subscripts(shift_subscripts(t, 1), -1) == t
    a, b = (1, 2), 3
    assert shift_subscripts((a, b), 5) == (shift_subscripts(a, 5),
                                           shift_subscripts(b, 5))


def test_carrier_contract():
    carrier = FreeShelfCarrier(virtual=True)
    assert carrier.op(0, 1) == (0, 1)
    assert carrier.f(0) == 1 and carrier.f_inv(carrier.f(0)) == 0
    assert carrier.equal((0, 0), (0, 0)) is Tri.EQUAL
    assert carrier.parse_elem("((x0*x0)*x1)") == ((0, 0), 1)
    plain = FreeShelfCarrier(virtual=False)
    with pytest.raises(ParseError):
        plain.parse_elem("x2")
