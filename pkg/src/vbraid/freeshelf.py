"""Terms of free (virtual) shelves and their bounded decision procedures.

Elements of the free shelf on generators x_k (k ranging over the integers)
are classes of binary trees under the self-distributivity rewrite

    (a * b) * c  <->  (a * c) * (b * c)

applied at any position.  A term is a nested pair; a leaf is the integer
subscript of its generator.  The free virtual shelf on one generator is the
free shelf on the x_k via x_k = f^k(x), so the virtualizing automorphism is
just a uniform subscript shift.

The rewrite preserves three cheap invariants of a term decomposed along its
left spine as ((x_f * t_1) * ... ) * t_k: the length k, the first subscript
f, and the multiset of first subscripts of t_1..t_k.  Those invariants give
sound NOT_EQUAL answers; EQUAL answers come from a budgeted bidirectional
search over the rewrite graph, and everything else is UNDECIDED.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .decision import Order, Tri
from .errors import ParseError

# A term is an int (leaf subscript) or a pair (left, right).
ShelfTerm = object


def node(left: ShelfTerm, right: ShelfTerm) -> tuple:
    return (left, right)


def is_leaf(t: ShelfTerm) -> bool:
    return isinstance(t, int)


def leaf_count(t: ShelfTerm) -> int:
    if is_leaf(t):
        return 1
    return leaf_count(t[0]) + leaf_count(t[1])


def format_term(t: ShelfTerm) -> str:
    if is_leaf(t):
        return f"x{t}"
    return f"({format_term(t[0])}*{format_term(t[1])})"


def parse_term(text: str) -> ShelfTerm:
    """Parse ``x<k>`` leaves and ``(term*term)`` nodes; subscripts may be
    negative, and bare ``x`` abbreviates ``x0``."""
    text = text.strip()
    pos = 0

    def term():
        nonlocal pos
        if pos < len(text) and text[pos] == "(":
            pos += 1
            left = term()
            if pos >= len(text) or text[pos] != "*":
                raise ParseError(f"expected '*' at position {pos} in {text!r}")
            pos += 1
            right = term()
            if pos >= len(text) or text[pos] != ")":
                raise ParseError(f"expected ')' at position {pos} in {text!r}")
            pos += 1
            return (left, right)
        if pos < len(text) and text[pos] == "x":
            pos += 1
            start = pos
            if pos < len(text) and text[pos] == "-":
                pos += 1
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            return int(text[start:pos]) if pos > start else 0
        raise ParseError(f"unexpected character at position {pos} in {text!r}")

    out = term()
    if pos != len(text):
        raise ParseError(f"trailing input after position {pos} in {text!r}")
    return out


@dataclass(frozen=True)
class TermInvariants:
    length: int
    first: int
    first_multiset: tuple[int, ...]  # sorted with multiplicity


def term_invariants(t: ShelfTerm) -> TermInvariants:
    """Decompose along the left spine and read off (length, first subscript,
    multiset of first subscripts of the spine arguments)."""
    firsts = []
    while not is_leaf(t):
        firsts.append(_first_subscript(t[1]))
        t = t[0]
    firsts.reverse()
    return TermInvariants(len(firsts), t, tuple(sorted(firsts)))


def _first_subscript(t: ShelfTerm) -> int:
    while not is_leaf(t):
        t = t[0]
    return t


def devirtualize(t: ShelfTerm) -> ShelfTerm:
    """Relabel every leaf to subscript 0 (the shelf morphism x_k -> x)."""
    if is_leaf(t):
        return 0
    return (devirtualize(t[0]), devirtualize(t[1]))


def shift_subscripts(t: ShelfTerm, delta: int) -> ShelfTerm:
    """The virtualizing automorphism f^delta: add delta to every subscript."""
    if is_leaf(t):
        return t + delta
    return (shift_subscripts(t[0], delta), shift_subscripts(t[1], delta))


def ld_neighbors(t: ShelfTerm, direction: str = "expand") -> frozenset:
    """All terms one self-distributivity rewrite away.

    ``expand`` applies (a*b)*c -> (a*c)*(b*c); ``contract`` applies the
    reverse, which requires the two copies of c to match syntactically.
    """
    if direction not in ("expand", "contract"):
        raise ParseError("direction must be 'expand' or 'contract'")
    out: set = set()
    _collect_rewrites(t, direction, lambda s: out.add(s))
    return frozenset(out)


def _collect_rewrites(t: ShelfTerm, direction: str, emit) -> None:
    if is_leaf(t):
        return
    left, right = t
    if direction == "expand":
        if not is_leaf(left):
            a, b = left
            emit(((a, right), (b, right)))
    else:
        if not is_leaf(left) and not is_leaf(right):
            a, c1 = left
            b, c2 = right
            if c1 == c2:
                emit(((a, b), c1))
    _collect_rewrites(left, direction, lambda s: emit((s, right)))
    _collect_rewrites(right, direction, lambda s: emit((left, s)))


def _all_neighbors(t: ShelfTerm) -> frozenset:
    return ld_neighbors(t, "expand") | ld_neighbors(t, "contract")


DEFAULT_DEPTH = 8
DEFAULT_MAX_VISITED = 100_000


def equal_in_free_shelf(t1: ShelfTerm, t2: ShelfTerm,
                        depth: int = DEFAULT_DEPTH,
                        max_visited: int = DEFAULT_MAX_VISITED) -> Tri:
    """Budgeted equality in the free shelf.

    NOT_EQUAL is certified by an invariant mismatch, or by exhausting one
    term's entire rewrite component without meeting the other (components
    of small terms are often finite: x*x admits no rewrite at all).  EQUAL
    is certified by connecting the two terms within ``depth`` rewrites
    (bidirectional breadth-first search).  Anything else is UNDECIDED.
    """
    if t1 == t2:
        return Tri.EQUAL
    if term_invariants(t1) != term_invariants(t2):
        return Tri.NOT_EQUAL
    left = {t1}
    right = {t2}
    seen_left = {t1}
    seen_right = {t2}
    visited = 2
    for _ in range(depth):
        # grow the smaller frontier
        if left and (len(left) <= len(right) or not right):
            frontier, seen, other = left, seen_left, seen_right
            side = "L"
        elif right:
            frontier, seen, other = right, seen_right, seen_left
            side = "R"
        else:
            break
        new: set = set()
        for term in frontier:
            for nb in _all_neighbors(term):
                if nb in other:
                    return Tri.EQUAL
                if nb not in seen:
                    seen.add(nb)
                    new.add(nb)
                    visited += 1
                    if visited > max_visited:
                        return Tri.UNDECIDED
        if side == "L":
            left = new
        else:
            right = new
        if not new:
            # the whole equivalence class on this side has been enumerated
            return Tri.NOT_EQUAL
    return Tri.UNDECIDED


def dehornoy_less(t1: ShelfTerm, t2: ShelfTerm,
                  depth: int = DEFAULT_DEPTH,
                  max_visited: int = DEFAULT_MAX_VISITED) -> Order:
    """Budgeted test for t1 < t2 in the order generated by
    ``a = c <| b implies b < a``.

    LESS when, within the budget, some rewrite form of t2 has t1 as its
    right factor (up to budgeted equality), transitively.  When the bounded
    exploration finishes with no witness the verdict is
    NOT_COMPARABLE_AT_DEPTH; a blown budget gives UNDECIDED.
    """
    budget = _Budget(max_visited)
    try:
        found = _less(t1, t2, depth, budget)
    except _BudgetExhausted:
        return Order.UNDECIDED
    if found:
        return Order.LESS
    return Order.UNDECIDED if budget.soft_undecided else Order.NOT_COMPARABLE_AT_DEPTH


class _BudgetExhausted(Exception):
    pass


class _Budget:
    __slots__ = ("remaining", "soft_undecided")

    def __init__(self, max_visited: int):
        self.remaining = max_visited
        self.soft_undecided = False

    def spend(self, amount: int = 1) -> None:
        self.remaining -= amount
        if self.remaining < 0:
            raise _BudgetExhausted


def _less(t1: ShelfTerm, t2: ShelfTerm, depth: int, budget: _Budget) -> bool:
    """Explore forms of t2 up to ``depth`` rewrites, looking for t1 as an
    iterated right factor."""
    if depth < 0:
        return False
    seen = {t2}
    frontier = [t2]
    for step in range(depth + 1):
        for form in frontier:
            if not is_leaf(form):
                right = form[1]
                verdict = equal_in_free_shelf(t1, right, depth, budget.remaining)
                if verdict is Tri.EQUAL:
                    return True
                if verdict is Tri.UNDECIDED:
                    budget.soft_undecided = True
                # transitive closure through the right factor
                if _less(t1, right, depth - step - 1, budget):
                    return True
        if step == depth:
            break
        new = []
        for form in frontier:
            for nb in _all_neighbors(form):
                if nb not in seen:
                    seen.add(nb)
                    budget.spend()
                    new.append(nb)
        frontier = new
        if not frontier:
            break
    return False


def enumerate_terms(max_leaves: int, subscripts: tuple[int, ...] = (0,)) -> list:
    """All terms with at most ``max_leaves`` leaves over the given
    subscripts, in a deterministic order.  Test helper for orbit sweeps."""
    by_size: list[list] = [[], list(subscripts)]
    for size in range(2, max_leaves + 1):
        level = []
        for left_size in range(1, size):
            for left in by_size[left_size]:
                for right in by_size[size - left_size]:
                    level.append((left, right))
        by_size.append(level)
    out = []
    for level in by_size[1:]:
        out.extend(level)
    return out


class FreeShelfCarrier:
    """Carrier of free (virtual) shelf terms for the generic action engine.

    Applying a braid letter just builds a tree node, so the action is total
    and fast; equality between outputs is the budgeted search above.  In the
    virtual variant f shifts every subscript.
    """

    exact = False  # equality answers are budgeted, not definitive

    def __init__(self, virtual: bool = False,
                 depth: int = DEFAULT_DEPTH, max_visited: int = DEFAULT_MAX_VISITED):
        self.virtual = virtual
        self.name = "free-virtual-shelf" if virtual else "free-shelf"
        self.depth = depth
        self.max_visited = max_visited
        self.op_inv = None
        if virtual:
            self.f = lambda t: shift_subscripts(t, 1)
            self.f_inv = lambda t: shift_subscripts(t, -1)
        else:
            self.f = None
            self.f_inv = None

    def op(self, a: ShelfTerm, b: ShelfTerm) -> ShelfTerm:
        return (a, b)

    def equal(self, a: ShelfTerm, b: ShelfTerm) -> Tri:
        return equal_in_free_shelf(a, b, self.depth, self.max_visited)

    def sample(self, rng) -> ShelfTerm:
        subscripts = range(-2, 3) if self.virtual else (0,)

        def build(leaves: int):
            if leaves == 1:
                return rng.choice(list(subscripts))
            split = rng.randrange(1, leaves)
            return (build(split), build(leaves - split))

        return build(rng.randrange(1, 5))

    def format_elem(self, t: ShelfTerm) -> str:
        return format_term(t)

    def parse_elem(self, text: str) -> ShelfTerm:
        t = parse_term(text)
        if not self.virtual:
            bad = _nonzero_leaf(t)
            if bad is not None:
                raise ParseError(
                    f"subscript {bad} needs the virtual carrier; the plain free "
                    f"shelf has the single generator x0")
        return t


def _nonzero_leaf(t: ShelfTerm):
    if is_leaf(t):
        return t if t != 0 else None
    return _nonzero_leaf(t[0]) or _nonzero_leaf(t[1])


def multiset(values) -> tuple[tuple[int, int], ...]:
    """Sorted (value, multiplicity) pairs; canonical multiset equality."""
    return tuple(sorted(Counter(values).items()))
