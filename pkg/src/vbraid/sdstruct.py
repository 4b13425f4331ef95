"""Concrete self-distributive structures.

A shelf is a set with a binary operation ``a <| b`` satisfying
self-distributivity (a <| b) <| c = (a <| c) <| (b <| c); a rack additionally
has a twisted inverse (a <| b) ~| b = (a ~| b) <| b = a, and a quandle is an
idempotent rack.  A virtual shelf/rack carries a distinguished automorphism f.

Finite structures are operation tables, 0-indexed internally and 1-indexed at
the JSON/CLI boundary.  Infinite but computable carriers (the cyclic rack,
conjugation quandles of free groups, and the virtual quandle of generator
conjugates) implement the same small contract - element equality, ``op``,
optional ``op_inv``/``f``/``f_inv``, and seeded sampling - so the braid action
machinery is generic over carriers.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Protocol, runtime_checkable

from .decision import Tri, tri_from_bool
from .errors import AxiomError, ParseError


# ---------------------------------------------------------------------------
# carrier contract
# ---------------------------------------------------------------------------

@runtime_checkable
class SdCarrier(Protocol):
    """What the action engine needs from a self-distributive carrier.

    ``op_inv``, ``f`` and ``f_inv`` may be absent (set to None) when the
    structure is only a shelf or has no virtualizing automorphism.
    """

    name: str

    def op(self, a, b): ...

    def equal(self, a, b) -> Tri: ...

    def sample(self, rng: random.Random): ...


# ---------------------------------------------------------------------------
# finite operation tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteRackTable:
    """A finite binary operation table, with optional inverse table and
    optional automorphism.

    Supplied inverse tables must genuinely invert each right translation and
    a supplied f must be a bijection compatible with the operation; both are
    verified at construction.  The operation itself is NOT required to be
    self-distributive here - classification is a separate query, and most of
    the test corpus consists of tables that fail some axiom on purpose.
    """

    size: int
    op: tuple[tuple[int, ...], ...]
    inv: tuple[tuple[int, ...], ...] | None = None
    f: tuple[int, ...] | None = None

    def __post_init__(self):
        m = self.size
        if m < 1:
            raise ParseError("table size must be >= 1")
        _check_table(self.op, m, "op")
        if self.inv is not None:
            _check_table(self.inv, m, "inv")
            for a in range(m):
                for b in range(m):
                    if self.inv[self.op[a][b]][b] != a or self.op[self.inv[a][b]][b] != a:
                        raise AxiomError(
                            f"supplied inverse table fails at a={a}, b={b}")
        if self.f is not None:
            if sorted(self.f) != list(range(m)):
                raise AxiomError("f is not a bijection")
            for a in range(m):
                for b in range(m):
                    if self.f[self.op[a][b]] != self.op[self.f[a]][self.f[b]]:
                        raise AxiomError(
                            f"f is not an automorphism at a={a}, b={b}")

    def elements(self) -> range:
        return range(self.size)

    def apply(self, a: int, b: int) -> int:
        return self.op[a][b]

    def f_inverse(self) -> tuple[int, ...]:
        if self.f is None:
            raise AxiomError("table has no automorphism f")
        out = [0] * self.size
        for a, fa in enumerate(self.f):
            out[fa] = a
        return tuple(out)

    def to_json(self) -> dict:
        data: dict = {"size": self.size,
                      "op": [[v + 1 for v in row] for row in self.op]}
        if self.inv is not None:
            data["inv"] = [[v + 1 for v in row] for row in self.inv]
        if self.f is not None:
            data["f"] = [v + 1 for v in self.f]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "FiniteRackTable":
        size = int(data["size"])

        def shift(table):
            return tuple(tuple(int(v) - 1 for v in row) for row in table)

        return cls(
            size,
            shift(data["op"]),
            shift(data["inv"]) if data.get("inv") is not None else None,
            tuple(int(v) - 1 for v in data["f"]) if data.get("f") is not None else None,
        )


def _check_table(table, m: int, label: str) -> None:
    if len(table) != m or any(len(row) != m for row in table):
        raise ParseError(f"{label} table must be {m}x{m}")
    for row in table:
        for v in row:
            if not 0 <= v < m:
                raise ParseError(f"{label} table entry {v} outside 0..{m - 1}")


@dataclass(frozen=True)
class Classification:
    kind: str  # "not_shelf" | "shelf" | "rack" | "quandle"
    spindle: bool

    def is_at_least(self, kind: str) -> bool:
        order = ("not_shelf", "shelf", "rack", "quandle")
        return order.index(self.kind) >= order.index(kind)


def classify(table: FiniteRackTable) -> Classification:
    """Exhaustive axiom check: self-distributivity over all triples,
    invertibility of every right translation, idempotence.

    The inverse table, when absent, is derived by inverting each column;
    any non-bijective column downgrades the result to a plain shelf.
    A shelf that is idempotent but not a rack is reported as a shelf with
    the spindle flag set.
    """
    m = table.size
    op = table.op
    sd = all(
        op[op[a][b]][c] == op[op[a][c]][op[b][c]]
        for a in range(m) for b in range(m) for c in range(m))
    idem = all(op[a][a] == a for a in range(m))
    if not sd:
        return Classification("not_shelf", False)
    rack = derive_inverse(table) is not None
    if not rack:
        return Classification("shelf", idem)
    return Classification("quandle" if idem else "rack", idem)


def derive_inverse(table: FiniteRackTable) -> tuple[tuple[int, ...], ...] | None:
    """Invert each right translation a -> a <| b; None if any column fails."""
    if table.inv is not None:
        return table.inv
    m = table.size
    inv = [[0] * m for _ in range(m)]
    for b in range(m):
        seen = [False] * m
        for a in range(m):
            image = table.op[a][b]
            if seen[image]:
                return None
            seen[image] = True
            inv[image][b] = a
    return tuple(tuple(row) for row in inv)


# -- standard finite tables --------------------------------------------------

def trivial_quandle(m: int = 1) -> FiniteRackTable:
    """a <| b = a; the one-element case is the trivial quandle."""
    return FiniteRackTable(m, tuple(tuple(a for _ in range(m)) for a in range(m)))


def dihedral_table(m: int) -> FiniteRackTable:
    """The dihedral quandle on Z_m: a <| b = 2b - a."""
    op = tuple(tuple((2 * b - a) % m for b in range(m)) for a in range(m))
    return FiniteRackTable(m, op, inv=op)


def alexander_quandle(m: int, t_val: int) -> FiniteRackTable:
    """The Alexander quandle on Z_m: a <| b = t a + (1 - t) b, for a unit t."""
    t_val %= m
    if gcd(t_val, m) != 1:
        raise AxiomError(f"t = {t_val} is not a unit modulo {m}")
    t_inv = pow(t_val, -1, m)
    op = tuple(tuple((t_val * a + (1 - t_val) * b) % m for b in range(m))
               for a in range(m))
    inv = tuple(tuple((t_inv * a + (1 - t_inv) * b) % m for b in range(m))
                for a in range(m))
    return FiniteRackTable(m, op, inv=inv)


def cyclic_mod_table(m: int) -> FiniteRackTable:
    """Truncated cyclic rack on Z_m: a <| b = a + 1.  A rack, never a quandle
    for m > 1."""
    op = tuple(tuple((a + 1) % m for _ in range(m)) for a in range(m))
    inv = tuple(tuple((a - 1) % m for _ in range(m)) for a in range(m))
    return FiniteRackTable(m, op, inv=inv)


class FiniteCarrier:
    """Carrier view of a finite table for the generic action engine."""

    def __init__(self, table: FiniteRackTable, name: str = "finite"):
        self.table = table
        self.name = name
        self._inv = derive_inverse(table)
        self.op_inv = self._op_inv if self._inv is not None else None
        if table.f is not None:
            self._f_inv = table.f_inverse()
            self.f = lambda a: table.f[a]
            self.f_inv = lambda a: self._f_inv[a]
        else:
            self.f = None
            self.f_inv = None

    def op(self, a: int, b: int) -> int:
        return self.table.op[a][b]

    def _op_inv(self, a: int, b: int) -> int:
        return self._inv[a][b]

    def equal(self, a: int, b: int) -> Tri:
        return tri_from_bool(a == b)

    def sample(self, rng: random.Random) -> int:
        return rng.randrange(self.table.size)

    def all_elements(self) -> Iterable[int]:
        return self.table.elements()

    def format_elem(self, a: int) -> str:
        return str(a + 1)  # 1-indexed at the boundary

    def parse_elem(self, text: str) -> int:
        a = int(text) - 1
        if not 0 <= a < self.table.size:
            raise ParseError(f"element {text} outside 1..{self.table.size}")
        return a


# ---------------------------------------------------------------------------
# cyclic rack
# ---------------------------------------------------------------------------

class CyclicRack:
    """The rack structure on Z with n <| m = n + 1, n ~| m = n - 1.

    Very far from a quandle: idempotence fails everywhere.  The shift
    k -> k + 1 is a rack automorphism and serves as the default virtualizing
    map.  This rack realizes the free rack on one generator, with the left
    comb of k operations <| (resp. ~|) applied to the generator mapping
    to +k (resp. -k).
    """

    name = "cyclic-rack"

    def op(self, a: int, b: int) -> int:
        return a + 1

    def op_inv(self, a: int, b: int) -> int:
        return a - 1

    def f(self, a: int) -> int:
        return a + 1

    def f_inv(self, a: int) -> int:
        return a - 1

    def equal(self, a: int, b: int) -> Tri:
        return tri_from_bool(a == b)

    def sample(self, rng: random.Random) -> int:
        return rng.randrange(-20, 21)

    def format_elem(self, a: int) -> str:
        return str(a)

    def parse_elem(self, text: str) -> int:
        return int(text)


# ---------------------------------------------------------------------------
# free group words and conjugation quandles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FreeGroupWord:
    """A freely reduced word in generators x_1, x_2, ...; letters are
    (generator index, exponent +-1) with no adjacent inverse pairs."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, e in self.letters:
            if i < 1 or e not in (1, -1):
                raise ParseError(f"bad free group letter ({i}, {e})")
        for k in range(len(self.letters) - 1):
            (i, e), (j, f) = self.letters[k], self.letters[k + 1]
            if i == j and e == -f:
                raise ParseError("word is not freely reduced")

    @classmethod
    def generator(cls, i: int, exp: int = 1) -> "FreeGroupWord":
        return cls(((i, exp),))

    @classmethod
    def identity(cls) -> "FreeGroupWord":
        return cls(())

    def mul(self, other: "FreeGroupWord") -> "FreeGroupWord":
        stack = list(self.letters)
        for letter in other.letters:
            if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
                stack.pop()
            else:
                stack.append(letter)
        return FreeGroupWord(tuple(stack))

    def inverse(self) -> "FreeGroupWord":
        return FreeGroupWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"x{i}" if e == 1 else f"X{i}" for i, e in self.letters)

    def max_generator(self) -> int:
        return max((i for i, _ in self.letters), default=0)


_FG_TOKEN = re.compile(r"([xX])(\d+)$")


def parse_freegroup(text: str) -> FreeGroupWord:
    """Parse ``"x1 X2 x1"`` (X = inverse); ``"e"`` is the identity."""
    text = text.strip()
    if text in ("", "e", "1"):
        return FreeGroupWord.identity()
    out = FreeGroupWord.identity()
    for token in text.split():
        m = _FG_TOKEN.match(token)
        if not m:
            raise ParseError(f"bad free group token {token!r}")
        out = out.mul(FreeGroupWord.generator(
            int(m.group(2)), 1 if m.group(1) == "x" else -1))
    return out


def conj_op(a: FreeGroupWord, b: FreeGroupWord, direction: str = "fwd") -> FreeGroupWord:
    """Conjugation quandle operation: fwd gives b^-1 a b, inv gives b a b^-1."""
    if direction == "fwd":
        return b.inverse().mul(a).mul(b)
    if direction == "inv":
        return b.mul(a).mul(b.inverse())
    raise ParseError(f"direction must be 'fwd' or 'inv', got {direction!r}")


def artin_generator(j: int, i: int, sign: int = 1) -> FreeGroupWord:
    """Image of the free group generator x_j under the braid letter at
    position i (sign +1) or its inverse (sign -1):

        sigma_i:     x_i -> x_i x_{i+1} x_i^-1,   x_{i+1} -> x_i
        sigma_i^-1:  x_i -> x_{i+1},              x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}

    and x_j is fixed otherwise.
    """
    x = FreeGroupWord.generator
    if sign == 1:
        if j == i:
            return x(i).mul(x(i + 1)).mul(x(i, -1))
        if j == i + 1:
            return x(i)
        return x(j)
    if sign == -1:
        if j == i:
            return x(i + 1)
        if j == i + 1:
            return x(i + 1, -1).mul(x(i)).mul(x(i + 1))
        return x(j)
    raise ParseError("sign must be +1 or -1")


def artin_letter_apply(word: FreeGroupWord, i: int, sign: int) -> FreeGroupWord:
    """Extend the generator formulas multiplicatively to a whole word."""
    out = FreeGroupWord.identity()
    for j, e in word.letters:
        image = artin_generator(j, i, sign)
        out = out.mul(image if e == 1 else image.inverse())
    return out


def artin_apply(braid_word, target: FreeGroupWord) -> FreeGroupWord:
    """Act by a sigma-only braid word on a free group word, rightmost letter
    first.  Zeta letters are outside the Artin action and are rejected."""
    out = target
    for g in reversed(braid_word.letters):
        if g.kind == "z":
            raise ParseError("the free-group action is defined for braid letters only")
        out = artin_letter_apply(out, g.index, 1 if g.kind == "s" else -1)
    return out


class ConjQuandle:
    """Conj(F_n): the free group on n generators under conjugation."""

    def __init__(self, n: int, name: str | None = None):
        if n < 1:
            raise ParseError("need at least one generator")
        self.n = n
        self.name = name or f"conj-free{n}"
        self.f = None
        self.f_inv = None

    def op(self, a: FreeGroupWord, b: FreeGroupWord) -> FreeGroupWord:
        return conj_op(a, b, "fwd")

    def op_inv(self, a: FreeGroupWord, b: FreeGroupWord) -> FreeGroupWord:
        return conj_op(a, b, "inv")

    def equal(self, a: FreeGroupWord, b: FreeGroupWord) -> Tri:
        return tri_from_bool(a == b)

    def sample(self, rng: random.Random) -> FreeGroupWord:
        out = FreeGroupWord.identity()
        for _ in range(rng.randrange(0, 5)):
            out = out.mul(FreeGroupWord.generator(
                rng.randrange(1, self.n + 1), rng.choice((1, -1))))
        return out

    def format_elem(self, a: FreeGroupWord) -> str:
        return str(a)

    def parse_elem(self, text: str) -> FreeGroupWord:
        w = parse_freegroup(text)
        if w.max_generator() > self.n:
            raise ParseError(f"word {text!r} uses generators beyond x{self.n}")
        return w


class VConjQuandle:
    """The virtual quandle of conjugates of x_1..x_n inside the free group on
    n+1 generators; the extra generator only provides the virtualizing map
    f(a) = x_{n+1}^-1 a x_{n+1}."""

    def __init__(self, n: int):
        if n < 1:
            raise ParseError("need at least one generator")
        self.n = n
        self.name = f"vconj{n}"
        self._t = FreeGroupWord.generator(n + 1)

    def op(self, a: FreeGroupWord, b: FreeGroupWord) -> FreeGroupWord:
        return conj_op(a, b, "fwd")

    def op_inv(self, a: FreeGroupWord, b: FreeGroupWord) -> FreeGroupWord:
        return conj_op(a, b, "inv")

    def f(self, a: FreeGroupWord) -> FreeGroupWord:
        return conj_op(a, self._t, "fwd")

    def f_inv(self, a: FreeGroupWord) -> FreeGroupWord:
        return conj_op(a, self._t, "inv")

    def equal(self, a: FreeGroupWord, b: FreeGroupWord) -> Tri:
        return tri_from_bool(a == b)

    def contains(self, a: FreeGroupWord) -> bool:
        """True when the reduced word is u^-1 x_i u for some i <= n."""
        letters = list(a.letters)
        while len(letters) > 1:
            (i, e), (j, f) = letters[0], letters[-1]
            if i == j and e == -f:
                letters = letters[1:-1]
            else:
                return False
        return len(letters) == 1 and letters[0][1] == 1 and letters[0][0] <= self.n

    def sample(self, rng: random.Random) -> FreeGroupWord:
        core = FreeGroupWord.generator(rng.randrange(1, self.n + 1))
        u = FreeGroupWord.identity()
        for _ in range(rng.randrange(0, 4)):
            u = u.mul(FreeGroupWord.generator(
                rng.randrange(1, self.n + 2), rng.choice((1, -1))))
        return u.inverse().mul(core).mul(u)

    def format_elem(self, a: FreeGroupWord) -> str:
        return str(a)

    def parse_elem(self, text: str) -> FreeGroupWord:
        w = parse_freegroup(text)
        if not self.contains(w):
            raise ParseError(
                f"{text!r} is not a conjugate of a generator x_1..x{self.n}")
        return w


def vconj(n: int) -> VConjQuandle:
    return VConjQuandle(n)


# ---------------------------------------------------------------------------
# the free rack on one generator and the cyclic rack
# ---------------------------------------------------------------------------

FrExpr = object  # "x" or ("fwd"|"inv", FrExpr, FrExpr)


def parse_fr1_expr(text: str) -> FrExpr:
    """Mini grammar for one-generator rack expressions: leaf ``x``, nodes
    ``(e<x)`` for <|, ``(e~x)`` for ~|."""
    pos = 0

    def expr():
        nonlocal pos
        if pos < len(text) and text[pos] == "x":
            pos += 1
            return "x"
        if pos < len(text) and text[pos] == "(":
            pos += 1
            left = expr()
            if pos >= len(text) or text[pos] not in "<~":
                raise ParseError(f"expected '<' or '~' at position {pos} in {text!r}")
            op = "fwd" if text[pos] == "<" else "inv"
            pos += 1
            right = expr()
            if pos >= len(text) or text[pos] != ")":
                raise ParseError(f"expected ')' at position {pos} in {text!r}")
            pos += 1
            return (op, left, right)
        raise ParseError(f"unexpected character at position {pos} in {text!r}")

    out = expr()
    if pos != len(text.strip()):
        raise ParseError(f"trailing input after position {pos} in {text!r}")
    return out


def fr1_iso_cr(expr: FrExpr) -> int:
    """The isomorphism from the free rack on one generator onto the cyclic
    rack, on comb normal forms: a left comb of k operations <| by x maps to
    +k, a left comb of ~| maps to -k, and x itself to 0.

    Expressions outside these normal forms are rejected: the isomorphism is
    stated on combs and no rewriting strategy to a comb is attempted here.
    """
    if isinstance(expr, str):
        expr = parse_fr1_expr(expr)
    if expr == "x":
        return 0
    if not isinstance(expr, tuple) or len(expr) != 3:
        raise ParseError(f"not a one-generator rack expression: {expr!r}")
    op = expr[0]
    count = 0
    node = expr
    while isinstance(node, tuple):
        kind, left, right = node
        if kind != op:
            raise ParseError("mixed <| and ~| expressions have no comb normal form here")
        if right != "x":
            raise ParseError("expression is not a left comb over x")
        count += 1
        node = left
    if node != "x":
        raise ParseError("expression is not a left comb over x")
    return count if op == "fwd" else -count
