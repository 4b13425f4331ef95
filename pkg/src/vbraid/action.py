"""The generic virtual braid action engine.

A pair of maps (xi, theta) on X x X defines an action of the positive
virtual braid monoid on X^n when xi is an involution, both maps satisfy the
Yang-Baxter relation, and the mixed relation

    xi_1 xi_2 theta_1 = theta_2 xi_1 xi_2

holds on triples; a twisted inverse for theta upgrades it to a group action.
Letters act locally: a letter at position i touches only slots i, i+1, and
the rightmost letter of a word acts first.

For a shelf/rack carrier, theta(a, b) = (b, a <| b) and xi is the flip; a
virtualizing automorphism f deforms the flip to xi(a, b) = (f^-1(b), f(a)).
On the free virtual shelf this action recovers, for any positive word, its
permutation, its sigma count, and the multiset of strands passing
non-virtually under each strand: lengths locate the permutation, and first
subscripts of a widely spaced probe staircase, rounded to the nearest
staircase step, read off the under-multisets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .braid import Permutation, VirtualBraidWord, enumerate_words
from .decision import Tri
from .errors import AxiomError, DimensionError
from .freeshelf import FreeShelfCarrier, node, term_invariants

PairMap = Callable[[object, object], tuple]


@dataclass
class ActionPair:
    """Carrier plus the two local maps; theta_inv is None for monoid-only
    actions."""

    carrier: object
    xi: PairMap
    theta: PairMap
    theta_inv: PairMap | None = None
    name: str = ""

    def exact_equality(self) -> bool:
        """True when the carrier decides equality exactly (no budget)."""
        return getattr(self.carrier, "exact", True)


def rack_pair(carrier, validate: bool = True, seed: int = 0,
              samples: int = 50) -> ActionPair:
    """The action pair of a shelf or rack carrier: xi = flip,
    theta(a,b) = (b, a <| b); theta_inv present only when the carrier has
    a twisted inverse."""
    op = carrier.op
    op_inv = getattr(carrier, "op_inv", None)

    def xi(a, b):
        return (b, a)

    def theta(a, b):
        return (b, op(a, b))

    theta_inv = None
    if op_inv is not None:
        def theta_inv(a, b):  # inverse of theta: (b, a<|b) -> (a, b)
            return (op_inv(b, a), a)

    pair = ActionPair(carrier, xi, theta, theta_inv,
                      name=getattr(carrier, "name", "rack"))
    if validate:
        validate_pair(pair, seed=seed, samples=samples)
    return pair


def virtual_rack_pair(carrier, validate: bool = True, seed: int = 0,
                      samples: int = 50) -> ActionPair:
    """The action pair of a virtual shelf/rack: theta as above,
    xi(a, b) = (f^-1(b), f(a))."""
    f = getattr(carrier, "f", None)
    f_inv = getattr(carrier, "f_inv", None)
    if f is None or f_inv is None:
        raise AxiomError(f"carrier {getattr(carrier, 'name', carrier)!r} has no "
                         "virtualizing automorphism")
    op = carrier.op
    op_inv = getattr(carrier, "op_inv", None)

    def xi(a, b):
        return (f_inv(b), f(a))

    def theta(a, b):
        return (b, op(a, b))

    theta_inv = None
    if op_inv is not None:
        def theta_inv(a, b):
            return (op_inv(b, a), a)

    pair = ActionPair(carrier, xi, theta, theta_inv,
                      name="virtual-" + getattr(carrier, "name", "rack"))
    if validate:
        validate_pair(pair, seed=seed, samples=samples)
    return pair


def _triples(carrier, seed: int, samples: int) -> Iterable[tuple]:
    all_elements = getattr(carrier, "all_elements", None)
    if all_elements is not None:
        elems = list(all_elements())
        if len(elems) <= 8:
            return [(a, b, c) for a in elems for b in elems for c in elems]
    rng = random.Random(seed)
    return [tuple(carrier.sample(rng) for _ in range(3)) for _ in range(samples)]


def validate_pair(pair: ActionPair, seed: int = 0, samples: int = 50) -> None:
    """Check the defining relations on exhaustive (small finite carriers) or
    seeded sample triples; raises AxiomError on any failure, including an
    equality budget running out."""
    eq = pair.carrier.equal

    def same(t1: tuple, t2: tuple, what: str) -> None:
        for x, y in zip(t1, t2):
            verdict = eq(x, y)
            if verdict is Tri.NOT_EQUAL:
                raise AxiomError(f"{pair.name}: {what} fails on {t1} vs {t2}")
            if verdict is Tri.UNDECIDED:
                raise AxiomError(f"{pair.name}: {what} undecided within budget")

    def at(m: PairMap, pos: int, t: tuple) -> tuple:
        out = list(t)
        out[pos], out[pos + 1] = m(out[pos], out[pos + 1])
        return tuple(out)

    for triple in _triples(pair.carrier, seed, samples):
        a, b, c = triple
        same(pair.xi(*pair.xi(a, b)), (a, b), "xi^2 = id")
        for m, label in ((pair.theta, "theta"), (pair.xi, "xi")):
            lhs = at(m, 0, at(m, 1, at(m, 0, triple)))
            rhs = at(m, 1, at(m, 0, at(m, 1, triple)))
            same(lhs, rhs, f"Yang-Baxter for {label}")
        lhs = at(pair.xi, 0, at(pair.xi, 1, at(pair.theta, 0, triple)))
        rhs = at(pair.theta, 1, at(pair.xi, 0, at(pair.xi, 1, triple)))
        same(lhs, rhs, "mixed relation zeta zeta sigma")
        if pair.theta_inv is not None:
            same(pair.theta_inv(*pair.theta(a, b)), (a, b), "theta_inv o theta")
            same(pair.theta(*pair.theta_inv(a, b)), (a, b), "theta o theta_inv")


def apply_word(pair: ActionPair, word: VirtualBraidWord, values: Sequence) -> tuple:
    """Act by a word on a tuple; the rightmost letter acts first and each
    letter changes only its two slots."""
    n = len(values)
    if word.strands != n:
        raise DimensionError(
            f"word on {word.strands} strands cannot act on a {n}-tuple")
    out = list(values)
    for g in reversed(word.letters):
        i = g.index - 1
        if g.kind == "z":
            out[i], out[i + 1] = pair.xi(out[i], out[i + 1])
        elif g.kind == "s":
            out[i], out[i + 1] = pair.theta(out[i], out[i + 1])
        else:
            if pair.theta_inv is None:
                raise AxiomError(
                    f"{pair.name}: sigma inverse needs a rack-level carrier")
            out[i], out[i + 1] = pair.theta_inv(out[i], out[i + 1])
    return tuple(out)


# ---------------------------------------------------------------------------
# invariant recovery on the free virtual shelf
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecoveredInvariants:
    permutation: Permutation
    sigma_count: int
    under_multisets: dict[int, tuple[int, ...]]  # strand -> sorted multiset

    def to_json(self) -> dict:
        return {
            "forgetful": list(self.permutation.images),
            "sigma_count": self.sigma_count,
            "under_multisets": {str(k): list(v)
                                for k, v in sorted(self.under_multisets.items())},
        }


def recover_invariants(word: VirtualBraidWord) -> RecoveredInvariants:
    """Read the permutation, sigma count, and per-strand under-multisets off
    the free-virtual-shelf action of a positive word.

    Deepening the i-th slot of the constant tuple lengthens exactly one
    output slot, locating the permutation; the total length growth counts
    the sigmas.  With M sigmas the action shifts first subscripts by at most
    N - 1 where N = (n-1)(M+1) + 1, so acting on the staircase
    (x_{2N}, x_{4N}, ..., x_{2nN}) and rounding every recorded subscript to
    the nearest multiple of 2N identifies strands unambiguously.
    """
    if not word.is_positive():
        raise AxiomError("invariant recovery is defined for positive words")
    n = word.strands
    pair = virtual_rack_pair(FreeShelfCarrier(virtual=True), validate=False)

    base = tuple(0 for _ in range(n))
    base_out = apply_word(pair, word, base)
    base_lengths = [term_invariants(t).length for t in base_out]
    m_count = sum(base_lengths)

    images = [0] * n
    deep = node(0, 0)
    for i in range(1, n + 1):
        probe = list(base)
        probe[i - 1] = deep
        out = apply_word(pair, word, tuple(probe))
        grew = [j for j in range(n)
                if term_invariants(out[j]).length == base_lengths[j] + 1]
        if len(grew) != 1:
            raise AxiomError(f"length probe for slot {i} is ambiguous: {grew}")
        images[grew[0]] = i
    permutation = Permutation(tuple(images))

    spacing = 2 * ((n - 1) * (m_count + 1) + 1)
    staircase = tuple(i * spacing for i in range(1, n + 1))
    outputs = apply_word(pair, word, staircase)
    report: dict[int, tuple[int, ...]] = {}
    half = spacing // 2
    for y in outputs:
        inv = term_invariants(y)
        strand = (inv.first + half) // spacing
        unders = tuple(sorted((v + half) // spacing for v in inv.first_multiset))
        report[strand] = unders
    if sorted(report) != list(range(1, n + 1)):
        raise AxiomError(f"staircase probe did not separate strands: {sorted(report)}")
    return RecoveredInvariants(permutation, m_count, report)


# ---------------------------------------------------------------------------
# collision scanning
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CollisionReport:
    collisions: tuple[tuple[str, str], ...]
    undecided: tuple[tuple[str, str], ...]
    words_scanned: int

    def to_json(self) -> dict:
        return {
            "words_scanned": self.words_scanned,
            "collisions": [list(p) for p in self.collisions],
            "undecided": [list(p) for p in self.undecided],
        }


def standard_probes(pair: ActionPair, n: int) -> list[tuple]:
    """Default probe tuples: the constant tuple, a staircase when the
    carrier is virtual, and a tuple mixing the generator with deeper combs."""
    carrier = pair.carrier
    if isinstance(carrier, FreeShelfCarrier):
        const = tuple(0 for _ in range(n))
        probes = [const]
        if carrier.virtual:
            probes.append(tuple(range(n)))
        comb = 0
        combs = [0]
        for _ in range(n - 1):
            comb = node(node(comb, 0), 0)
            combs.append(comb)
        probes.append(tuple(combs))
        return probes
    rng = random.Random(0)
    probes = [tuple(carrier.sample(rng) for _ in range(n)) for _ in range(3)]
    return probes


def collision_scan(pair: ActionPair, n: int, max_len: int,
                   probe_tuples: Sequence[tuple] | None = None,
                   words: Iterable[VirtualBraidWord] | None = None
                   ) -> CollisionReport:
    """All pairs of enumerated words acting identically on every probe.

    Words default to the positive/full enumeration matching the pair.  With
    an exact carrier, outputs are hashed; with budgeted equality (free-shelf
    terms) candidate pairs are compared component by component, and budget
    exhaustions are reported separately.
    """
    if probe_tuples is None:
        probe_tuples = standard_probes(pair, n)
    for probe in probe_tuples:
        if len(probe) != n:
            raise DimensionError(f"probe {probe!r} is not an {n}-tuple")
    if words is None:
        words = enumerate_words(n, max_len, positive=pair.theta_inv is None)
    word_list = list(words)
    outputs = [tuple(apply_word(pair, w, probe) for probe in probe_tuples)
               for w in word_list]

    collisions: list[tuple[str, str]] = []
    undecided: list[tuple[str, str]] = []
    if pair.exact_equality():
        buckets: dict = {}
        for w, out in zip(word_list, outputs):
            buckets.setdefault(out, []).append(w)
        for out in buckets.values():
            for i in range(len(out)):
                for j in range(i + 1, len(out)):
                    collisions.append((str(out[i]), str(out[j])))
    else:
        eq = pair.carrier.equal
        for i in range(len(word_list)):
            for j in range(i + 1, len(word_list)):
                verdict = _tuples_equal(eq, outputs[i], outputs[j])
                if verdict is Tri.EQUAL:
                    collisions.append((str(word_list[i]), str(word_list[j])))
                elif verdict is Tri.UNDECIDED:
                    undecided.append((str(word_list[i]), str(word_list[j])))
    return CollisionReport(tuple(collisions), tuple(undecided), len(word_list))


def _tuples_equal(eq, outs1, outs2) -> Tri:
    soft = False
    for t1, t2 in zip(outs1, outs2):
        for x, y in zip(t1, t2):
            verdict = eq(x, y)
            if verdict is Tri.NOT_EQUAL:
                return Tri.NOT_EQUAL
            if verdict is Tri.UNDECIDED:
                soft = True
    return Tri.UNDECIDED if soft else Tri.EQUAL
