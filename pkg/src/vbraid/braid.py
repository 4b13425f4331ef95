"""Words in virtual braid groups and monoids.

The group VB_n is generated by braid letters sigma_i and symmetric letters
zeta_i (1 <= i <= n-1); the positive monoid VB_n^+ drops the sigma inverses.
A word g_1 g_2 ... g_k denotes the product in the convention where the
RIGHTMOST letter acts first on tuples and vectors, matching ordinary
function composition and the bottom-to-top stacking of diagrams.

Word grammar: whitespace-separated tokens ``s<i>`` (sigma), ``S<i>``
(sigma inverse), ``z<i>`` (zeta), indices 1-based.

No general solution of the word problem is attempted for n >= 3; equality
of words is certified downstream through validated actions or bounded
rewriting.  What this module does provide exactly: free reduction, the
forgetful projection to S_n, the sigma count, the Garside twist by the
total-twist permutation, the unique shortest form on two strands, and
deterministic bounded enumeration.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ParseError

SIGMA = "s"
SIGMA_INV = "S"
ZETA = "z"
_KINDS = (SIGMA, SIGMA_INV, ZETA)


@dataclass(frozen=True)
class Generator:
    kind: str  # one of "s", "S", "z"
    index: int  # 1-based strand position

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ParseError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ParseError(f"generator index must be >= 1, got {self.index}")

    def inverse(self) -> "Generator":
        if self.kind == SIGMA:
            return Generator(SIGMA_INV, self.index)
        if self.kind == SIGMA_INV:
            return Generator(SIGMA, self.index)
        return self  # zeta is an involution

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class VirtualBraidWord:
    strands: int
    letters: tuple[Generator, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise ParseError("strand count must be >= 1")
        for g in self.letters:
            if g.index > self.strands - 1:
                raise ParseError(
                    f"generator {g} needs at least {g.index + 1} strands, have {self.strands}")

    def is_positive(self) -> bool:
        return all(g.kind != SIGMA_INV for g in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.letters)

    def concat(self, other: "VirtualBraidWord") -> "VirtualBraidWord":
        if self.strands != other.strands:
            raise ParseError("cannot concatenate words on different strand counts")
        return VirtualBraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "VirtualBraidWord":
        return VirtualBraidWord(
            self.strands, tuple(g.inverse() for g in reversed(self.letters)))


_TOKEN = re.compile(r"([sSz])(\d+)$")


def parse_word(text: str, strands: int) -> VirtualBraidWord:
    """Parse a word like ``"s1 z2 S1"`` on the given number of strands."""
    letters = []
    for token in text.split():
        m = _TOKEN.match(token)
        if not m:
            raise ParseError(f"bad token {token!r}; expected s<i>, S<i> or z<i>")
        letters.append(Generator(m.group(1), int(m.group(2))))
    return VirtualBraidWord(strands, tuple(letters))


def free_reduce(word: VirtualBraidWord) -> VirtualBraidWord:
    """Delete adjacent sigma/sigma-inverse pairs and zeta squares until stable.

    The result denotes the same group element; the stack sweep handles
    nested cancellations in one pass.
    """
    stack: list[Generator] = []
    for g in word.letters:
        if stack and _cancels(stack[-1], g):
            stack.pop()
        else:
            stack.append(g)
    return VirtualBraidWord(word.strands, tuple(stack))


def _cancels(a: Generator, b: Generator) -> bool:
    if a.index != b.index:
        return False
    pair = (a.kind, b.kind)
    return pair in ((SIGMA, SIGMA_INV), (SIGMA_INV, SIGMA), (ZETA, ZETA))


@dataclass(frozen=True)
class Permutation:
    """A permutation stored as an indexing vector.

    ``images[k]`` is the 1-based position whose entry lands in slot k+1 when
    the permutation acts on a tuple, i.e. acting gives
    ``(a_{images[0]}, ..., a_{images[n-1]})``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ParseError(f"{self.images} is not a permutation of 1..{n}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int) -> "Permutation":
        """Swap of positions i, i+1 (1-based)."""
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def permute(self, values: Sequence) -> tuple:
        return tuple(values[i - 1] for i in self.images)

    def compose(self, other: "Permutation") -> "Permutation":
        """self o other: other acts on the tuple first."""
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        out = [0] * self.n
        for pos, src in enumerate(self.images):
            out[src - 1] = pos + 1
        return Permutation(tuple(out))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def __str__(self) -> str:
        return "[" + ", ".join(map(str, self.images)) + "]"


def forgetful(word: VirtualBraidWord) -> Permutation:
    """The projection VB_n -> S_n sending every letter at position i to the
    transposition (i, i+1); rightmost letter acts first."""
    acc = Permutation.identity(word.strands)
    for g in word.letters:
        acc = acc.compose(Permutation.transposition(word.strands, g.index))
    return acc


def sigma_count(word: VirtualBraidWord) -> int:
    """Number of braid letters, counting sigma and its inverse alike."""
    return sum(1 for g in word.letters if g.kind != ZETA)


def garside_word(n: int) -> VirtualBraidWord:
    """A fixed reduced zeta-word for the total twist 1..n -> n..1:
    zeta_1 (zeta_2 zeta_1) ... (zeta_{n-1} ... zeta_1)."""
    letters = []
    for k in range(1, n):
        letters.extend(Generator(ZETA, i) for i in range(k, 0, -1))
    return VirtualBraidWord(n, tuple(letters))


def garside_twist(word: VirtualBraidWord) -> VirtualBraidWord:
    """Conjugation by the total twist, as a concrete word D . w . D.

    On generators the induced group map sends sigma_i to zeta sigma zeta at
    position n-i and zeta_i to zeta_{n-i}.  The forgetful image is always
    conjugated by the total twist.  The squared twist freely reduces to the
    original word only on 2 or 3 strands, where the total twist happens to
    be a transposition and hence admits a palindromic zeta-word; on more
    strands the involution is a group-level fact certified through actions,
    not through free reduction.
    """
    delta = garside_word(word.strands)
    return delta.concat(word).concat(delta)


def vb2_shortest_form(word: VirtualBraidWord) -> tuple[tuple[int, ...], int]:
    """Shortest form of a positive word on 2 strands.

    Applying zeta^2 = 1 yields the unique form
    zeta^{eps_k} sigma ... sigma zeta^{eps_1} sigma zeta^{eps_0};
    returns (eps_0..eps_k, k) with k the sigma count.
    """
    if word.strands != 2:
        raise ParseError("shortest form is defined on 2 strands only")
    if not word.is_positive():
        raise ParseError("shortest form requires a positive word")
    runs = [0]  # zeta-run lengths between sigmas, reading right to left
    for g in reversed(word.letters):
        if g.kind == ZETA:
            runs[-1] += 1
        else:
            runs.append(0)
    eps = tuple(r % 2 for r in runs)
    return eps, len(runs) - 1


_FULL_ORDER = (SIGMA, SIGMA_INV, ZETA)
_POSITIVE_ORDER = (SIGMA, ZETA)


def enumerate_words(strands: int, max_len: int, positive: bool = True
                    ) -> Iterator[VirtualBraidWord]:
    """All words up to the given length in length-lexicographic order.

    The alphabet order is all sigmas, then all sigma inverses (full mode
    only), then all zetas, each block by ascending index.
    """
    kinds = _POSITIVE_ORDER if positive else _FULL_ORDER
    alphabet = [Generator(kind, i)
                for kind in kinds for i in range(1, strands)]
    for length in range(max_len + 1):
        for combo in itertools.product(alphabet, repeat=length):
            yield VirtualBraidWord(strands, combo)
