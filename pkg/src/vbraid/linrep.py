"""Linear braided objects and exact representation matrices.

An object here is a finite-rank space V with a local braiding sigma on the
two-strand space, living in one of two monoidal modes:

* ``sum``    - the two-strand space is V + V (block composition; the Burau
               family lives here, with n-strand matrices of size n*dim);
* ``tensor`` - the two-strand space is V tensor V (Kronecker composition;
               structural braidings of algebras live here, with n-strand
               matrices of size dim^n).

Keeping the mode on the object matters: mixing block and Kronecker
conventions corrupts dimensions.  Tensor basis order is row-major, leftmost
factor slowest, matching the Kronecker product.

Alongside sigma each object carries the ambient symmetric braiding c
(default: the flip), which is what the virtual letters act by.  Words then
map to matrices by placing sigma / sigma-inverse / c blocks at the letter's
strand position, rightmost letter multiplied first.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .braid import VirtualBraidWord, garside_word
from .errors import AxiomError, DimensionError, InversionError
from .ring import ONE, LaurentPoly, RingMatrix, T, U, V, flip_matrix

SUM = "sum"
TENSOR = "tensor"


def flip_sum(d: int) -> RingMatrix:
    """The flip on V + V: the 2d x 2d block antidiagonal of identities."""
    entries = {}
    for i in range(d):
        entries[(i, d + i)] = ONE
        entries[(d + i, i)] = ONE
    return RingMatrix(2 * d, 2 * d, entries)


@dataclass(frozen=True)
class LinearBraidedObject:
    dim: int
    mode: str
    sigma: RingMatrix
    sigma_inv: RingMatrix | None = None
    c: RingMatrix | None = None
    f: RingMatrix | None = None
    name: str = ""

    def __post_init__(self):
        if self.mode not in (SUM, TENSOR):
            raise DimensionError(f"mode must be '{SUM}' or '{TENSOR}'")
        size = self.two_strand_size()
        if self.sigma.rows != size or self.sigma.cols != size:
            raise DimensionError(
                f"sigma must be {size}x{size} in {self.mode} mode, "
                f"got {self.sigma.rows}x{self.sigma.cols}")
        if self.c is None:
            object.__setattr__(self, "c", self.default_flip())
        if self.c.rows != size or self.c.cols != size:
            raise DimensionError("c has the wrong two-strand size")
        if self.sigma_inv is not None and (
                self.sigma_inv.rows != size or self.sigma_inv.cols != size):
            raise DimensionError("sigma_inv has the wrong two-strand size")
        if self.f is not None and (self.f.rows != self.dim or self.f.cols != self.dim):
            raise DimensionError("f must be dim x dim")

    def two_strand_size(self) -> int:
        return 2 * self.dim if self.mode == SUM else self.dim * self.dim

    def default_flip(self) -> RingMatrix:
        return flip_sum(self.dim) if self.mode == SUM else flip_matrix(self.dim)

    def pair_map(self, a: RingMatrix, b: RingMatrix) -> RingMatrix:
        """a tensor b on the two-strand space, in this object's mode."""
        return a.direct_sum(b) if self.mode == SUM else a.kron(b)

    def is_invertible(self) -> bool:
        return self.sigma_inv is not None


@dataclass(frozen=True)
class CheckReport:
    checks: tuple[tuple[str, bool], ...]

    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def failed(self) -> tuple[str, ...]:
        return tuple(name for name, passed in self.checks if not passed)

    def to_json(self) -> dict:
        return {"ok": self.ok(), "checks": {k: v for k, v in self.checks}}


def _three_strand(obj: LinearBraidedObject, block: RingMatrix,
                  position: int) -> RingMatrix:
    """Embed a two-strand block at position 1 or 2 of three strands."""
    eye = RingMatrix.identity(obj.dim)
    if obj.mode == SUM:
        return block.direct_sum(eye) if position == 1 else eye.direct_sum(block)
    return block.kron(eye) if position == 1 else eye.kron(block)


def _yb_holds(obj: LinearBraidedObject, block: RingMatrix) -> bool:
    b1 = _three_strand(obj, block, 1)
    b2 = _three_strand(obj, block, 2)
    return b1 * b2 * b1 == b2 * b1 * b2


def yb_check(obj: LinearBraidedObject) -> CheckReport:
    """Exact three-strand checks: Yang-Baxter for sigma and for c, the
    symmetry c^2 = id, and the mixed relation c_1 c_2 sigma_1 = sigma_2 c_1 c_2."""
    size = obj.two_strand_size()
    eye2 = RingMatrix.identity(size)
    c1 = _three_strand(obj, obj.c, 1)
    c2 = _three_strand(obj, obj.c, 2)
    s1 = _three_strand(obj, obj.sigma, 1)
    s2 = _three_strand(obj, obj.sigma, 2)
    checks = [
        ("sigma_yang_baxter", _yb_holds(obj, obj.sigma)),
        ("c_yang_baxter", _yb_holds(obj, obj.c)),
        ("c_squared_identity", obj.c * obj.c == eye2),
        ("mixed_relation", c1 * c2 * s1 == s2 * c1 * c2),
    ]
    return CheckReport(tuple(checks))


def invertible_check(obj: LinearBraidedObject) -> CheckReport:
    size = obj.two_strand_size()
    eye = RingMatrix.identity(size)
    if obj.sigma_inv is None:
        return CheckReport((("sigma_inverse_present", False),))
    return CheckReport((
        ("sigma_inverse_present", True),
        ("sigma_times_inverse", obj.sigma * obj.sigma_inv == eye),
        ("inverse_times_sigma", obj.sigma_inv * obj.sigma == eye),
    ))


def validate_object(obj: LinearBraidedObject) -> CheckReport:
    checks = list(yb_check(obj).checks)
    if obj.sigma_inv is not None:
        checks.extend(invertible_check(obj).checks[1:])
    if obj.f is not None:
        ff = obj.pair_map(obj.f, obj.f)
        checks.append(("f_compatible_with_sigma",
                       obj.sigma * ff == ff * obj.sigma))
    return CheckReport(tuple(checks))


# ---------------------------------------------------------------------------
# stock objects
# ---------------------------------------------------------------------------

def burau_object() -> LinearBraidedObject:
    """The (virtual) Burau object: rank one over Z[t^{+-1}] in sum mode,
    braid letters acting by [[0, 1], [t, 1-t]] and virtual letters by the
    flip."""
    sigma = RingMatrix.from_rows([[0, 1], [T, 1 - T]])
    sigma_inv = RingMatrix.from_rows([[1 - T.inverse(), T.inverse()], [1, 0]])
    return LinearBraidedObject(1, SUM, sigma, sigma_inv, name="burau")


def twisted_burau_object() -> LinearBraidedObject:
    """Two-variable deformation of Burau: [[0, u], [v, 1-uv]] over
    Z[u^{+-1}, v^{+-1}]."""
    uv = U * V
    sigma = RingMatrix.from_rows([[0, U], [V, 1 - uv]])
    sigma_inv = RingMatrix.from_rows(
        [[1 - uv.inverse(), V.inverse()], [U.inverse(), 0]])
    return LinearBraidedObject(1, SUM, sigma, sigma_inv, name="twisted-burau")


# ---------------------------------------------------------------------------
# structure constants and structural braidings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureConstants:
    """Multiplication (and optionally bracket) tables on a basis.

    ``mu[i][j][k]`` is the coefficient of e_k in e_i . e_j; ``nu`` expresses
    the unit in the basis; ``bracket`` has the same shape as ``mu``.
    """

    dim: int
    mu: tuple | None = None
    nu: tuple | None = None
    bracket: tuple | None = None

    def __post_init__(self):
        d = self.dim
        for label, tensor in (("mu", self.mu), ("bracket", self.bracket)):
            if tensor is not None:
                if len(tensor) != d or any(
                        len(row) != d or any(len(cell) != d for cell in row)
                        for row in tensor):
                    raise DimensionError(f"{label} must be {d}x{d}x{d}")
        if self.nu is not None and len(self.nu) != d:
            raise DimensionError("nu must have length dim")

    # -- law checks ----------------------------------------------------

    def right_unit_holds(self) -> bool:
        return self._unit_side(right=True)

    def left_unit_holds(self) -> bool:
        return self._unit_side(right=False)

    def _unit_side(self, right: bool) -> bool:
        if self.mu is None or self.nu is None:
            return False
        d = self.dim
        for i in range(d):
            for k in range(d):
                total = sum(self.nu[j] * (self.mu[i][j][k] if right else self.mu[j][i][k])
                            for j in range(d))
                if total != (1 if i == k else 0):
                    return False
        return True

    def associative(self) -> bool:
        if self.mu is None:
            return False
        d = self.dim
        mu = self.mu
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    for l in range(d):
                        lhs = sum(mu[i][j][m] * mu[m][k][l] for m in range(d))
                        rhs = sum(mu[j][k][m] * mu[i][m][l] for m in range(d))
                        if lhs != rhs:
                            return False
        return True

    def leibniz_holds(self) -> bool:
        """[v,[w,u]] = [[v,w],u] - [[v,u],w] on all basis triples."""
        if self.bracket is None:
            return False
        d = self.dim
        br = self.bracket
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    for l in range(d):
                        lhs = sum(br[j][k][m] * br[i][m][l] for m in range(d))
                        rhs = sum(br[i][j][m] * br[m][k][l] for m in range(d)) \
                            - sum(br[i][k][m] * br[m][j][l] for m in range(d))
                        if lhs != rhs:
                            return False
        return True

    def to_json(self) -> dict:
        data: dict = {"dim": self.dim}
        if self.mu is not None:
            data["mu"] = [[list(cell) for cell in row] for row in self.mu]
        if self.nu is not None:
            data["nu"] = list(self.nu)
        if self.bracket is not None:
            data["bracket"] = [[list(cell) for cell in row] for row in self.bracket]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "StructureConstants":
        def tensor(t):
            return tuple(tuple(tuple(int(x) for x in cell) for cell in row)
                         for row in t) if t is not None else None

        return cls(int(data["dim"]), tensor(data.get("mu")),
                   tuple(int(x) for x in data["nu"]) if data.get("nu") else None,
                   tensor(data.get("bracket")))


def dual_numbers() -> StructureConstants:
    """Z[x]/(x^2) on the basis (1, x)."""
    mu = (((1, 0), (0, 1)), ((0, 1), (0, 0)))
    return StructureConstants(2, mu=mu, nu=(1, 0))


def solvable2_bracket() -> StructureConstants:
    """The 2-dim bracket [e1, e2] = e1, all other basis brackets zero."""
    bracket = (((0, 0), (1, 0)), ((0, 0), (0, 0)))
    return StructureConstants(2, bracket=bracket)


def _assoc_sigma(sc: StructureConstants) -> RingMatrix:
    d = sc.dim
    entries = {}
    for i in range(d):
        for j in range(d):
            col = i * d + j
            for a in range(d):
                if not sc.nu[a]:
                    continue
                for k in range(d):
                    coeff = sc.nu[a] * sc.mu[i][j][k]
                    if coeff:
                        entries[(a * d + k, col)] = LaurentPoly.const(coeff)
    return RingMatrix(d * d, d * d, entries)


def assoc_braiding(sc: StructureConstants, validate: bool = True
                   ) -> LinearBraidedObject:
    """The structural braiding of a unital associative algebra:
    sigma(a tensor b) = 1 tensor a.b.  Weak only - this map is highly
    non-invertible - so it represents positive words only."""
    if validate:
        if not sc.associative():
            raise AxiomError("multiplication is not associative")
        if not (sc.right_unit_holds() and sc.left_unit_holds()):
            raise AxiomError("nu is not a two-sided unit")
    return LinearBraidedObject(sc.dim, TENSOR, _assoc_sigma(sc), name="uaa")


def extend_bracket_with_unit(sc: StructureConstants) -> StructureConstants:
    """Adjoin a formal Lie unit as the last basis vector: brackets with the
    unit vanish."""
    d = sc.dim
    ext = [[[0] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                ext[i][j][k] = sc.bracket[i][j][k]
    nu = tuple([0] * d + [1])
    return StructureConstants(
        d + 1,
        bracket=tuple(tuple(tuple(cell) for cell in row) for row in ext),
        nu=nu)


def leibniz_braiding(sc: StructureConstants, validate: bool = True
                     ) -> LinearBraidedObject:
    """The structural braiding of a Leibniz algebra, built on V + Z.1 with
    the unit adjoined internally: sigma(a tensor b) = b tensor a + 1 tensor [a, b].

    The inverse is computed by exact integer inversion and its failure is an
    error: this braiding is always invertible when the bracket is genuinely
    Leibniz.
    """
    if sc.bracket is None:
        raise AxiomError("leibniz_braiding needs a bracket")
    if validate and not sc.leibniz_holds():
        raise AxiomError("bracket fails the Leibniz identity")
    ext = extend_bracket_with_unit(sc)
    d = ext.dim
    entries = flip_matrix(d).entries()
    for i in range(d):
        for j in range(d):
            col = i * d + j
            for a in range(d):
                if not ext.nu[a]:
                    continue
                for k in range(d):
                    coeff = ext.nu[a] * ext.bracket[i][j][k]
                    if coeff:
                        key = (a * d + k, col)
                        new = entries.get(key, LaurentPoly.const(0)) + coeff
                        if new.is_zero():
                            entries.pop(key, None)
                        else:
                            entries[key] = new
    sigma = RingMatrix(d * d, d * d, entries)
    try:
        sigma_inv = sigma.inverse()
    except InversionError as exc:
        raise AxiomError(f"Leibniz braiding failed to invert: {exc}") from exc
    return LinearBraidedObject(d, TENSOR, sigma, sigma_inv, name="leibniz")


# ---------------------------------------------------------------------------
# finite groups and the adjoint (Hopf) braiding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    """A finite group as a multiplication table on 0..m-1."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = self.order
        for row in self.table:
            if len(row) != m or any(not 0 <= v < m for v in row):
                raise AxiomError("malformed group table")
        if self.identity() is None:
            raise AxiomError("group table has no identity element")
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise AxiomError("group table is not associative")
        for a in range(m):
            if self.inverse(a) is None:
                raise AxiomError(f"element {a} has no inverse")

    @property
    def order(self) -> int:
        return len(self.table)

    def identity(self) -> int | None:
        for e in range(self.order):
            if all(self.table[e][a] == a and self.table[a][e] == a
                   for a in range(self.order)):
                return e
        return None

    def inverse(self, a: int) -> int | None:
        e = self.identity()
        for b in range(self.order):
            if self.table[a][b] == e and self.table[b][a] == e:
                return b
        return None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, h: int) -> int:
        """h^-1 g h."""
        return self.mul(self.mul(self.inverse(h), g), h)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(self.order))


def symmetric_group_table(n: int) -> tuple[GroupTable, list[tuple[int, ...]]]:
    """S_n as a table; elements are one-line permutation tuples in
    lexicographic order, composed as (p o q)(x) = p(q(x))."""
    import itertools as _it
    elems = sorted(_it.permutations(range(1, n + 1)))
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(
        tuple(index[tuple(p[q[x] - 1] for x in range(n))] for q in elems)
        for p in elems)
    return GroupTable(table), elems


def group_hopf_braiding(group: GroupTable) -> LinearBraidedObject:
    """The adjoint braiding of a group algebra on its group-like basis:
    e_g tensor e_h -> e_h tensor e_{h^-1 g h}.  This is exactly the
    linearized conjugation-rack braiding of the group."""
    m = group.order
    entries = {}
    entries_inv = {}
    for g in range(m):
        for h in range(m):
            col = g * m + h
            entries[(h * m + group.conj(g, h), col)] = ONE
    # inverse sends e_h tensor e_k to e_{h k h^-1} tensor e_h
    for h in range(m):
        for k in range(m):
            col = h * m + k
            hk = group.mul(group.mul(h, k), group.inverse(h))
            entries_inv[(hk * m + h, col)] = ONE
    sigma = RingMatrix(m * m, m * m, entries)
    sigma_inv = RingMatrix(m * m, m * m, entries_inv)
    return LinearBraidedObject(m, TENSOR, sigma, sigma_inv, name="group-hopf")


# ---------------------------------------------------------------------------
# twisting and symmetry deformation
# ---------------------------------------------------------------------------

def twist(obj: LinearBraidedObject) -> LinearBraidedObject:
    """Conjugate the local braiding by the ambient symmetry:
    sigma' = c . sigma . c.  An involution, and it preserves both the
    Yang-Baxter property and invertibility."""
    sigma = obj.c * obj.sigma * obj.c
    sigma_inv = obj.c * obj.sigma_inv * obj.c if obj.sigma_inv is not None else None
    return replace(obj, sigma=sigma, sigma_inv=sigma_inv,
                   name=f"twist({obj.name})" if obj.name else "twist")


def _f_power_pair(obj: LinearBraidedObject, power: int) -> RingMatrix:
    """(f^-power tensor f^power) on the two-strand space."""
    if obj.f is None:
        raise AxiomError("object has no automorphism f")
    f_pos = RingMatrix.identity(obj.dim)
    f_base = obj.f if power >= 0 else obj.f.inverse()
    for _ in range(abs(power)):
        f_pos = f_pos * f_base
    f_neg = f_pos.inverse()
    return obj.pair_map(f_neg, f_pos)


def deform_symmetry(obj: LinearBraidedObject, power: int = 1) -> LinearBraidedObject:
    """Replace the ambient symmetry by its f-deformation
    c^{f^power} = (f^-power tensor f^power) . c.

    Requires sigma to commute with f tensor f, and the deformed c must
    square to the identity; both are verified exactly.
    """
    ff = obj.pair_map(obj.f, obj.f)
    if obj.sigma * ff != ff * obj.sigma:
        raise AxiomError("sigma does not commute with f tensor f")
    new_c = _f_power_pair(obj, power) * obj.c
    size = obj.two_strand_size()
    if new_c * new_c != RingMatrix.identity(size):
        raise AxiomError("deformed symmetry is not an involution")
    return replace(obj, c=new_c,
                   name=f"{obj.name}^f{power}" if obj.name else f"deform{power}")


def companion_sigma(obj: LinearBraidedObject) -> LinearBraidedObject:
    """The doubly deformed braiding (f tensor f^-1) . sigma . (f^-1 tensor f),
    the partner of a symmetry deformation by f^2."""
    if obj.f is None:
        raise AxiomError("object has no automorphism f")
    f_inv = obj.f.inverse()
    left = obj.pair_map(obj.f, f_inv)
    right = obj.pair_map(f_inv, obj.f)
    sigma = left * obj.sigma * right
    sigma_inv = (left * obj.sigma_inv * right
                 if obj.sigma_inv is not None else None)
    return replace(obj, sigma=sigma, sigma_inv=sigma_inv,
                   name=f"companion({obj.name})" if obj.name else "companion")


# ---------------------------------------------------------------------------
# words to matrices
# ---------------------------------------------------------------------------

def letter_matrix(obj: LinearBraidedObject, n: int, index: int,
                  block: RingMatrix) -> RingMatrix:
    """Embed a two-strand block at strand position ``index`` (1-based) of n
    strands, in the object's mode."""
    if not 1 <= index <= n - 1:
        raise DimensionError(f"position {index} needs at most {n} strands")
    d = obj.dim
    if obj.mode == SUM:
        size = n * d
        off = (index - 1) * d
        entries = {(r, r): ONE for r in range(size)
                   if not off <= r < off + 2 * d}
        for (r, c), val in block.entries().items():
            entries[(off + r, off + c)] = val
        return RingMatrix(size, size, entries)
    left = RingMatrix.identity(d ** (index - 1))
    right = RingMatrix.identity(d ** (n - index - 1))
    return left.kron(block).kron(right)


def rho_word(obj: LinearBraidedObject, word: VirtualBraidWord) -> RingMatrix:
    """The representation matrix of a word at its strand count; letters are
    multiplied left to right so the rightmost letter acts first on column
    vectors."""
    n = word.strands
    size = n * obj.dim if obj.mode == SUM else obj.dim ** n
    out = RingMatrix.identity(size)
    for g in word.letters:
        if g.kind == "z":
            block = obj.c
        elif g.kind == "s":
            block = obj.sigma
        else:
            if obj.sigma_inv is None:
                raise AxiomError(
                    f"object {obj.name!r} has a weak braiding only; "
                    "sigma inverse is unavailable")
            block = obj.sigma_inv
        out = out * letter_matrix(obj, n, g.index, block)
    return out


def delta_symmetry_matrix(obj: LinearBraidedObject, n: int) -> RingMatrix:
    """The total twist acting through the object's symmetry c; an involution."""
    return rho_word(obj, garside_word(n))


def intertwiner_check(obj_a: LinearBraidedObject, obj_b: LinearBraidedObject,
                      p: RingMatrix, n: int) -> bool:
    """Does P intertwine the two actions on n strands, P rho_A(g) = rho_B(g) P
    for every generator g?"""
    from .braid import Generator

    for i in range(1, n):
        for kind in ("s", "z"):
            word = VirtualBraidWord(n, (Generator(kind, i),))
            if p * rho_word(obj_a, word) != rho_word(obj_b, word) * p:
                return False
    return True


def object_to_json(obj: LinearBraidedObject) -> dict:
    data = {
        "dim": obj.dim,
        "mode": obj.mode,
        "sigma": obj.sigma.to_json(),
        "c": obj.c.to_json(),
    }
    if obj.sigma_inv is not None:
        data["sigma_inv"] = obj.sigma_inv.to_json()
    if obj.f is not None:
        data["f"] = obj.f.to_json()
    if obj.name:
        data["name"] = obj.name
    return data


def object_from_json(data: dict) -> LinearBraidedObject:
    return LinearBraidedObject(
        int(data["dim"]),
        data["mode"],
        RingMatrix.from_json(data["sigma"]),
        RingMatrix.from_json(data["sigma_inv"]) if "sigma_inv" in data else None,
        RingMatrix.from_json(data["c"]) if "c" in data else None,
        RingMatrix.from_json(data["f"]) if "f" in data else None,
        data.get("name", ""),
    )
