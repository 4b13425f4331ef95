"""Self-distributive structures in symmetric monoidal backends.

A structure here is an object V with a comultiplication Delta: V -> V.V and
a binary operation <| : V.V -> V, subject to

  * coassociativity           Delta_1 Delta = Delta_2 Delta
  * weak cocommutativity      c_2 Delta^3 = Delta^3
  * generalized SD            <|^2 = <| (<| . <|) c_2 Delta_3
  * bialgebra compatibility   Delta <| = (<| . <|) c_2 (Delta . Delta)

with rack extras (a right counit eps_2 Delta = Id and a twisted inverse ~|)
and spindle extras (left cocommutativity c_1 Delta^2 = Delta^2 and
Delta-idempotence <| Delta = Id).  Every valid structure carries the braiding

    sigma = <|_2 c_1 Delta_2,      sigma^-1 = ~|_1 c_2 c_1 c_2 Delta_1,

which generalizes (a, b) -> (b, a <| b) for plain shelves.

Two backends are concrete: finite sets with the cartesian product and the
flip (axioms checked by exhaustive element enumeration), and finite-rank
free modules with the tensor product and the flip (axioms checked as exact
matrix identities).  The comultiplication of a set structure may be any map
X -> X x X; the diagonal is just the most common constructor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AxiomError, DimensionError
from .ring import ONE, RingMatrix, flip_matrix
from .sdstruct import Classification, FiniteRackTable, classify, derive_inverse


# ---------------------------------------------------------------------------
# the two backends
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SetGsd:
    size: int
    delta: tuple[tuple[int, int], ...]
    triangle: tuple[tuple[int, ...], ...]
    triangle_tilde: tuple[tuple[int, ...], ...] | None = None
    name: str = ""
    backend: str = field(default="set", init=False)

    def __post_init__(self):
        m = self.size
        if len(self.delta) != m or any(
                len(p) != 2 or not all(0 <= x < m for x in p) for p in self.delta):
            raise DimensionError("delta must map each element to a pair")
        for label, table in (("triangle", self.triangle),
                             ("triangle_tilde", self.triangle_tilde)):
            if table is None:
                continue
            if len(table) != m or any(len(row) != m for row in table) or any(
                    not 0 <= v < m for row in table for v in row):
                raise DimensionError(f"{label} must be an {m}x{m} table")

    def op(self, a: int, b: int) -> int:
        return self.triangle[a][b]

    def to_json(self) -> dict:
        data: dict = {
            "backend": "set",
            "size": self.size,
            "delta": [[x + 1 for x in p] for p in self.delta],
            "triangle": [[v + 1 for v in row] for row in self.triangle],
        }
        if self.triangle_tilde is not None:
            data["triangle_tilde"] = [[v + 1 for v in row]
                                      for row in self.triangle_tilde]
        return data


@dataclass(frozen=True)
class LinearGsd:
    dim: int
    delta: RingMatrix       # d^2 x d
    triangle: RingMatrix    # d x d^2
    counit: RingMatrix | None = None          # 1 x d
    triangle_tilde: RingMatrix | None = None  # d x d^2
    name: str = ""
    backend: str = field(default="linear", init=False)

    def __post_init__(self):
        d = self.dim
        if (self.delta.rows, self.delta.cols) != (d * d, d):
            raise DimensionError("delta must be d^2 x d")
        if (self.triangle.rows, self.triangle.cols) != (d, d * d):
            raise DimensionError("triangle must be d x d^2")
        if self.counit is not None and (self.counit.rows, self.counit.cols) != (1, d):
            raise DimensionError("counit must be 1 x d")
        if self.triangle_tilde is not None and (
                self.triangle_tilde.rows, self.triangle_tilde.cols) != (d, d * d):
            raise DimensionError("triangle_tilde must be d x d^2")

    def flip(self) -> RingMatrix:
        return flip_matrix(self.dim)

    def embed(self, mat: RingMatrix, in_arity: int, position: int,
              total_in: int) -> RingMatrix:
        """Apply mat (V^in_arity -> V^out) at tensor position ``position``
        (1-based) of ``total_in`` input factors."""
        d = self.dim
        left = RingMatrix.identity(d ** (position - 1))
        right = RingMatrix.identity(d ** (total_in - position + 1 - in_arity))
        return left.kron(mat).kron(right)

    def to_json(self) -> dict:
        data: dict = {
            "backend": "linear",
            "dim": self.dim,
            "delta": self.delta.to_json(),
            "triangle": self.triangle.to_json(),
        }
        if self.counit is not None:
            data["counit"] = self.counit.to_json()
        if self.triangle_tilde is not None:
            data["triangle_tilde"] = self.triangle_tilde.to_json()
        return data


GsdStructure = SetGsd | LinearGsd


def gsd_from_json(data: dict) -> GsdStructure:
    if data.get("backend") == "set":
        return SetGsd(
            int(data["size"]),
            tuple(tuple(int(x) - 1 for x in p) for p in data["delta"]),
            tuple(tuple(int(v) - 1 for v in row) for row in data["triangle"]),
            tuple(tuple(int(v) - 1 for v in row) for row in data["triangle_tilde"])
            if data.get("triangle_tilde") is not None else None,
            data.get("name", ""),
        )
    if data.get("backend") == "linear":
        return LinearGsd(
            int(data["dim"]),
            RingMatrix.from_json(data["delta"]),
            RingMatrix.from_json(data["triangle"]),
            RingMatrix.from_json(data["counit"]) if data.get("counit") else None,
            RingMatrix.from_json(data["triangle_tilde"])
            if data.get("triangle_tilde") else None,
            data.get("name", ""),
        )
    raise AxiomError("structure JSON needs backend 'set' or 'linear'")


# ---------------------------------------------------------------------------
# axiom report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GsdReport:
    coassociative: bool
    weakly_cocommutative: bool
    gsd: bool
    compatible: bool
    right_counit: bool | None        # None when no counit is present
    twisted_inverse: bool | None     # None when no ~| is present
    left_cocommutative: bool
    delta_idempotent: bool

    def core(self) -> tuple[bool, bool, bool, bool]:
        return (self.coassociative, self.weakly_cocommutative,
                self.gsd, self.compatible)

    def is_shelf(self) -> bool:
        return all(self.core())

    def is_rack(self) -> bool:
        return self.is_shelf() and self.right_counit is True \
            and self.twisted_inverse is True

    def is_spindle(self) -> bool:
        return self.is_shelf() and self.left_cocommutative and self.delta_idempotent

    def failing(self) -> tuple[str, ...]:
        names = ("coassociative", "weakly_cocommutative", "gsd", "compatible")
        return tuple(n for n, ok in zip(names, self.core()) if not ok)

    def to_json(self) -> dict:
        return {
            "coassociative": self.coassociative,
            "weakly_cocommutative": self.weakly_cocommutative,
            "gsd": self.gsd,
            "compatible": self.compatible,
            "right_counit": self.right_counit,
            "twisted_inverse": self.twisted_inverse,
            "left_cocommutative": self.left_cocommutative,
            "delta_idempotent": self.delta_idempotent,
            "shelf": self.is_shelf(),
            "rack": self.is_rack(),
            "spindle": self.is_spindle(),
        }


def validate(g: GsdStructure) -> GsdReport:
    if isinstance(g, SetGsd):
        return _validate_set(g)
    return _validate_linear(g)


def _validate_set(g: SetGsd) -> GsdReport:
    m = g.size
    delta = g.delta
    op = g.triangle

    def delta_iter(a: int, copies: int) -> tuple[int, ...]:
        # (Delta applied to the first slot repeatedly) giving ``copies`` slots
        out = (a,)
        for _ in range(copies - 1):
            first = delta[out[0]]
            out = first + out[1:]
        return out

    coassoc = all(
        delta[delta[a][0]] + (delta[a][1],) ==
        (delta[a][0],) + delta[delta[a][1]]
        for a in range(m))
    d3 = [delta_iter(a, 4) for a in range(m)]
    weak = all(t[1] == t[2] for t in d3)
    gsd_ok = all(
        op[op[a][b]][c] ==
        op[op[a][delta[c][0]]][op[b][delta[c][1]]]
        for a in range(m) for b in range(m) for c in range(m))
    compat = all(
        delta[op[a][b]] == (op[delta[a][0]][delta[b][0]],
                            op[delta[a][1]][delta[b][1]])
        for a in range(m) for b in range(m))
    right_counit = all(delta[a][0] == a for a in range(m))
    tilde = g.triangle_tilde
    twisted = None
    if tilde is not None:
        twisted = all(
            tilde[op[a][delta[b][1]]][delta[b][0]] == a
            and op[tilde[a][delta[b][1]]][delta[b][0]] == a
            for a in range(m) for b in range(m))
    d2 = [delta_iter(a, 3) for a in range(m)]
    left_cocomm = all(t[0] == t[1] for t in d2)
    idem = all(op[delta[a][0]][delta[a][1]] == a for a in range(m))
    return GsdReport(coassoc, weak, gsd_ok, compat, right_counit, twisted,
                     left_cocomm, idem)


def _validate_linear(g: LinearGsd) -> GsdReport:
    d = g.dim
    eye = RingMatrix.identity(d)
    delta, tri, c = g.delta, g.triangle, g.flip()

    coassoc = g.embed(delta, 1, 1, 2) * delta == g.embed(delta, 1, 2, 2) * delta

    d_iter = delta
    for k in (2, 3):
        d_iter = g.embed(delta, 1, 1, k) * d_iter  # now V -> V^{k+1}
    weak = g.embed(c, 2, 2, 4) * d_iter == d_iter

    lhs = tri * g.embed(tri, 2, 1, 3)
    rhs = tri * tri.kron(tri) * g.embed(c, 2, 2, 4) * g.embed(delta, 1, 3, 3)
    gsd_ok = lhs == rhs

    compat = delta * tri == tri.kron(tri) * g.embed(c, 2, 2, 4) * delta.kron(delta)

    right_counit = None
    if g.counit is not None:
        right_counit = eye.kron(g.counit) * delta == eye

    twisted = None
    if g.triangle_tilde is not None and g.counit is not None:
        tilde = g.triangle_tilde
        prep = g.embed(c, 2, 2, 3) * g.embed(delta, 1, 2, 2)
        target = eye.kron(g.counit)
        twisted = (tilde * g.embed(tri, 2, 1, 3) * prep == target
                   and tri * g.embed(tilde, 2, 1, 3) * prep == target)

    d2 = g.embed(delta, 1, 1, 2) * delta
    left_cocomm = g.embed(c, 2, 1, 3) * d2 == d2
    idem = tri * delta == eye
    return GsdReport(coassoc, weak, gsd_ok, compat, right_counit, twisted,
                     left_cocomm, idem)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def diagonal_delta(m: int) -> tuple[tuple[int, int], ...]:
    return tuple((a, a) for a in range(m))


def from_finite_shelf(table: FiniteRackTable, name: str = "") -> SetGsd:
    """A plain shelf with the diagonal comultiplication; its braiding is
    exactly (a, b) -> (b, a <| b)."""
    cls: Classification = classify(table)
    if not cls.is_at_least("shelf"):
        raise AxiomError("operation table is not self-distributive")
    return SetGsd(table.size, diagonal_delta(table.size), table.op,
                  derive_inverse(table), name=name or "finite-shelf")


def from_uaa(sc, counit: tuple[int, ...] | None = None,
             validate_unit: bool = True) -> LinearGsd:
    """An algebra with right unit as a generalized shelf:
    Delta(v) = 1 tensor v and <| = multiplication.  The generalized SD axiom
    is then exactly associativity.  ``counit`` may declare an algebra
    character (a ring map to the coefficients), validated when given."""
    d = sc.dim
    if sc.mu is None or sc.nu is None:
        raise AxiomError("from_uaa needs mu and nu")
    if validate_unit and not sc.right_unit_holds():
        raise AxiomError("nu is not a right unit")
    delta_entries = {}
    for j in range(d):
        for a in range(d):
            if sc.nu[a]:
                delta_entries[(a * d + j, j)] = sc.nu[a] * ONE
    tri_entries = {}
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if sc.mu[i][j][k]:
                    tri_entries[(k, i * d + j)] = sc.mu[i][j][k] * ONE
    eps = None
    if counit is not None:
        if len(counit) != d:
            raise DimensionError("character must have length dim")
        for i in range(d):
            for j in range(d):
                if sum(sc.mu[i][j][k] * counit[k] for k in range(d)) \
                        != counit[i] * counit[j]:
                    raise AxiomError("declared counit is not an algebra character")
        if sum(sc.nu[a] * counit[a] for a in range(d)) != 1:
            raise AxiomError("character must send the unit to 1")
        eps = RingMatrix(1, d, {(0, j): counit[j] * ONE
                                for j in range(d) if counit[j]})
    return LinearGsd(d, RingMatrix(d * d, d, delta_entries),
                     RingMatrix(d, d * d, tri_entries), eps, None, name="uaa")


def from_leibniz(sc, name: str = "leibniz") -> LinearGsd:
    """A bilinear bracket as a generalized shelf on V + Z.1:

        Delta(v) = v tensor 1 + 1 tensor v, Delta(1) = 1 tensor 1,
        eps(v) = 0, eps(1) = 1,
        v <| w = [v, w],  v <| 1 = v,  1 <| v = 0,  and ~| likewise with -[,].

    Validation is left to the caller: the generalized SD axiom holds exactly
    when the bracket is Leibniz, and the report will say so either way.
    """
    if sc.bracket is None:
        raise AxiomError("from_leibniz needs a bracket")
    d = sc.dim
    dd = d + 1  # unit adjoined as the last basis vector
    unit = d
    delta_entries = {}
    for j in range(d):
        delta_entries[(j * dd + unit, j)] = ONE
        delta_entries[(unit * dd + j, j)] = ONE
    delta_entries[(unit * dd + unit, unit)] = ONE
    eps = RingMatrix(1, dd, {(0, unit): ONE})

    def op_entries(sign: int) -> dict:
        entries = {}
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    if sc.bracket[i][j][k]:
                        entries[(k, i * dd + j)] = sign * sc.bracket[i][j][k] * ONE
        for i in range(dd):
            entries[(i, i * dd + unit)] = ONE  # v <| 1 = v for all of V-bar
        return entries

    return LinearGsd(dd, RingMatrix(dd * dd, dd, delta_entries),
                     RingMatrix(dd, dd * dd, op_entries(1)), eps,
                     RingMatrix(dd, dd * dd, op_entries(-1)), name=name)


def linearize(g: SetGsd) -> LinearGsd:
    """Chains over a set structure are the free module on the set; all the
    structure maps linearize entrywise.  The point map linearizes to the
    all-ones character."""
    m = g.size
    delta = RingMatrix(m * m, m,
                       {(g.delta[a][0] * m + g.delta[a][1], a): ONE
                        for a in range(m)})
    tri = RingMatrix(m, m * m,
                     {(g.triangle[a][b], a * m + b): ONE
                      for a in range(m) for b in range(m)})
    eps = RingMatrix(1, m, {(0, a): ONE for a in range(m)})
    tilde = None
    if g.triangle_tilde is not None:
        tilde = RingMatrix(m, m * m,
                           {(g.triangle_tilde[a][b], a * m + b): ONE
                            for a in range(m) for b in range(m)})
    return LinearGsd(m, delta, tri, eps, tilde, name=g.name or "linearized")


# ---------------------------------------------------------------------------
# the induced braiding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SetBraiding:
    size: int
    forward: tuple[tuple[tuple[int, int], ...], ...]   # forward[a][b] = sigma(a,b)
    backward: tuple[tuple[tuple[int, int], ...], ...] | None

    def apply(self, a: int, b: int) -> tuple[int, int]:
        return self.forward[a][b]


def braiding_of(g: GsdStructure, check: bool = True):
    """sigma = <|_2 c_1 Delta_2 in the structure's backend; the inverse is
    attached exactly when the structure validates as a rack."""
    report = validate(g) if check else None
    if check and not report.is_shelf():
        raise AxiomError(
            f"structure fails shelf axioms: {', '.join(report.failing())}")
    if isinstance(g, SetGsd):
        m = g.size
        forward = tuple(
            tuple((g.delta[b][0], g.triangle[a][g.delta[b][1]])
                  for b in range(m))
            for a in range(m))
        backward = None
        if g.triangle_tilde is not None and (not check or report.is_rack()):
            backward = tuple(
                tuple((g.triangle_tilde[v][g.delta[u][1]], g.delta[u][0])
                      for v in range(m))
                for u in range(m))
        return SetBraiding(m, forward, backward)
    d = g.dim
    c = g.flip()
    sigma = g.embed(g.triangle, 2, 2, 3) * g.embed(c, 2, 1, 3) \
        * g.embed(g.delta, 1, 2, 2)
    sigma_inv = None
    if g.triangle_tilde is not None and (not check or report.is_rack()):
        sigma_inv = (g.embed(g.triangle_tilde, 2, 1, 3)
                     * g.embed(c, 2, 2, 3) * g.embed(c, 2, 1, 3)
                     * g.embed(c, 2, 2, 3) * g.embed(g.delta, 1, 1, 2))
    return sigma, sigma_inv


def braided_object_of(g: GsdStructure, check: bool = True):
    """Package the braiding as a tensor-mode linear braided object (set
    structures are linearized first)."""
    from .linrep import TENSOR, LinearBraidedObject

    lin = linearize(g) if isinstance(g, SetGsd) else g
    sigma, sigma_inv = braiding_of(lin, check=check)
    return LinearBraidedObject(lin.dim, TENSOR, sigma, sigma_inv,
                               name=g.name or "gsd")


def braided_coalgebra_check(g: GsdStructure) -> dict:
    """Which of the coalgebra-braiding compatibilities hold:

        (semi)    Delta_2 sigma = sigma_1 sigma_2 Delta_1
        (full)    Delta_1 sigma = sigma_2 sigma_1 Delta_2
        (cocomm)  sigma Delta = Delta
    """
    if isinstance(g, SetGsd):
        braiding = braiding_of(g, check=False)

        def sig_at(t: tuple, pos: int) -> tuple:
            out = list(t)
            out[pos], out[pos + 1] = braiding.apply(out[pos], out[pos + 1])
            return tuple(out)

        m = g.size
        semi = True
        full = True
        for a in range(m):
            for b in range(m):
                p, q = braiding.apply(a, b)
                lhs1 = (p,) + g.delta[q]
                rhs1 = sig_at(sig_at(g.delta[a] + (b,), 1), 0)
                if lhs1 != rhs1:
                    semi = False
                lhs2 = g.delta[p] + (q,)
                rhs2 = sig_at(sig_at((a,) + g.delta[b], 0), 1)
                if lhs2 != rhs2:
                    full = False
        cocomm = all(braiding.apply(*g.delta[a]) == g.delta[a] for a in range(m))
        return {"semi_braided_coalgebra": semi,
                "braided_coalgebra": semi and full,
                "sigma_cocommutative": cocomm}
    sigma, _ = braiding_of(g, check=False)
    delta = g.delta
    semi = g.embed(delta, 1, 2, 2) * sigma == \
        g.embed(sigma, 2, 1, 3) * g.embed(sigma, 2, 2, 3) * g.embed(delta, 1, 1, 2)
    full = g.embed(delta, 1, 1, 2) * sigma == \
        g.embed(sigma, 2, 2, 3) * g.embed(sigma, 2, 1, 3) * g.embed(delta, 1, 2, 2)
    cocomm = sigma * delta == delta
    return {"semi_braided_coalgebra": semi,
            "braided_coalgebra": semi and full,
            "sigma_cocommutative": cocomm}
