"""Face and degeneracy families from braidings and their homology.

A weakly braided object V with an upper cut eps (a map V -> I with
(eps.eps) sigma = eps.eps) carries two families of face maps on C_n = V^n:

    (ed)_{n,i} = eps_1 (sigma_{V^{i-1},V} . Id^{n-i})
    (de)_{n,i} = eps_n (Id^{i-1} . sigma_{V,V^{n-i}})

satisfying all pre-bisimplicial identities, with total differentials

    ed_n = sum_i (-1)^{i-1} (ed)_{n,i},    de_n = sum_i (-1)^{i-1} (de)_{n,i}

forming an exact bidifferential: ed.ed = ed.de + de.ed = de.de = 0.  A
comultiplication that is coalgebra-compatible with the braiding attaches
degeneracies s_{n,i} = Delta_i, reaching the weakly simplicial level when
the structure is a spindle.

For generalized self-distributive structures with a character the faces
specialize to

    (ed)_{n,i} = ((eps . <|^{i-1}) theta_(i) (Delta^{i-1})_i) . Id^{n-i}
    (de)_{n,i} = Id^{i-1} . eps . chi^{n-i},      chi = eps_2 Delta,

with theta_(i) the explicit shuffle permutation on 2i-1 factors sending
j -> 2j (j < i) and i+j -> 2j+1; for a plain rack with the diagonal and the
all-ones character these are exactly the classical rack-homology faces.
Sign and index conventions follow the formulas above verbatim (faces
indexed 1..n); adopting this shifted indexing avoids silent off-by-one
errors.

Homology itself is computed only over the integers, via Smith normal form:
torsion in degree n is read off the invariant factors of the boundary
coming from degree n+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomError, DimensionError
from .gsd import GsdStructure, LinearGsd, SetGsd, braided_object_of, linearize, validate
from .linrep import SUM, TENSOR, LinearBraidedObject, letter_matrix
from .ring import RingMatrix, permutation_matrix, smith_normal_form


@dataclass
class PresimplicialComplex:
    """Chain data up to a maximal degree N.

    ``faces[n][i-1]`` is the i-th face C_n -> C_{n-1} (1 <= i <= n <= N);
    ``faces2`` is the optional second family, ``degeneracies[n][i-1]`` the
    optional s_{n,i}: C_n -> C_{n+1} (1 <= i <= n < N).
    """

    mode: str
    dim: int
    max_degree: int
    ranks: list[int]
    faces: dict[int, list[RingMatrix]]
    faces2: dict[int, list[RingMatrix]] | None = None
    degeneracies: dict[int, list[RingMatrix]] | None = None
    obj: LinearBraidedObject | None = None
    eps: RingMatrix | None = None

    def rank(self, n: int) -> int:
        return self.ranks[n]


def _space_rank(mode: str, dim: int, n: int) -> int:
    if mode == SUM:
        return n * dim
    return dim ** n


def _block_tensor(mode: str, a: RingMatrix, b: RingMatrix) -> RingMatrix:
    return a.direct_sum(b) if mode == SUM else a.kron(b)


def power_braiding(obj: LinearBraidedObject, a: int, b: int,
                   block: RingMatrix) -> RingMatrix:
    """The braiding of V^a past V^b on a+b strands, composed from two-strand
    blocks: (c_b...c_1)(c_{b+1}...c_2)...(c_{a+b-1}...c_a)."""
    n = a + b
    out = RingMatrix.identity(_space_rank(obj.mode, obj.dim, n))
    for j in range(1, a + 1):
        for pos in range(b + j - 1, j - 1, -1):
            out = out * letter_matrix(obj, n, pos, block)
    return out


def _eps_at_first(obj: LinearBraidedObject, eps: RingMatrix, n: int) -> RingMatrix:
    rest = RingMatrix.identity(_space_rank(obj.mode, obj.dim, n - 1))
    return _block_tensor(obj.mode, eps, rest)


def _eps_at_last(obj: LinearBraidedObject, eps: RingMatrix, n: int) -> RingMatrix:
    rest = RingMatrix.identity(_space_rank(obj.mode, obj.dim, n - 1))
    return _block_tensor(obj.mode, rest, eps)


def check_upper_cut(obj: LinearBraidedObject, eps: RingMatrix) -> None:
    if obj.mode == SUM:
        if eps.rows != 0 or eps.cols != obj.dim:
            raise DimensionError(
                "in sum mode the unit object is the zero module; the cut is "
                f"the 0 x {obj.dim} matrix")
        return
    if (eps.rows, eps.cols) != (1, obj.dim):
        raise DimensionError(f"cut must be 1 x {obj.dim} in tensor mode")
    pair = eps.kron(eps)
    if pair * obj.sigma != pair:
        raise AxiomError("cut is not compatible with the braiding")


def faces_from_braiding(obj: LinearBraidedObject, eps: RingMatrix,
                        max_degree: int) -> PresimplicialComplex:
    """Both face families up to the requested degree; the pre-bisimplicial
    identities are theorems for any braided object with a cut and can be
    certified exactly with ``certify_levels``."""
    check_upper_cut(obj, eps)
    mode, d = obj.mode, obj.dim
    faces: dict[int, list[RingMatrix]] = {}
    faces2: dict[int, list[RingMatrix]] = {}
    for n in range(1, max_degree + 1):
        fam1 = []
        fam2 = []
        for i in range(1, n + 1):
            front = power_braiding(obj, i - 1, 1, obj.sigma)
            rest = RingMatrix.identity(_space_rank(mode, d, n - i))
            fam1.append(_eps_at_first(obj, eps, n)
                        * _block_tensor(mode, front, rest))
            lead = RingMatrix.identity(_space_rank(mode, d, i - 1))
            back = power_braiding(obj, 1, n - i, obj.sigma)
            fam2.append(_eps_at_last(obj, eps, n)
                        * _block_tensor(mode, lead, back))
        faces[n] = fam1
        faces2[n] = fam2
    ranks = [_space_rank(mode, d, n) for n in range(max_degree + 1)]
    return PresimplicialComplex(mode, d, max_degree, ranks, faces, faces2,
                                None, obj, eps)


def degeneracies_from_delta(complex_: PresimplicialComplex,
                            delta: RingMatrix,
                            require_coalgebra: bool = True) -> PresimplicialComplex:
    """Attach s_{n,i} = Delta_i.  The compatibility
    Delta_2 sigma = sigma_1 sigma_2 Delta_1 (the semi-braided-coalgebra law)
    is what makes these interact correctly with the first face family; it is
    checked up front unless disabled."""
    if complex_.mode != TENSOR:
        raise AxiomError("degeneracies need the tensor mode")
    d = complex_.dim
    if (delta.rows, delta.cols) != (d * d, d):
        raise DimensionError("delta must be d^2 x d")
    obj = complex_.obj
    if require_coalgebra:
        if obj is None:
            raise AxiomError("complex lost its braided object; cannot check")
        eye = RingMatrix.identity(d)
        lhs = eye.kron(delta) * obj.sigma
        rhs = (obj.sigma.kron(eye)) * (eye.kron(obj.sigma)) * delta.kron(eye)
        if lhs != rhs:
            raise AxiomError("comultiplication is not braided-coalgebra "
                             "compatible with the braiding")
    degeneracies: dict[int, list[RingMatrix]] = {}
    for n in range(1, complex_.max_degree):
        degeneracies[n] = [
            RingMatrix.identity(d ** (i - 1)).kron(delta)
            .kron(RingMatrix.identity(d ** (n - i)))
            for i in range(1, n + 1)
        ]
    return PresimplicialComplex(complex_.mode, d, complex_.max_degree,
                                list(complex_.ranks), complex_.faces,
                                complex_.faces2, degeneracies,
                                complex_.obj, complex_.eps)


# ---------------------------------------------------------------------------
# faces straight from a generalized SD structure
# ---------------------------------------------------------------------------

def check_character(g: LinearGsd, eps: RingMatrix) -> None:
    d = g.dim
    if (eps.rows, eps.cols) != (1, d):
        raise DimensionError(f"character must be 1 x {d}")
    pair = eps.kron(eps)
    if eps * g.triangle != pair:
        raise AxiomError("character fails eps(a <| b) = eps(a) eps(b)")
    if pair * g.delta != eps:
        raise AxiomError("character fails (eps . eps) Delta = eps")


def shuffle_permutation(i: int) -> list[int]:
    """theta_(i) on 2i-1 positions: j -> 2j for j < i, and i+j -> 2j+1."""
    images = [0] * (2 * i - 1)
    for j in range(1, i):
        images[j - 1] = 2 * j
    for j in range(0, i):
        images[i + j - 1] = 2 * j + 1
    return images


def gsd_faces(g: GsdStructure, eps: RingMatrix | None,
              max_degree: int) -> PresimplicialComplex:
    """The face families of a generalized SD structure with a character.

    Set structures are linearized (integer chains on tuples); eps defaults
    to the structure's stored counit/character.  The output agrees, matrix
    for matrix, with faces_from_braiding applied to the induced braiding and
    the same cut.
    """
    report = validate(g)
    if not report.is_shelf():
        raise AxiomError(
            f"structure fails shelf axioms: {', '.join(report.failing())}")
    lin = linearize(g) if isinstance(g, SetGsd) else g
    if eps is None:
        eps = lin.counit
    if eps is None:
        raise AxiomError("no character available: pass eps explicitly")
    check_character(lin, eps)
    d = lin.dim
    eye = RingMatrix.identity(d)
    chi = eye.kron(eps) * lin.delta
    faces: dict[int, list[RingMatrix]] = {}
    faces2: dict[int, list[RingMatrix]] = {}
    for n in range(1, max_degree + 1):
        fam1 = []
        fam2 = []
        for i in range(1, n + 1):
            # (eps . <|^{i-1}) theta_(i) (Delta^{i-1})_i on the first i slots
            tower = eye  # Delta^{i-1}: V -> V^i
            for k in range(1, i):
                tower = lin.embed(lin.delta, 1, 1, k) * tower
            inner = RingMatrix.identity(d ** (i - 1)).kron(tower)
            theta = permutation_matrix(shuffle_permutation(i), 2 * i - 1, d)
            head = eps
            for _ in range(i - 1):
                head = head.kron(lin.triangle)
            block = head * theta * inner
            fam1.append(block.kron(RingMatrix.identity(d ** (n - i))))
            tail = RingMatrix.identity(d ** (i - 1)).kron(eps)
            for _ in range(n - i):
                tail = tail.kron(chi)
            fam2.append(tail)
        faces[n] = fam1
        faces2[n] = fam2
    ranks = [d ** n for n in range(max_degree + 1)]
    obj = braided_object_of(g, check=False)
    return PresimplicialComplex(TENSOR, d, max_degree, ranks, faces, faces2,
                                None, obj, eps)


# ---------------------------------------------------------------------------
# simplicial identity certification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    holds: bool
    first_failure: tuple | None = None


@dataclass(frozen=True)
class LevelReport:
    identities: dict
    level_first: str       # achieved level of (faces, degeneracies)
    level_second: str      # achieved level of (faces2, degeneracies)

    def to_json(self) -> dict:
        return {
            "identities": {k: {"holds": v.holds,
                               "first_failure": list(v.first_failure)
                               if v.first_failure else None}
                           for k, v in self.identities.items()},
            "level_first_family": self.level_first,
            "level_second_family": self.level_second,
        }


def _check_pairs(out: dict, key: str, pairs) -> None:
    holds = True
    first = None
    for tag, lhs, rhs in pairs:
        if lhs != rhs:
            holds = False
            first = tag
            break
    out[key] = IdentityReport(holds, first)


def certify_levels(complex_: PresimplicialComplex) -> LevelReport:
    """Exact verification of every simplicial identity the data supports."""
    out: dict[str, IdentityReport] = {}
    n_max = complex_.max_degree
    fam = {"d": complex_.faces}
    if complex_.faces2 is not None:
        fam["d'"] = complex_.faces2

    for label, faces in fam.items():
        _check_pairs(out, f"simpl1[{label}]", (
            ((n, i, j),
             faces[n - 1][i - 1] * faces[n][j - 1],
             faces[n - 1][j - 2] * faces[n][i - 1])
            for n in range(2, n_max + 1)
            for j in range(2, n + 1) for i in range(1, j)))

    if complex_.faces2 is not None:
        d1, d2 = complex_.faces, complex_.faces2
        _check_pairs(out, "simpl1'", (
            ((n, i, j),
             d1[n - 1][i - 1] * d2[n][j - 1],
             d2[n - 1][j - 2] * d1[n][i - 1])
            for n in range(2, n_max + 1)
            for j in range(2, n + 1) for i in range(1, j)))
        _check_pairs(out, "simpl1''", (
            ((n, i, j),
             d2[n - 1][i - 1] * d1[n][j - 1],
             d1[n - 1][j - 2] * d2[n][i - 1])
            for n in range(2, n_max + 1)
            for j in range(2, n + 1) for i in range(1, j)))

    s = complex_.degeneracies
    if s is not None:
        _check_pairs(out, "simpl2", (
            ((n, i, j),
             s[n + 1][i - 1] * s[n][j - 1],
             s[n + 1][j] * s[n][i - 1])
            for n in range(1, n_max - 1)
            for j in range(1, n + 1) for i in range(1, j + 1)))
        for label, faces in fam.items():
            _check_pairs(out, f"simpl3[{label}]", (
                ((n, i, j),
                 faces[n + 1][i - 1] * s[n][j - 1],
                 s[n - 1][j - 2] * faces[n][i - 1])
                for n in range(2, n_max)
                for j in range(2, n + 1) for i in range(1, j)))
            _check_pairs(out, f"simpl4[{label}]", (
                ((n, i, j),
                 faces[n + 1][i - 1] * s[n][j - 1],
                 s[n - 1][j - 1] * faces[n][i - 2])
                for n in range(2, n_max)
                for j in range(1, n + 1) for i in range(j + 2, n + 2)))
            _check_pairs(out, f"simpl5[{label}]", (
                ((n, i),
                 faces[n + 1][i - 1] * s[n][i - 1],
                 faces[n + 1][i] * s[n][i - 1])
                for n in range(1, n_max)
                for i in range(1, n + 1)))
            _check_pairs(out, f"simpl6[{label}]", (
                ((n, i),
                 faces[n + 1][i - 1] * s[n][i - 1],
                 RingMatrix.identity(complex_.ranks[n]))
                for n in range(1, n_max)
                for i in range(1, n + 1)))

    def achieved(label: str) -> str:
        if not out.get(f"simpl1[{label}]", IdentityReport(False)).holds:
            return "none"
        if s is None:
            return "presimplicial"
        very_weak = (out["simpl2"].holds
                     and out[f"simpl3[{label}]"].holds
                     and out[f"simpl4[{label}]"].holds)
        if not very_weak:
            return "presimplicial"
        if not out[f"simpl5[{label}]"].holds:
            return "very_weakly_simplicial"
        if not out[f"simpl6[{label}]"].holds:
            return "weakly_simplicial"
        return "simplicial"

    return LevelReport(out, achieved("d"),
                       achieved("d'") if complex_.faces2 is not None else "absent")


# ---------------------------------------------------------------------------
# total differentials and homology
# ---------------------------------------------------------------------------

def total_differential(complex_: PresimplicialComplex,
                       which="first") -> dict[int, RingMatrix]:
    """Boundary matrices per degree.

    Each family totals with the standard presimplicial sign:
    sum_i (-1)^{i-1} d_{n,i}.  (Stated over the reversed index, the second
    family's sign reads (-1)^{n-i}; in face indexing both are uniform.)
    A pair (alpha, beta) takes alpha * first + beta * second, which squares
    to zero because the two differentials anticommute.  The square-zero
    property is verified exactly before returning.
    """
    if which == "first":
        coeffs = (1, 0)
    elif which == "second":
        coeffs = (0, 1)
    else:
        coeffs = tuple(which)
    alpha, beta = coeffs
    if beta and complex_.faces2 is None:
        raise AxiomError("complex has no second face family")
    diffs: dict[int, RingMatrix] = {}
    for n in range(1, complex_.max_degree + 1):
        total = RingMatrix.zeros(complex_.ranks[n - 1], complex_.ranks[n])
        if alpha:
            for i in range(1, n + 1):
                term = complex_.faces[n][i - 1].scale(alpha)
                total = total + (term if i % 2 == 1 else -term)
        if beta:
            for i in range(1, n + 1):
                term = complex_.faces2[n][i - 1].scale(beta)
                total = total + (term if i % 2 == 1 else -term)
        diffs[n] = total
    for n in range(2, complex_.max_degree + 1):
        if not (diffs[n - 1] * diffs[n]).is_zero():
            raise AxiomError(f"differential does not square to zero at degree {n}")
    return diffs


def bidifferential_check(complex_: PresimplicialComplex) -> dict[str, bool]:
    """The three exact relations ed.ed = ed.de + de.ed = de.de = 0."""
    first = total_differential(complex_, "first")
    second = total_differential(complex_, "second")
    n_max = complex_.max_degree
    return {
        "first_squared_zero": all(
            (first[n - 1] * first[n]).is_zero() for n in range(2, n_max + 1)),
        "anticommute": all(
            (first[n - 1] * second[n] + second[n - 1] * first[n]).is_zero()
            for n in range(2, n_max + 1)),
        "second_squared_zero": all(
            (second[n - 1] * second[n]).is_zero() for n in range(2, n_max + 1)),
    }


@dataclass(frozen=True)
class DegreeHomology:
    chain_rank: int
    betti: int
    torsion: tuple[int, ...]

    def to_json(self) -> dict:
        return {"rank": self.chain_rank, "betti": self.betti,
                "torsion": list(self.torsion)}


@dataclass(frozen=True)
class HomologyResult:
    degrees: dict[int, DegreeHomology]

    def to_json(self) -> dict:
        return {str(n): h.to_json() for n, h in sorted(self.degrees.items())}


def homology_of(complex_: PresimplicialComplex,
                diffs: dict[int, RingMatrix]) -> HomologyResult:
    """Integral homology in degrees 0..N-1 (degree N would need the boundary
    from N+1).  Betti and torsion come from Smith normal form; torsion in
    degree n is the set of invariant factors > 1 of the boundary from n+1,
    valid because kernels of integer matrices are saturated."""
    n_max = complex_.max_degree
    for n, mat in diffs.items():
        if not mat.is_integer():
            raise AxiomError("homology is computed over the integers only")
        if n >= 2 and not (diffs[n - 1] * diffs[n]).is_zero():
            raise AxiomError(f"boundary squared is nonzero at degree {n}")
    snf = {n: smith_normal_form(diffs[n]) for n in diffs}
    degrees = {}
    for n in range(0, n_max):
        rank_n = snf[n].rank if n in snf else 0
        rank_up = snf[n + 1].rank
        betti = complex_.ranks[n] - rank_n - rank_up
        degrees[n] = DegreeHomology(complex_.ranks[n], betti,
                                    snf[n + 1].torsion())
    return HomologyResult(degrees)


# ---------------------------------------------------------------------------
# degenerate subcomplex
# ---------------------------------------------------------------------------

def _lattice_signature(columns: list[RingMatrix]) -> tuple:
    if not columns:
        return (0, 1)
    rows = columns[0].rows
    stacked_entries = {}
    col_off = 0
    for mat in columns:
        for (r, c), v in mat.entries().items():
            stacked_entries[(r, col_off + c)] = v
        col_off += mat.cols
    stacked = RingMatrix(rows, col_off, stacked_entries)
    res = smith_normal_form(stacked)
    prod = 1
    for dd in res.diagonal:
        if dd:
            prod *= dd
    return (res.rank, prod)


def degenerate_subcomplex_contained(complex_: PresimplicialComplex,
                                    diffs: dict[int, RingMatrix]) -> bool:
    """Is the span of the degeneracy images a subcomplex of the boundary?
    Checked as an integer-lattice containment via invariant factors."""
    s = complex_.degeneracies
    if s is None:
        raise AxiomError("complex has no degeneracies")
    for n in range(2, complex_.max_degree + 1):
        if n - 1 not in s:
            continue
        d_of_deg = [diffs[n] * mat for mat in s[n - 1]]
        base = list(s[n - 2]) if n - 2 in s else []
        if not base:
            if any(not m.is_zero() for m in d_of_deg):
                return False
            continue
        if _lattice_signature(base) != _lattice_signature(base + d_of_deg):
            return False
    return True


def degenerate_basis_indices(complex_: PresimplicialComplex, n: int) -> set[int]:
    """Row indices spanned by degeneracies landing in degree n, provided
    every degeneracy column is a standard basis vector (true for diagonal
    comultiplications and basis units); raises otherwise."""
    s = complex_.degeneracies
    if s is None or n - 1 not in s:
        return set()
    hit: set[int] = set()
    for mat in s[n - 1]:
        cols: dict[int, list] = {}
        for (r, c), v in mat.entries().items():
            cols.setdefault(c, []).append((r, v))
        for c in range(mat.cols):
            col = cols.get(c, [])
            if len(col) != 1 or not col[0][1].is_one():
                raise AxiomError(
                    "degeneracy image is not spanned by basis vectors; "
                    "normalized homology is unavailable for this structure")
            hit.add(col[0][0])
    return hit


def normalized_homology(complex_: PresimplicialComplex,
                        diffs: dict[int, RingMatrix]) -> HomologyResult:
    """Homology of the quotient by the degenerate subcomplex, for structures
    whose degeneracies hit basis vectors (diagonal comultiplications)."""
    n_max = complex_.max_degree
    keep: dict[int, list[int]] = {}
    for n in range(0, n_max + 1):
        dead = degenerate_basis_indices(complex_, n)
        keep[n] = [r for r in range(complex_.ranks[n]) if r not in dead]
    q_diffs: dict[int, RingMatrix] = {}
    for n in range(1, n_max + 1):
        row_of = {r: k for k, r in enumerate(keep[n - 1])}
        col_of = {c: k for k, c in enumerate(keep[n])}
        entries = {}
        for (r, c), v in diffs[n].entries().items():
            if r in row_of and c in col_of:
                entries[(row_of[r], col_of[c])] = v
        q_diffs[n] = RingMatrix(len(keep[n - 1]), len(keep[n]), entries)
    for n in range(2, n_max + 1):
        if not (q_diffs[n - 1] * q_diffs[n]).is_zero():
            raise AxiomError(
                "degenerate span is not a subcomplex; quotient is undefined")
    snf = {n: smith_normal_form(q_diffs[n]) for n in q_diffs}
    degrees = {}
    for n in range(0, n_max):
        rank_n = snf[n].rank if n in snf else 0
        betti = len(keep[n]) - rank_n - snf[n + 1].rank
        degrees[n] = DegreeHomology(len(keep[n]), betti, snf[n + 1].torsion())
    return HomologyResult(degrees)
