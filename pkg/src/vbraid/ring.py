"""Exact coefficient arithmetic and exact linear algebra.

Coefficients live in the ring of multivariate integer Laurent polynomials
Z[t^{±1}, s^{±1}, u^{±1}, v^{±1}].  The variable set is fixed: every ring used
downstream (Z, Z[t^{±1}], Z[t^{±1},s^{±1}], Z[u^{±1},v^{±1}]) embeds into this one,
so no generic-ring abstraction is needed.  A polynomial is stored as a map
from exponent vectors in Z^4 to nonzero integer coefficients; that map *is*
the canonical form, so equality is plain map equality.

Matrices are sparse maps (row, col) -> polynomial.  Everything is immutable
after construction and all operations are pure, so values can be shared
freely across threads.

Smith normal form is implemented for pure integer matrices only (the
multivariate Laurent ring is not a PID); it is the workhorse behind integral
homology.  Pivoting is deterministic: smallest nonzero absolute value, ties
broken by lowest (row, col).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionError, InversionError, ParseError

VARS = ("t", "s", "u", "v")
_ZERO_EXP = (0, 0, 0, 0)

ExpVec = tuple[int, int, int, int]


class LaurentPoly:
    """An integer Laurent polynomial in the fixed variables t, s, u, v."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ExpVec, int] | None = None):
        clean: dict[ExpVec, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    e = tuple(exp)
                    if len(e) != 4:
                        raise ParseError(f"exponent vector must have length 4, got {e!r}")
                    clean[e] = clean.get(e, 0) + coeff
                    if not clean[e]:
                        del clean[e]
        self._terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({_ZERO_EXP: c}) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        if name not in VARS:
            raise ParseError(f"unknown variable {name!r}; the ring has variables {VARS}")
        exp = [0, 0, 0, 0]
        exp[VARS.index(name)] = power
        return cls({tuple(exp): 1})

    # -- inspection --------------------------------------------------------

    def terms(self) -> dict[ExpVec, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {_ZERO_EXP: 1}

    def is_integer(self) -> bool:
        """True when every monomial has exponent vector zero."""
        return all(e == _ZERO_EXP for e in self._terms)

    def as_int(self) -> int:
        if not self._terms:
            return 0
        if not self.is_integer():
            raise ParseError(f"{self} is not an integer constant")
        return self._terms[_ZERO_EXP]

    def is_unit(self) -> bool:
        """Units of Z[t^{±1},...] are the signed monomials ± t^a s^b u^c v^d."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            new = out.get(exp, 0) + coeff
            if new:
                out[exp] = new
            else:
                out.pop(exp, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        return res

    def __radd__(self, other: int) -> "LaurentPoly":
        return self.__add__(other)

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = {e: -c for e, c in self._terms.items()}
        return res

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self.__add__(-_coerce(other))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return _coerce(other).__sub__(self)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        out: dict[ExpVec, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                new = out.get(exp, 0) + c1 * c2
                if new:
                    out[exp] = new
                else:
                    del out[exp]
        res = LaurentPoly.__new__(LaurentPoly)
        res._terms = out
        return res

    def __rmul__(self, other: int) -> "LaurentPoly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise InversionError(f"{self} is not a unit of the Laurent ring")
        exp, coeff = next(iter(self._terms.items()))
        return LaurentPoly({(-exp[0], -exp[1], -exp[2], -exp[3]): coeff})

    def substitute(self, **assignments: "LaurentPoly | int") -> "LaurentPoly":
        """Substitute values for variables; negative powers require units."""
        values = []
        for i, name in enumerate(VARS):
            if name in assignments:
                values.append(_coerce(assignments.pop(name)))
            else:
                values.append(LaurentPoly.var(name))
        if assignments:
            raise ParseError(f"unknown variables {sorted(assignments)}")
        out = LaurentPoly()
        for exp, coeff in self._terms.items():
            term = LaurentPoly.const(coeff)
            for i in range(4):
                if exp[i]:
                    term = term * (values[i] ** exp[i])
            out = out + term
        return out

    # -- comparison and hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- display and serialization ----------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms):
            coeff = self._terms[exp]
            mono = "".join(
                f"{name}^{e}" if e != 1 else name
                for name, e in zip(VARS, exp)
                if e
            )
            if not mono:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> list:
        return [[self._terms[e], list(e)] for e in sorted(self._terms)]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls({tuple(exp): int(coeff) for coeff, exp in data})


def _coerce(value: "LaurentPoly | int") -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.const(value)
    raise ParseError(f"cannot treat {value!r} as a ring element")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.var("t")
S = LaurentPoly.var("s")
U = LaurentPoly.var("u")
V = LaurentPoly.var("v")


class RingMatrix:
    """A sparse exact matrix over the Laurent ring (or over Z as a special case)."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], LaurentPoly | int] | None = None):
        if rows < 0 or cols < 0:
            raise DimensionError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        clean: dict[tuple[int, int], LaurentPoly] = {}
        if entries:
            for (r, c), val in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise DimensionError(f"entry ({r},{c}) outside {rows}x{cols}")
                poly = _coerce(val)
                if not poly.is_zero():
                    clean[(r, c)] = poly
        self._entries = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "RingMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RingMatrix":
        return cls(rows, cols)

    @classmethod
    def from_rows(cls, data: Iterable[Iterable[LaurentPoly | int]]) -> "RingMatrix":
        table = [list(row) for row in data]
        rows = len(table)
        cols = len(table[0]) if rows else 0
        entries = {}
        for i, row in enumerate(table):
            if len(row) != cols:
                raise DimensionError("ragged row data")
            for j, val in enumerate(row):
                entries[(i, j)] = val
        return cls(rows, cols, entries)

    # -- inspection --------------------------------------------------------

    def get(self, r: int, c: int) -> LaurentPoly:
        return self._entries.get((r, c), ZERO)

    def entries(self) -> dict[tuple[int, int], LaurentPoly]:
        return dict(self._entries)

    def is_integer(self) -> bool:
        return all(p.is_integer() for p in self._entries.values())

    def to_int_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), p in self._entries.items():
            out[r][c] = p.as_int()
        return out

    def to_rows(self) -> list[list[LaurentPoly]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), p in self._entries.items():
            out[r][c] = p
        return out

    def is_zero(self) -> bool:
        return not self._entries

    def nnz(self) -> int:
        return len(self._entries)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._same_shape(other)
        out = dict(self._entries)
        for key, val in other._entries.items():
            new = out.get(key, ZERO) + val
            if new.is_zero():
                out.pop(key, None)
            else:
                out[key] = new
        return self._wrap(self.rows, self.cols, out)

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        return self + (-other)

    def __neg__(self) -> "RingMatrix":
        return self._wrap(self.rows, self.cols,
                          {k: -v for k, v in self._entries.items()})

    def scale(self, factor: LaurentPoly | int) -> "RingMatrix":
        factor = _coerce(factor)
        if factor.is_zero():
            return RingMatrix.zeros(self.rows, self.cols)
        return self._wrap(self.rows, self.cols,
                          {k: v * factor for k, v in self._entries.items()})

    def __mul__(self, other: "RingMatrix | LaurentPoly | int") -> "RingMatrix":
        if not isinstance(other, RingMatrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        by_row: dict[int, list[tuple[int, LaurentPoly]]] = {}
        for (r, c), val in other._entries.items():
            by_row.setdefault(r, []).append((c, val))
        out: dict[tuple[int, int], LaurentPoly] = {}
        for (r, k), left in self._entries.items():
            for c, right in by_row.get(k, ()):
                key = (r, c)
                new = out.get(key, ZERO) + left * right
                if new.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = new
        return self._wrap(self.rows, other.cols, out)

    def __rmul__(self, other: LaurentPoly | int) -> "RingMatrix":
        return self.scale(other)

    def kron(self, other: "RingMatrix") -> "RingMatrix":
        """Kronecker product; self's index is the outer (slow) index."""
        out = {}
        for (r1, c1), v1 in self._entries.items():
            for (r2, c2), v2 in other._entries.items():
                out[(r1 * other.rows + r2, c1 * other.cols + c2)] = v1 * v2
        return self._wrap(self.rows * other.rows, self.cols * other.cols, out)

    def direct_sum(self, other: "RingMatrix") -> "RingMatrix":
        out = dict(self._entries)
        for (r, c), v in other._entries.items():
            out[(r + self.rows, c + self.cols)] = v
        return self._wrap(self.rows + other.rows, self.cols + other.cols, out)

    def transpose(self) -> "RingMatrix":
        return self._wrap(self.cols, self.rows,
                          {(c, r): v for (r, c), v in self._entries.items()})

    def substitute(self, **assignments) -> "RingMatrix":
        out = {}
        for key, val in self._entries.items():
            out[key] = val.substitute(**assignments)
        return RingMatrix(self.rows, self.cols, out)

    # -- inversion ---------------------------------------------------------

    def inverse(self) -> "RingMatrix":
        """Exact inverse over the coefficient ring.

        Integer matrices go through Fraction elimination and must come back
        integral (determinant ±1).  Laurent matrices use Gauss-Jordan with
        unit pivots, which covers every monomial-entry matrix that arises
        from deformations by scalar automorphisms.
        """
        if self.rows != self.cols:
            raise InversionError("only square matrices can be inverted")
        if self.is_integer():
            return self._inverse_integer()
        return self._inverse_unit_pivot()

    def _inverse_integer(self) -> "RingMatrix":
        n = self.rows
        a = [[Fraction(x) for x in row] for row in self.to_int_rows()]
        inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col]), None)
            if pivot is None:
                raise InversionError("matrix is singular over the rationals")
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            inv[col] = [x / p for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        flat = [x for row in inv for x in row]
        if any(x.denominator != 1 for x in flat):
            raise InversionError("matrix is invertible over Q but not over Z")
        return RingMatrix.from_rows([[int(x) for x in row] for row in inv])

    def _inverse_unit_pivot(self) -> "RingMatrix":
        n = self.rows
        a = self.to_rows()
        inv = RingMatrix.identity(n).to_rows()
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col].is_unit()), None)
            if pivot is None:
                raise InversionError(
                    "no unit pivot available; matrix not invertible by this routine")
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            p_inv = a[col][col].inverse()
            a[col] = [x * p_inv for x in a[col]]
            inv[col] = [x * p_inv for x in inv[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return RingMatrix.from_rows(inv)

    # -- comparison, display, serialization --------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) \
            and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            body = "; ".join(
                ", ".join(str(self.get(r, c)) for c in range(self.cols))
                for r in range(self.rows))
            return f"RingMatrix({self.rows}x{self.cols}: [{body}])"
        return f"RingMatrix({self.rows}x{self.cols}, {self.nnz()} nonzero)"

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, self._entries[(r, c)].to_json()]
                        for r, c in sorted(self._entries)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RingMatrix":
        entries = {(int(r), int(c)): LaurentPoly.from_json(poly)
                   for r, c, poly in data["entries"]}
        return cls(int(data["rows"]), int(data["cols"]), entries)

    # -- internals ---------------------------------------------------------

    def _same_shape(self, other: "RingMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    @classmethod
    def _wrap(cls, rows: int, cols: int,
              entries: dict[tuple[int, int], LaurentPoly]) -> "RingMatrix":
        out = cls.__new__(cls)
        out.rows = rows
        out.cols = cols
        out._entries = entries
        return out


def flip_matrix(d: int) -> RingMatrix:
    """The flip on V tensor V for dim(V) = d, basis ordered with the left
    factor as the slow index: e_i tensor e_j -> e_j tensor e_i."""
    return RingMatrix(d * d, d * d,
                      {(j * d + i, i * d + j): ONE for i in range(d) for j in range(d)})


def permutation_matrix(images: Iterable[int], dims: int, factor_dim: int) -> RingMatrix:
    """Matrix of a permutation of tensor factors.

    ``images`` is 1-based: the factor at position j lands at position
    images[j-1].  All factors share the same dimension ``factor_dim``; there
    are ``dims`` of them.
    """
    images = list(images)
    if sorted(images) != list(range(1, dims + 1)):
        raise DimensionError(f"{images} is not a permutation of 1..{dims}")
    size = factor_dim ** dims
    entries = {}
    for col in range(size):
        digits = []
        rest = col
        for _ in range(dims):
            digits.append(rest % factor_dim)
            rest //= factor_dim
        digits.reverse()  # digits[j] = basis index of factor j (slow-to-fast)
        out_digits = [0] * dims
        for j in range(dims):
            out_digits[images[j] - 1] = digits[j]
        row = 0
        for dgt in out_digits:
            row = row * factor_dim + dgt
        entries[(row, col)] = ONE
    return RingMatrix(size, size, entries)


@dataclass(frozen=True)
class SnfResult:
    """Invariant factors d_1 | d_2 | ... of an integer matrix."""

    diagonal: tuple[int, ...]
    rank: int

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(mat: RingMatrix) -> SnfResult:
    """Smith normal form of an integer matrix by Euclidean pivoting.

    The pivot is always the smallest nonzero absolute value in the remaining
    submatrix, ties broken by lowest (row, col), which keeps the reduction
    deterministic and the coefficient growth modest at this scale.
    """
    if not mat.is_integer():
        raise ParseError("Smith normal form requires a pure integer matrix")
    m = mat.to_int_rows()
    rows, cols = mat.rows, mat.cols
    k = 0
    limit = min(rows, cols)
    while k < limit:
        pivot = _find_pivot(m, rows, cols, k)
        if pivot is None:
            break
        pr, pc = pivot
        if pr != k:
            m[k], m[pr] = m[pr], m[k]
        if pc != k:
            for row in m:
                row[k], row[pc] = row[pc], row[k]
        while True:
            # Clear column k below the pivot.
            dirty = False
            for i in range(k + 1, rows):
                if m[i][k]:
                    q = m[i][k] // m[k][k]
                    if q:
                        for j in range(k, cols):
                            m[i][j] -= q * m[k][j]
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        dirty = True
            if dirty:
                continue
            # Clear row k to the right of the pivot.
            for j in range(k + 1, cols):
                if m[k][j]:
                    q = m[k][j] // m[k][k]
                    if q:
                        for i in range(k, rows):
                            m[i][j] -= q * m[i][k]
                    if m[k][j]:
                        for row in m:
                            row[k], row[j] = row[j], row[k]
                        dirty = True
            if dirty:
                continue
            # Pivot must divide the rest of the submatrix.
            offender = None
            for i in range(k + 1, rows):
                for j in range(k + 1, cols):
                    if m[i][j] % m[k][k]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(k, cols):
                m[k][j] += m[offender][j]
        if m[k][k] < 0:
            for j in range(k, cols):
                m[k][j] = -m[k][j]
        k += 1
    diagonal = [abs(m[i][i]) for i in range(k)] + [0] * (limit - k)
    return SnfResult(tuple(diagonal), k)


def _find_pivot(m: list[list[int]], rows: int, cols: int, k: int) -> tuple[int, int] | None:
    best = None
    best_val = None
    for i in range(k, rows):
        row = m[i]
        for j in range(k, cols):
            v = row[j]
            if v:
                a = abs(v)
                if best_val is None or a < best_val:
                    best, best_val = (i, j), a
                    if a == 1:
                        return best
    return best
