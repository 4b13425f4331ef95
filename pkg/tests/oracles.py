"""Independent oracles the tests check the library against.

Everything here is deliberately written from scratch against the defining
formulas - plain loops over tuples, sympy for Smith normal form - and never
calls the code paths it is used to verify.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf


# ---------------------------------------------------------------------------
# finite self-distributive axioms, brute force
# ---------------------------------------------------------------------------

def brute_classify(op: list[list[int]]) -> tuple[str, bool]:
    """(kind, spindle flag) for an m x m operation table, by direct axiom
    evaluation."""
    m = len(op)
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if op[op[a][b]][c] != op[op[a][c]][op[b][c]]:
                    return ("not_shelf", False)
    idem = all(op[a][a] == a for a in range(m))
    # rack: every right translation is a bijection
    rack = all(len({op[a][b] for a in range(m)}) == m for b in range(m))
    if not rack:
        return ("shelf", idem)
    return ("quandle" if idem else "rack", idem)


def braiding_is_set_yb(op: list[list[int]]) -> bool:
    """Does (a,b) -> (b, a <| b) satisfy the set Yang-Baxter equation,
    checked on all triples as maps on S^3?"""
    m = len(op)

    def sigma(pair):
        a, b = pair
        return (b, op[a][b])

    def s1(t):
        x, y = sigma((t[0], t[1]))
        return (x, y, t[2])

    def s2(t):
        x, y = sigma((t[1], t[2]))
        return (t[0], x, y)

    for a in range(m):
        for b in range(m):
            for c in range(m):
                t = (a, b, c)
                if s1(s2(s1(t))) != s2(s1(s2(t))):
                    return False
    return True


def braiding_is_bijective(op: list[list[int]]) -> bool:
    m = len(op)
    images = {(b, op[a][b]) for a in range(m) for b in range(m)}
    return len(images) == m * m


# ---------------------------------------------------------------------------
# diagram tracing for positive virtual braid words
# ---------------------------------------------------------------------------

def diagram_trace(word) -> tuple[list[int], int, dict[int, list[int]]]:
    """Trace labeled strands through a positive word, rightmost letter first.

    A virtual letter at position i swaps the labels in slots i, i+1.  A
    braid letter swaps them too, and records, in the multiset of the label
    arriving at slot i+1 (the strand whose element got modified), the label
    departing slot i+1 (the strand that passed under it).

    Returns (final label at each position, sigma count, multisets by label).
    """
    n = word.strands
    labels = list(range(1, n + 1))
    unders: dict[int, list[int]] = {lab: [] for lab in labels}
    count = 0
    for g in reversed(word.letters):
        i = g.index - 1
        if g.kind == "s":
            count += 1
            over, under = labels[i], labels[i + 1]
            unders[over].append(under)
        elif g.kind != "z":
            raise ValueError("oracle handles positive words only")
        labels[i], labels[i + 1] = labels[i + 1], labels[i]
    return labels, count, {lab: sorted(v) for lab, v in unders.items()}


# ---------------------------------------------------------------------------
# rack homology faces, assembled directly on tuples
# ---------------------------------------------------------------------------

def rack_face_matrices(op: list[list[int]], n: int):
    """The two classical face families on Z[S^n]: the <|-twisted deletion
    F_i(a_1..a_n) = (a_1<|a_i, .., a_{i-1}<|a_i, a_{i+1}, .., a_n) and the
    plain deletion G_i.  Returned as dense integer matrices (rows indexed by
    (n-1)-tuples, columns by n-tuples, both in lexicographic order)."""
    m = len(op)

    def tuples(k):
        out = [()]
        for _ in range(k):
            out = [t + (x,) for t in out for x in range(m)]
        return out

    cols = tuples(n)
    rows = tuples(n - 1)
    row_index = {t: r for r, t in enumerate(rows)}
    f_mats = []
    g_mats = []
    for i in range(1, n + 1):
        f = [[0] * len(cols) for _ in rows]
        g = [[0] * len(cols) for _ in rows]
        for c, t in enumerate(cols):
            twisted = tuple(op[t[k]][t[i - 1]] for k in range(i - 1)) + t[i:]
            plain = t[:i - 1] + t[i:]
            f[row_index[twisted]][c] += 1
            g[row_index[plain]][c] += 1
        f_mats.append(f)
        g_mats.append(g)
    return f_mats, g_mats


def rack_boundaries(op: list[list[int]], max_degree: int):
    """Total differentials sum_i (-1)^{i-1} (F_i - G_i) up to the given
    degree, as dense integer matrices."""
    out = {}
    for n in range(1, max_degree + 1):
        f_mats, g_mats = rack_face_matrices(op, n)
        rows = len(f_mats[0])
        cols = len(f_mats[0][0])
        total = [[0] * cols for _ in range(rows)]
        for i, (f, g) in enumerate(zip(f_mats, g_mats), start=1):
            sign = 1 if i % 2 == 1 else -1
            for r in range(rows):
                for c in range(cols):
                    total[r][c] += sign * (f[r][c] - g[r][c])
        out[n] = total
    return out


def snf_diagonal(rows: list[list[int]]) -> list[int]:
    """Invariant factors via sympy (independent of the library's SNF)."""
    if not rows or not rows[0]:
        return []
    mat = sympy.Matrix(rows)
    normal = sympy_snf(mat, domain=sympy.ZZ)
    k = min(normal.rows, normal.cols)
    return [abs(int(normal[i, i])) for i in range(k)]


def homology_from_boundaries(dims: dict[int, int],
                             boundaries: dict[int, list[list[int]]],
                             degrees: range) -> dict[int, tuple[int, list[int]]]:
    """(betti, torsion) per degree from rank-nullity plus invariant factors."""

    def rank(mat):
        if not mat or not mat[0]:
            return 0
        return sympy.Matrix(mat).rank()

    out = {}
    for n in degrees:
        rank_n = rank(boundaries[n]) if n in boundaries else 0
        rank_up = rank(boundaries[n + 1])
        betti = dims[n] - rank_n - rank_up
        torsion = [d for d in snf_diagonal(boundaries[n + 1]) if d > 1]
        out[n] = (betti, torsion)
    return out


# ---------------------------------------------------------------------------
# bar-type faces for an algebra on a basis
# ---------------------------------------------------------------------------

def bar_face_matrices(mu, eps: list[int], n: int):
    """The merge faces of an algebra with character eps on C_n = V^{tensor n}:
    face 1 multiplies by eps(a_1) and drops it; face i (i >= 2) merges slots
    i-1, i.  Dense integer matrices, basis lexicographic."""
    d = len(eps)

    def tuples(k):
        out = [()]
        for _ in range(k):
            out = [t + (x,) for t in out for x in range(d)]
        return out

    cols = tuples(n)
    rows = tuples(n - 1)
    row_index = {t: r for r, t in enumerate(rows)}
    mats = []
    for i in range(1, n + 1):
        mat = [[0] * len(cols) for _ in rows]
        for c, t in enumerate(cols):
            if i == 1:
                mat[row_index[t[1:]]][c] += eps[t[0]]
            else:
                for k in range(d):
                    coeff = mu[t[i - 2]][t[i - 1]][k]
                    if coeff:
                        target = t[:i - 2] + (k,) + t[i:]
                        mat[row_index[target]][c] += coeff
        mats.append(mat)
    return mats


# ---------------------------------------------------------------------------
# misc
# ---------------------------------------------------------------------------

def dense_int(mat) -> list[list[int]]:
    """RingMatrix -> dense integer rows (oracle-side view)."""
    return mat.to_int_rows()


def fraction_rank(rows: list[list[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    a = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(a[0])
    for col in range(cols):
        pivot = next((r for r in range(rank, len(a)) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = a[rank][col]
        a[rank] = [x / inv for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank
