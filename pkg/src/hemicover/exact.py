"""Exact arithmetic substrate.

Scalars are :class:`fractions.Fraction`; vectors are tuples of fractions and
matrices are sequences of such rows.  Nothing in here ever rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Rational = Fraction
QVector = tuple  # tuple[Fraction, ...]

__all__ = [
    "Rational",
    "QVector",
    "SmithForm",
    "parse_rational",
    "format_rational",
    "qvector",
    "rref",
    "rational_rank",
    "nullspace",
    "smith_normal_form",
    "sparse_invariant_factors",
    "lp_feasible",
    "zero_in_convex_hull",
    "cone_contains",
    "inequalities_feasible",
]


def parse_rational(value) -> Fraction:
    """Read ``"p/q"``, ``"p"``, an int or a Fraction.  Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qvector(values: Iterable) -> tuple:
    return tuple(parse_rational(v) for v in values)


# ---------------------------------------------------------------------------
# Gaussian elimination over Q


def rref(rows: Iterable[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form; returns the nonzero rows and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rational_rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[0])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d_1 | d_2 | ... | d_r of an integer matrix."""

    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def _dense_invariant_factors(matrix: list[list[int]]) -> list[int]:
    a = [list(r) for r in matrix]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, nr):
            row = a[i]
            for j in range(t, nc):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, nc):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived: move it in
                best = None
                for i in range(t, nr):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t, nc):
                    v = a[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), t, j)
                _, i, j = best
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for j in range(t, nc):
                rt[j] += rb[j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors of an integer matrix by pivot-and-reduce."""
    rows = [[int(x) for x in r] for r in matrix]
    return SmithForm(tuple(sorted(_dense_invariant_factors(rows))))


def sparse_invariant_factors(columns: Sequence[Mapping[int, int]]) -> SmithForm:
    """Smith form of a sparse integer matrix given column-wise.

    Unit entries are eliminated first (each contributes an invariant factor
    of 1); whatever survives is handed to the dense routine.  Boundary
    matrices of the complexes handled here almost always reduce to nothing.
    """
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(columns):
        c = {i: int(v) for i, v in col.items() if v}
        if c:
            cols[j] = c
            for i in c:
                rows.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda k: len(cols[k])):
            col = cols.get(j)
            if col is None:
                continue
            best = None
            for i, v in col.items():
                if v == 1 or v == -1:
                    n = len(rows[i])
                    if best is None or n < best[0]:
                        best = (n, i)
                        if n == 1:
                            break
            if best is None:
                continue
            piv_row = best[1]
            p = col[piv_row]
            for k in list(rows[piv_row]):
                if k == j:
                    continue
                other = cols[k]
                f = other[piv_row] * p
                for i, v in col.items():
                    nv = other.get(i, 0) - f * v
                    if nv:
                        if i not in other:
                            rows[i].add(k)
                        other[i] = nv
                    elif i in other:
                        del other[i]
                        rows[i].discard(k)
                if not other:
                    del cols[k]
            for i in col:
                rows[i].discard(j)
            del cols[j]
            units += 1
            progress = True
    rest: list[int] = []
    if cols:
        row_ids = sorted({i for c in cols.values() for i in c})
        pos = {i: n for n, i in enumerate(row_ids)}
        dense = [[0] * len(cols) for _ in row_ids]
        for n, c in enumerate(cols.values()):
            for i, v in c.items():
                dense[pos[i]][n] = v
        rest = _dense_invariant_factors(dense)
    return SmithForm(tuple(sorted([1] * units + rest)))


# ---------------------------------------------------------------------------
# Feasibility by phase-one simplex with Bland's rule


def lp_feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    """Is {x >= 0 : A x = b} nonempty?  Exact phase-one simplex, Bland's rule."""
    m = len(A)
    if m == 0:
        return True
    n = len(A[0])
    tab: list[list[Fraction]] = []
    for row, bi in zip(A, b):
        bi = Fraction(bi)
        r = [Fraction(x) for x in row]
        if bi < 0:
            r = [-x for x in r]
            bi = -bi
        r.append(bi)
        tab.append(r)
    if n == 0:
        return all(r[0] == 0 for r in tab)
    basis = [n + i for i in range(m)]
    z = [-sum(r[j] for r in tab) for j in range(n + 1)]
    while True:
        enter = next((j for j in range(n) if z[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(tab):
            a = r[enter]
            if a > 0:
                key = (r[n] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        # phase one is bounded below, so a leaving row always exists
        i = best[1]
        prow = tab[i]
        pv = prow[enter]
        if pv != 1:
            prow = [x / pv for x in prow]
            tab[i] = prow
        for k, r in enumerate(tab):
            if k != i:
                f = r[enter]
                if f:
                    tab[k] = [x - f * y for x, y in zip(r, prow)]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, prow)]
        basis[i] = enter
    return z[n] == 0


def zero_in_convex_hull(vectors: Sequence[Sequence]) -> bool:
    """Is the origin a convex combination of ``vectors``?"""
    if not vectors:
        return False
    d = len(vectors[0])
    A = [[v[k] for v in vectors] for k in range(d)]
    A.append([1] * len(vectors))
    return lp_feasible(A, [0] * d + [1])


def cone_contains(generators: Sequence[Sequence], target: Sequence) -> bool:
    """Is ``target`` a nonnegative combination of ``generators``?"""
    if not generators:
        return all(x == 0 for x in target)
    d = len(target)
    A = [[g[k] for g in generators] for k in range(d)]
    return lp_feasible(A, list(target))


def inequalities_feasible(normals: Sequence[Sequence], bounds: Sequence, dim: int) -> bool:
    """Does some u in Q^dim satisfy <u, a_i> >= c_i for every row?

    The free vector u is split as u+ - u- and each inequality gets a slack.
    """
    k = len(normals)
    if k == 0:
        return True
    A = []
    for i, (a, c) in enumerate(zip(normals, bounds)):
        slack = [0] * k
        slack[i] = -1
        A.append(list(a) + [-x for x in a] + slack)
    return lp_feasible(A, list(bounds))


def int_content(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Primitive integer vector on the same ray as ``v``."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)
