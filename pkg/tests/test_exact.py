from fractions import Fraction
from itertools import combinations, product
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from hemicover.exact import (
    cone_contains,
    format_rational,
    inequalities_feasible,
    int_content,
    lp_feasible,
    nullspace,
    parse_rational,
    rational_rank,
    rref,
    smith_normal_form,
    sparse_invariant_factors,
    zero_in_convex_hull,
)

small = st.integers(-4, 4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def determinantal_factors(m):
    """Invariant factors from gcds of k x k minors."""
    a = sympy.Matrix(m)
    out, prev = [], 1
    for k in range(1, min(a.shape) + 1):
        g = 0
        for rows in combinations(range(a.rows), k):
            for cols in combinations(range(a.cols), k):
                g = gcd(g, int(a.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def test_rational_round_trip():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(" -4 ") == -4
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(5)) == "5"
    with pytest.raises(TypeError):
        parse_rational(0.5)
    with pytest.raises(TypeError):
        parse_rational(True)


@given(st.fractions())
def test_format_parse_inverse(x):
    assert parse_rational(format_rational(x)) == x


def test_smith_examples():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == ()
    s = smith_normal_form([[2, 0], [0, 3]])
    assert s.diagonal == (1, 6)
    assert s.torsion == (6,)


@given(matrices())
def test_smith_matches_minors(m):
    assert list(smith_normal_form(m).diagonal) == determinantal_factors(m)


@given(matrices(5, 5))
def test_sparse_and_dense_agree(m):
    columns = [{i: m[i][j] for i in range(len(m)) if m[i][j]} for j in range(len(m[0]))]
    assert sparse_invariant_factors(columns).diagonal == smith_normal_form(m).diagonal


@given(matrices(4, 5))
def test_rank_and_nullspace(m):
    a = sympy.Matrix(m)
    assert rational_rank(m) == a.rank()
    ns = nullspace(m, len(m[0]))
    assert len(ns) == len(m[0]) - a.rank()
    for v in ns:
        assert all(sum(Fraction(x) * y for x, y in zip(row, v)) == 0 for row in m)
    rows, pivots = rref(m, len(m[0]))
    reduced, sym_pivots = a.rref()
    assert tuple(pivots) == sym_pivots
    for i, row in enumerate(rows):
        assert [Fraction(str(x)) for x in reduced.row(i)] == list(row)


def test_lp_examples():
    assert lp_feasible([[1, 1]], [1])
    assert not lp_feasible([[1, 1]], [-1])
    assert lp_feasible([], [])
    # degenerate: many ties in the ratio test
    assert lp_feasible([[1, 1, 0], [1, 0, 1], [0, 1, 1]], [0, 0, 0])


def _hull_oracle_2d(vectors):
    """0 is outside conv(vectors) iff some u has <u, v> > 0 for all v.  The set
    of such u is an open cone bounded by normals of the vectors, so it is
    nonempty iff it contains a vector, a normal, or a sum of two normals."""
    normals = [(-y, x) for x, y in vectors] + [(y, -x) for x, y in vectors]
    candidates = list(vectors) + normals + [(a + c, b + d) for a, b in normals for c, d in normals]
    return not any(all(u * x + w * y > 0 for x, y in vectors) for u, w in candidates)


@given(st.lists(st.tuples(small, small).filter(any), min_size=1, max_size=5))
def test_zero_in_hull_planar(vectors):
    assert zero_in_convex_hull(vectors) == _hull_oracle_2d(vectors)


def test_cone_membership():
    gens = [(1, 0), (1, 1)]
    assert cone_contains(gens, (2, 1))
    assert not cone_contains(gens, (0, 1))
    assert cone_contains([], (0, 0))
    assert not cone_contains([], (1, 0))


@given(st.lists(st.tuples(small, small), min_size=1, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_inequalities_against_grid(normals, bounds):
    """A grid point satisfying the system is a witness the solver must agree with."""
    bounds = bounds[: len(normals)]
    grid = [Fraction(k, 4) for k in range(-40, 41)]
    hit = any(all(a * u + b * v >= c for (a, b), c in zip(normals, bounds)) for u, v in product(grid, grid))
    if hit:
        assert inequalities_feasible(normals, bounds, 2)


def test_inequalities_infeasible():
    assert not inequalities_feasible([(1, 0), (-1, 0)], [1, 1], 2)
    assert inequalities_feasible([(1, 0), (-1, 0)], [0, 0], 2)


def test_int_content():
    assert int_content((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)
    assert int_content((0, 6, 9)) == (0, 2, 3)
