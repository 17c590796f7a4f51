import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hemicover.complexes import EnumerationLimitError, reduced_homology
from hemicover.digraphs import root_system
from hemicover.spheres import Configuration, essentialize
from hemicover.tda import hemisphere_cech_endpoints, hypercube, persistence, vr_filtration


def test_square():
    d = persistence(vr_filtration(hypercube(2), 3))
    assert d.max_degree == 3
    assert d.multiset() == {(0, 0, 4): 3, (0, 0, None): 1, (1, 4, 8): 1}


def test_cube_json():
    d = persistence(vr_filtration(hypercube(3), 4))
    rows = [b.to_json() for b in d.bars if b.degree == 3]
    assert rows == [{"degree": 3, "birth": "8", "death": "12"}]
    assert len(d.in_degree(0)) == 8
    assert d.max_degree == 3


def test_filtration_values_are_squared_diameters():
    f = vr_filtration([(0, 0), (3, 4), (Fraction(1, 2), 0)], 2)
    assert f.value((0, 1)) == 25
    assert f.value((0, 2)) == Fraction(1, 4)
    assert f.value((0, 1, 2)) == 25
    assert f.is_complete()
    values = [v for _, v in f.simplices]
    assert values == sorted(values)


def test_truncated_filtration_hides_top_degree():
    d = persistence(vr_filtration(hypercube(3), 3))
    assert d.max_degree == 2
    assert not d.in_degree(3)


@given(st.integers(0, 10_000))
def test_bars_count_snapshot_homology(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    pts = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
    f = vr_filtration(pts, n - 1)
    d = persistence(f)
    for t in sorted({v for _, v in f.simplices}):
        h = reduced_homology(f.snapshot(t))
        for k in range(n - 1):
            alive = sum(1 for b in d.in_degree(k) if b.birth <= t and (b.death is None or t < b.death))
            assert alive == h.reduced_betti(k) + (k == 0)


def test_point_guard():
    with pytest.raises(EnumerationLimitError):
        vr_filtration([(k, 0) for k in range(17)], 1)


def test_endpoints_a2():
    _, _, r = hemisphere_cech_endpoints(essentialize(root_system(3)))
    assert r.ok
    assert r.stel_betti == {1: 1} and r.bstel_betti == {2: 2} and r.mobius == 2


def test_endpoints_need_antipodal():
    with pytest.raises(ValueError):
        hemisphere_cech_endpoints(Configuration(((1, 0), (0, 1), (-1, -1))))
