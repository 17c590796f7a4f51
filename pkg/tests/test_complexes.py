import random
from itertools import combinations

import pytest
from hypothesis import assume, given, strategies as st

from hemicover.complexes import (
    EnumerationLimitError,
    FinitePoset,
    SimplicialComplex,
    alexander_dual,
    chain_count,
    classify_pseudomanifold,
    face_poset,
    from_facets,
    order_complex,
    ordered_sum,
    poset_isomorphism,
    reduced_homology,
)

# seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7
TORUS = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)] + [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
RP2 = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
    (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
]


def simplex_boundary(n):
    return from_facets(range(n), combinations(range(n), n - 1))


def test_sphere_boundaries():
    for n in range(2, 7):
        h = reduced_homology(simplex_boundary(n))
        assert h.concentrated() == {n - 2: 1}


def test_torus():
    h = reduced_homology(from_facets(range(7), TORUS))
    assert h.concentrated() == {1: 2, 2: 1}
    assert h.euler == 0


def test_projective_plane_has_torsion():
    with pytest.warns(RuntimeWarning):
        h = reduced_homology(from_facets(range(1, 7), RP2))
    assert h.concentrated() == {}
    assert h.torsion[1] == (2,)
    assert not h.torsion_free
    assert not h.is_acyclic()


def test_degenerate_complexes():
    empty = SimplicialComplex.from_masks((), [])
    h = reduced_homology(empty)
    assert h.empty and h.concentrated() == {-1: 1}
    void = SimplicialComplex.void_complex()
    assert reduced_homology(void).concentrated() == {}
    assert () not in void
    assert () in empty
    point = from_facets([0], [[0]])
    assert reduced_homology(point).is_acyclic()


def test_construction_errors():
    with pytest.raises(ValueError):
        SimplicialComplex.from_masks((0, 1), [0b11])
    with pytest.raises(ValueError):
        from_facets((0, 1), [[0, 0]])
    with pytest.raises(ValueError):
        SimplicialComplex((0, 0), frozenset())


def test_json_round_trip():
    k = from_facets([(1, 2), (2, 1), "x"], [[(1, 2), "x"], [(2, 1)]])
    j = k.to_json()
    assert sorted(j["facets"], key=len) == [[[2, 1]], [[1, 2], "x"]]
    assert SimplicialComplex.from_json(j) == k


@st.composite
def complexes(draw, max_vertices=7):
    m = draw(st.integers(3, max_vertices))
    facets = draw(
        st.lists(st.sets(st.integers(0, m - 1), min_size=1, max_size=m), min_size=1, max_size=6)
    )
    return m, from_facets(range(m), facets)


@given(complexes())
def test_euler_characteristic(mk):
    _, k = mk
    h = reduced_homology(k)
    alternating = sum((-1) ** i * f for i, f in enumerate(k.f_vector()))
    assert h.euler == alternating
    assert alternating - 1 == sum((-1) ** q * b for q, b in enumerate(h.betti))


@given(complexes())
def test_alexander_duality(mk):
    m, k = mk
    full = (1 << m) - 1
    assume(full not in k.faces)
    assume(not all((full ^ (1 << b)) in k.faces for b in range(m)))
    dual = alexander_dual(k, range(m))
    hk, hd = reduced_homology(k), reduced_homology(dual)
    for j in range(-1, m):
        assert hd.reduced_betti(j) == hk.reduced_betti(m - 3 - j)
    assert alexander_dual(dual, range(m)).faces == k.faces


def test_alexander_dual_excludes_simplex_and_boundary():
    with pytest.raises(ValueError):
        alexander_dual(from_facets(range(3), [range(3)]))
    with pytest.raises(ValueError):
        alexander_dual(simplex_boundary(4))


@given(complexes(6))
def test_barycentric_subdivision_keeps_homology(mk):
    _, k = mk
    sd = order_complex(face_poset(k))
    assert reduced_homology(sd).concentrated() == reduced_homology(k).concentrated()


def antichain(labels):
    return FinitePoset(labels, [])


def test_ordered_sum_is_a_join():
    s0 = antichain(["a", "b"])
    join = ordered_sum(s0, s0)
    assert reduced_homology(order_complex(join)).concentrated() == {1: 1}
    three = ordered_sum(join, antichain(["c", "d"]))
    assert reduced_homology(order_complex(three)).concentrated() == {2: 1}


def test_poset_basics():
    p = FinitePoset(range(1, 7), lambda a, b: b % a == 0)
    assert p.bottom() == 1
    assert p.top() is None
    assert sorted(p.maximal()) == [4, 5, 6]
    assert (2, 4) in p.cover_pairs() and (1, 4) not in p.cover_pairs()
    d = p.dual()
    assert d.dual()._up == p._up
    assert poset_isomorphism(p, p.dual()) is None
    with pytest.raises(ValueError):
        FinitePoset([1, 2], [(1, 2), (2, 1)])


@given(st.integers(0, 10_000))
def test_isomorphism_finds_relabelling(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    pairs = {(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4}
    # transitive closure so the relation is an order
    changed = True
    while changed:
        extra = {(a, d) for a, b in pairs for c, d in pairs if b == c} - pairs
        changed = bool(extra)
        pairs |= extra
    p = FinitePoset(range(n), pairs)
    perm = list(range(n))
    rng.shuffle(perm)
    q = FinitePoset([perm[i] for i in range(n)], [(perm[a], perm[b]) for a, b in pairs])
    iso = poset_isomorphism(p, q)
    assert iso is not None
    assert all(p.leq(a, b) == q.leq(iso[a], iso[b]) for a in range(n) for b in range(n))


def test_chain_count_guard(monkeypatch):
    chain = FinitePoset(range(12), lambda a, b: a <= b)
    assert chain_count(chain) == 2**12 - 1
    monkeypatch.setenv("HEMI_MAX_FACES", "100")
    with pytest.raises(EnumerationLimitError):
        order_complex(chain)


def test_pseudomanifold_reports():
    r = classify_pseudomanifold(simplex_boundary(4))
    assert r.pure and r.pseudomanifold and not r.has_boundary and r.closed_pseudomanifold
    disk = from_facets(range(4), [(0, 1, 2), (0, 2, 3)])
    r = classify_pseudomanifold(disk)
    assert r.pseudomanifold and r.has_boundary
    assert not classify_pseudomanifold(from_facets(range(4), [(0, 1, 2), (2, 3)])).pure
    fan = from_facets(range(5), [(0, 1, 2), (0, 1, 3), (0, 1, 4)])
    assert not classify_pseudomanifold(fan).pseudomanifold
