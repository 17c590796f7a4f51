import pytest

from hemicover.complexes import EnumerationLimitError, alexander_dual, from_facets, order_complex, reduced_homology
from hemicover.digraphs import dag_complex, root_system, simple_cycles
from hemicover.gale import (
    FacetIncidence,
    cycle_lattice,
    cycle_polytope_facets,
    facet_intersections,
    gale_duality_check,
    minimal_nonfaces,
    nerve_complex,
)
from hemicover.spheres import Configuration, essentialize


def test_minimal_nonfaces_are_cycles():
    for n in (3, 4):
        mnf = set(minimal_nonfaces(dag_complex(n)))
        assert mnf == set(simple_cycles(n))


def test_minimal_nonfaces_small():
    k = from_facets(range(4), [(0, 1), (1, 2), (2, 0), (3,)])
    assert set(minimal_nonfaces(k)) == {frozenset({0, 1, 2}), frozenset({0, 3}), frozenset({1, 3}), frozenset({2, 3})}


def test_facet_incidence_validation():
    with pytest.raises(ValueError):
        FacetIncidence((1, 2, 3), (frozenset({1, 2}), frozenset({1})))
    with pytest.raises(ValueError):
        FacetIncidence((1, 2, 3), (frozenset({1, 2}),))
    with pytest.raises(ValueError):
        FacetIncidence((1, 2), (frozenset({1, 5}),))


def test_cycle_polytope_dual():
    for n in (3, 4):
        fi = cycle_polytope_facets(n)
        assert alexander_dual(nerve_complex(fi), fi.vertices).faces == dag_complex(n).faces
    assert reduced_homology(nerve_complex(cycle_polytope_facets(3))).concentrated() == {2: 1}


def test_gale_check_on_root_system():
    r = gale_duality_check(essentialize(root_system(3)))
    assert r.ok
    # complements of the three 2-cycles and the two 3-cycles
    assert r.facet_sizes == {3: 2, 4: 3}


def test_gale_check_needs_double_ampleness():
    with pytest.raises(ValueError):
        gale_duality_check(Configuration(((1, 0), (-1, 0), (0, 1), (0, -1))))


def test_cycle_lattice_three():
    lat = cycle_lattice(3)
    assert len(lat.generators) == 5
    assert len(lat.elements) == 22
    p = lat.proper_part()
    assert len(p) == 20
    assert reduced_homology(order_complex(p)).concentrated() == {2: 1}


def test_cycle_lattice_matches_face_intersections():
    # faces of Q_3 are complements of unions of cycles
    fi = cycle_polytope_facets(3)
    ground = frozenset(fi.vertices)
    lat = cycle_lattice(3)
    unions = {lat.edges_of(m) for m in lat.elements} - {frozenset(), ground}
    assert {ground - f for f in facet_intersections(fi)} == unions


def test_cycle_lattice_four_has_huge_order_complex():
    p = cycle_lattice(4).proper_part()
    assert len(p) == 1686
    with pytest.raises(EnumerationLimitError):
        order_complex(p)
    with pytest.raises(EnumerationLimitError):
        cycle_lattice(5)
