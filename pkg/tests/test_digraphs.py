from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from hemicover.digraphs import (
    Digraph,
    WeightedDAG,
    dag_complex,
    decode_vector,
    disds_complex,
    disds_facets,
    encode_dag,
    is_acyclic,
    is_strongly_connected,
    ordered_pairs,
    root_system,
    simple_cycles,
)


def acyclic_oracle(n, edges):
    """Acyclic iff some vertex order makes every edge point forward."""
    return any(all(pos[i] < pos[j] for i, j in edges) for pos in ({v: k for k, v in enumerate(p)} for p in permutations(range(1, n + 1))))


def strong_oracle(n, edges):
    reach = {(i, j) for i, j in edges} | {(i, i) for i in range(1, n + 1)}
    for k in range(1, n + 1):
        reach |= {(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if (i, k) in reach and (k, j) in reach}
    return len(reach) == n * n


def brute_faces(n, predicate):
    pairs = ordered_pairs(n)
    out = 0
    for code in range(1, 1 << len(pairs)):
        edges = [pairs[b] for b in range(len(pairs)) if code >> b & 1]
        out += predicate(n, edges)
    return out


@pytest.mark.parametrize("n,count", [(3, 24), (4, 542)])
def test_dag_face_counts(n, count):
    # including the empty digraph the counts are 25 and 543
    assert brute_faces(n, acyclic_oracle) == count
    assert len(dag_complex(n)) == count


def test_disds_face_count():
    assert brute_faces(4, lambda n, e: not strong_oracle(n, e)) == 2489
    assert len(disds_complex(4)) == 2489


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.sampled_from(ordered_pairs(n))))))
def test_predicates_match_oracles(ne):
    n, edges = ne
    g = Digraph(n, frozenset(edges))
    assert is_acyclic(g) == acyclic_oracle(n, edges)
    assert is_strongly_connected(g) == strong_oracle(n, edges)


def test_digraph_validation():
    with pytest.raises(ValueError):
        Digraph(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        Digraph(3, frozenset({(1, 4)}))
    g = Digraph(3, frozenset({(1, 2)}))
    assert Digraph.from_json(g.to_json()) == g


def test_disds_facets_formula():
    assert len(disds_facets(3)) == 6
    assert len(disds_facets(4)) == 14
    for f in disds_facets(4):
        assert not is_strongly_connected(Digraph(4, f))


def test_root_system_labels():
    c = root_system(3)
    assert c.labels == tuple(ordered_pairs(3))
    assert c.points[c.labels.index((1, 2))] == (-1, 1, 0)


def test_simple_cycles():
    assert len(simple_cycles(3)) == 5
    assert len(simple_cycles(4)) == 20


def test_weighted_dag():
    w = WeightedDAG(Digraph(3, frozenset({(1, 2), (2, 3)})), {(1, 2): "1/2", (2, 3): 0})
    assert w.digraph.edges == {(1, 2)}
    assert WeightedDAG.from_json(w.to_json()) == w
    with pytest.raises(ValueError):
        WeightedDAG(Digraph(2, frozenset({(1, 2), (2, 1)})), {(1, 2): 1, (2, 1): 1})
    with pytest.raises(ValueError):
        WeightedDAG(Digraph(2, frozenset({(1, 2)})), {(1, 2): -1})


def test_encode_examples():
    w = WeightedDAG(Digraph(3, frozenset({(1, 2)})), {(1, 2): 1})
    assert encode_dag(w) == (-1, 1, 0)
    with pytest.raises(ValueError):
        encode_dag(WeightedDAG(Digraph(3), {}))
    with pytest.raises(ValueError):
        decode_vector([1, 1, 1])
    with pytest.raises(ValueError):
        decode_vector([0, 0, 0])


zero_sum = st.integers(3, 6).flatmap(
    lambda n: st.lists(st.fractions(max_denominator=20, min_value=-50, max_value=50), min_size=n - 1, max_size=n - 1)
).map(lambda xs: xs + [-sum(xs)]).filter(any)


@given(zero_sum)
def test_encode_decode_identity(x):
    n = len(x)
    w = decode_vector(x)
    assert is_acyclic(w.digraph)
    assert encode_dag(w) == tuple(n * Fraction(v) for v in x)


@given(zero_sum)
def test_decode_with_monotone_reweighting(x):
    w = decode_vector(x, rho=lambda t: t * t)
    assert w.digraph == decode_vector(x).digraph
    assert all(v > 0 for v in w.weights.values())
