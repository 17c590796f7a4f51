"""Digraphs on [n], the complexes of acyclic and of non-strongly-connected
digraphs, the type A root system, and a sphere encoding of weighted DAGs."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Mapping

from .complexes import SimplicialComplex, bits, check_guard, enumerate_downward_closed
from .exact import format_rational, parse_rational
from .spheres import Configuration, bstel_complex, essentialize, stel_complex

__all__ = [
    "Digraph",
    "WeightedDAG",
    "ordered_pairs",
    "is_acyclic",
    "is_strongly_connected",
    "dag_complex",
    "disds_complex",
    "disds_facets",
    "root_system",
    "IdentificationReport",
    "verify_identifications",
    "encode_dag",
    "decode_vector",
    "simple_cycles",
]


def ordered_pairs(n: int) -> list[tuple[int, int]]:
    """[n]^(2) in lexicographic order; this order fixes vertex orientation."""
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        edges = frozenset(tuple(e) for e in self.edges)
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop at {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {(i, j)} outside [1, {self.n}]")
        object.__setattr__(self, "edges", edges)

    def successors(self) -> dict[int, list[int]]:
        out = {v: [] for v in range(1, self.n + 1)}
        for i, j in sorted(self.edges):
            out[i].append(j)
        return out

    def reversed(self) -> "Digraph":
        return Digraph(self.n, frozenset((j, i) for i, j in self.edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data) -> "Digraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], frozenset(tuple(e) for e in data["edges"]))


@dataclass(frozen=True)
class WeightedDAG:
    digraph: Digraph
    weights: Mapping = field(default_factory=dict)

    def __post_init__(self):
        w = {tuple(e): parse_rational(x) for e, x in dict(self.weights).items()}
        if set(w) - self.digraph.edges:
            raise ValueError("weight on a missing edge")
        if any(x < 0 for x in w.values()):
            raise ValueError("negative weight")
        # zero weight means the edge is absent
        live = frozenset(e for e in self.digraph.edges if w.get(e, 0) != 0)
        g = Digraph(self.digraph.n, live)
        if not is_acyclic(g):
            raise ValueError("weighted graph has a directed cycle")
        object.__setattr__(self, "digraph", g)
        object.__setattr__(self, "weights", {e: w[e] for e in sorted(live)})

    @property
    def n(self) -> int:
        return self.digraph.n

    def to_json(self) -> dict:
        edges = sorted(self.weights)
        return {
            "n": self.n,
            "edges": [list(e) for e in edges],
            "weights": [format_rational(self.weights[e]) for e in edges],
        }

    @classmethod
    def from_json(cls, data) -> "WeightedDAG":
        if isinstance(data, str):
            data = json.loads(data)
        edges = [tuple(e) for e in data["edges"]]
        return cls(Digraph(data["n"], frozenset(edges)), dict(zip(edges, data["weights"])))


def is_acyclic(g: Digraph) -> bool:
    indeg = {v: 0 for v in range(1, g.n + 1)}
    for _, j in g.edges:
        indeg[j] += 1
    succ = g.successors()
    stack = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == g.n


def _reach(succ: dict[int, list[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        for w in succ[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_strongly_connected(g: Digraph) -> bool:
    if g.n <= 1:
        return True
    return len(_reach(g.successors(), 1)) == g.n and len(_reach(g.reversed().successors(), 1)) == g.n


def _edge_complex(n: int, predicate: Callable[[Digraph], bool]) -> SimplicialComplex:
    pairs = ordered_pairs(n)

    def ok(mask: int) -> bool:
        return predicate(Digraph(n, frozenset(pairs[b] for b in bits(mask))))

    faces = enumerate_downward_closed(len(pairs), ok)
    return SimplicialComplex.from_masks(pairs, faces, check=False)


def dag_complex(n: int) -> SimplicialComplex:
    """Acyclic edge sets on [n], a complex on the vertex set [n]^(2)."""
    check_guard("dag_complex n", n, 5)
    return _edge_complex(n, is_acyclic)


def disds_complex(n: int) -> SimplicialComplex:
    """Edge sets on [n] that are not strongly connected."""
    check_guard("disds_complex n", n, 4)
    return _edge_complex(n, lambda g: not is_strongly_connected(g))


def disds_facets(n: int) -> list[frozenset]:
    """Edge sets I_{A1,A2}: complete inside A1 and A2, plus all arrows A1 -> A2."""
    if n < 2:
        raise ValueError("need n >= 2")
    out = []
    for code in range(1, 2 ** n - 1):
        a1 = {v + 1 for v in range(n) if code >> v & 1}
        out.append(
            frozenset(
                (i, j)
                for i, j in ordered_pairs(n)
                if (i in a1) == (j in a1) or (i in a1 and j not in a1)
            )
        )
    return out


def root_system(n: int) -> Configuration:
    """Vectors e_j - e_i in Q^n labelled by the ordered pair (i, j)."""
    if n < 2:
        raise ValueError("need n >= 2")
    pts = []
    for i, j in ordered_pairs(n):
        v = [0] * n
        v[j - 1] += 1
        v[i - 1] -= 1
        pts.append(tuple(v))
    return Configuration(tuple(pts), tuple(ordered_pairs(n)))


@dataclass
class IdentificationReport:
    n: int
    dag_equals_stel: bool
    disds_equals_bstel: bool
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.dag_equals_stel and self.disds_equals_bstel


def _first_difference(a: SimplicialComplex, b: SimplicialComplex) -> str | None:
    fa, fb = a.labeled_faces(), b.labeled_faces()
    if fa == fb:
        return None
    diff = sorted(fa ^ fb, key=lambda f: (len(f), sorted(f)))[0]
    side = "only in the first" if diff in fa else "only in the second"
    return f"{sorted(diff)} {side}"


def verify_identifications(n: int) -> IdentificationReport:
    check_guard("verify_identifications n", n, 4)
    a = essentialize(root_system(n))
    d1 = _first_difference(dag_complex(n), stel_complex(a))
    d2 = _first_difference(disds_complex(n), bstel_complex(a))
    return IdentificationReport(n, d1 is None, d2 is None, d1 or d2)


def encode_dag(w: WeightedDAG) -> tuple:
    """Sum of w_ij * (e_j - e_i): a ray representative of the sphere point."""
    if not w.weights:
        raise ValueError("all weights are zero")
    x = [Fraction(0)] * w.n
    for (i, j), wt in w.weights.items():
        x[j - 1] += wt
        x[i - 1] -= wt
    return tuple(x)


def decode_vector(x: Iterable, rho: Callable[[Fraction], Fraction] | None = None) -> WeightedDAG:
    """Edge (i, j) weighted rho(x_j - x_i) whenever x_i < x_j."""
    x = [parse_rational(v) for v in x]
    if sum(x) != 0:
        raise ValueError("coordinates must sum to zero")
    if not any(x):
        raise ValueError("zero vector")
    rho = rho or (lambda t: t)
    n = len(x)
    weights = {}
    for i, j in ordered_pairs(n):
        if x[i - 1] < x[j - 1]:
            weights[(i, j)] = Fraction(rho(x[j - 1] - x[i - 1]))
    return WeightedDAG(Digraph(n, frozenset(weights)), weights)


def simple_cycles(n: int) -> list[frozenset]:
    """Edge sets of the simple directed cycles (length >= 2) on [n]."""
    out = set()
    for k in range(2, n + 1):
        for seq in permutations(range(1, n + 1), k):
            if seq[0] != min(seq):
                continue
            out.add(frozenset(zip(seq, seq[1:] + seq[:1])))
    return sorted(out, key=lambda c: (len(c), sorted(c)))
