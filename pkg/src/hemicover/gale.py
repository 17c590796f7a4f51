"""Nerve-complexes of polytopes given by facet data, Gale/Alexander duality,
and the lattice of unions of directed cycles."""
from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (
    FinitePoset,
    SimplicialComplex,
    alexander_dual,
    bits,
    check_guard,
    from_facets,
    popcount,
)
from .digraphs import ordered_pairs, simple_cycles
from .spheres import Configuration, essentialize, is_doubly_ample, stel_complex

__all__ = [
    "FacetIncidence",
    "CycleLattice",
    "minimal_nonfaces",
    "nerve_complex",
    "GaleReport",
    "gale_duality_check",
    "cycle_polytope_facets",
    "cycle_lattice",
    "facet_intersections",
]


@dataclass(frozen=True)
class FacetIncidence:
    """Vertex sets of the facets of a polytope on ``vertices``."""

    vertices: tuple
    facets: tuple  # tuple of frozensets

    def __post_init__(self):
        fs = tuple(frozenset(f) for f in self.facets)
        verts = set(self.vertices)
        for f in fs:
            if not f <= verts:
                raise ValueError("facet uses an unknown vertex")
        for a in fs:
            if any(a < b for b in fs):
                raise ValueError("one facet contains another")
        if set().union(*fs) != verts:
            raise ValueError("a vertex lies in no facet")
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "facets", fs)


def minimal_nonfaces(k: SimplicialComplex) -> list[frozenset]:
    """Inclusion-minimal vertex sets that are not faces.

    A minimal non-face minus its top vertex is a face, so candidates are
    faces (or the empty face) extended by one vertex above their maximum.
    """
    faces = k.faces
    out = []
    for f in [0, *faces]:
        for v in range(f.bit_length(), len(k.labels)):
            cand = f | (1 << v)
            if cand in faces:
                continue
            if all((cand ^ (1 << b)) in faces or cand ^ (1 << b) == 0 for b in bits(cand)):
                out.append(cand)
    return sorted((k.labels_of(m) for m in out), key=lambda s: (len(s), sorted(map(repr, s))))


def nerve_complex(fi: FacetIncidence) -> SimplicialComplex:
    """Vertex sets lying in a common facet."""
    return from_facets(fi.vertices, fi.facets)


@dataclass
class GaleReport:
    doubly_ample: bool
    facets: list = field(default_factory=list)
    facet_sizes: dict = field(default_factory=dict)
    dual_equals_stel: bool = False

    @property
    def ok(self) -> bool:
        return self.doubly_ample and self.dual_equals_stel


def gale_duality_check(c: Configuration) -> GaleReport:
    """Facets are complements of minimal non-faces of Stel(c); the Alexander
    dual of their nerve-complex must give Stel(c) back."""
    c = essentialize(c)
    if not is_doubly_ample(c):
        raise ValueError("configuration is not doubly ample")
    stel = stel_complex(c)
    ground = frozenset(c.labels)
    facets = [ground - s for s in minimal_nonfaces(stel)]
    fi = FacetIncidence(c.labels, tuple(facets))
    dual = alexander_dual(nerve_complex(fi), c.labels)
    sizes: dict[int, int] = {}
    for f in facets:
        sizes[len(f)] = sizes.get(len(f), 0) + 1
    return GaleReport(True, facets, dict(sorted(sizes.items())), dual.faces == stel.faces)


def cycle_polytope_facets(n: int) -> FacetIncidence:
    """Facets of the cycle polytope: complements of simple directed cycles in [n]^(2)."""
    pairs = ordered_pairs(n)
    ground = frozenset(pairs)
    return FacetIncidence(tuple(pairs), tuple(ground - c for c in simple_cycles(n)))


def facet_intersections(fi: FacetIncidence) -> set[frozenset]:
    """Nonempty intersections of one or more facets: vertex sets of proper faces."""
    found = set(fi.facets)
    frontier = set(fi.facets)
    while frontier:
        nxt = set()
        for a in frontier:
            for f in fi.facets:
                b = a & f
                if b and b not in found:
                    nxt.add(b)
        found |= nxt
        frontier = nxt
    return found


@dataclass
class CycleLattice:
    n: int
    pairs: tuple
    generators: list  # bitmasks of simple cycles
    elements: set  # bitmasks, including 0 and the full set

    @property
    def full(self) -> int:
        return (1 << len(self.pairs)) - 1

    def edges_of(self, mask: int) -> frozenset:
        return frozenset(self.pairs[b] for b in bits(mask))

    def proper_part(self) -> FinitePoset:
        els = sorted((m for m in self.elements if m not in (0, self.full)), key=lambda m: (popcount(m), m))
        return FinitePoset([self.edges_of(m) for m in els], lambda a, b: a <= b, check=False)


def cycle_lattice(n: int) -> CycleLattice:
    """Unions of simple directed cycles on [n], plus the empty set as bottom."""
    check_guard("cycle_lattice n", n, 4)
    pairs = tuple(ordered_pairs(n))
    pos = {p: i for i, p in enumerate(pairs)}
    gens = [sum(1 << pos[e] for e in c) for c in simple_cycles(n)]
    elements = set(gens)
    frontier = set(gens)
    while frontier:
        nxt = set()
        for a in frontier:
            for g in gens:
                u = a | g
                if u not in elements:
                    nxt.add(u)
        elements |= nxt
        frontier = nxt
    elements.add(0)
    return CycleLattice(n, pairs, gens, elements)
