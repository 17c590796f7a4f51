"""Central hyperplane arrangements and their intersection lattices."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .complexes import FinitePoset, bits, reduced_homology
from .exact import format_rational, int_content, qvector, rational_rank
from .spheres import (
    Configuration,
    Subspace,
    _bstel_masks,
    _ridge_table,
    _stel_masks,
    dual_flats,
    essentialize,
    halfspace_nerve,
    is_ample,
    is_antipodal,
    quillen_fiber,
)

__all__ = [
    "Arrangement",
    "IntersectionLattice",
    "intersection_lattice",
    "mobius_invariant",
    "config_from_arrangement",
    "arrangement_from_config",
    "proper_dual_poset",
    "braid_arrangement",
    "random_arrangement",
    "QuillenReport",
    "quillen_map_check",
]


@dataclass(frozen=True)
class Arrangement:
    normals: tuple

    def __post_init__(self):
        ns = tuple(qvector(n) for n in self.normals)
        if not ns:
            raise ValueError("empty arrangement")
        if any(len(n) != len(ns[0]) for n in ns):
            raise ValueError("normals of different dimensions")
        if any(all(x == 0 for x in n) for n in ns):
            raise ValueError("zero normal")
        object.__setattr__(self, "normals", ns)

    @property
    def dim(self) -> int:
        return len(self.normals[0])

    def is_essential(self) -> bool:
        return rational_rank(self.normals) == self.dim

    def essentialized(self) -> "Arrangement":
        return Arrangement(essentialize(Configuration(self.normals)).points)

    @classmethod
    def from_json(cls, data) -> "Arrangement":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(qvector(n) for n in data["normals"]))

    def to_json(self) -> dict:
        return {"dim": self.dim, "normals": [[format_rational(x) for x in n] for n in self.normals]}


@dataclass
class IntersectionLattice:
    """All intersections of the hyperplanes, graded by dimension.

    ``elements[0]`` is {0} and ``elements[-1]`` is the whole space;
    ``mobius[i]`` is mu(0, elements[i]).
    """

    dim: int
    elements: list  # list[Subspace]
    mobius: list = field(default_factory=list)

    def index(self, x: Subspace) -> int:
        return self.elements.index(x)

    @property
    def bottom(self) -> Subspace:
        return self.elements[0]

    @property
    def top(self) -> Subspace:
        return self.elements[-1]

    def leq(self, i: int, j: int) -> bool:
        return self.elements[i] <= self.elements[j]

    def hasse_edges(self) -> list[tuple[int, int]]:
        els = self.elements
        return [
            (i, j)
            for i, x in enumerate(els)
            for j, y in enumerate(els)
            if y.dim == x.dim + 1 and x <= y
        ]

    @property
    def rank(self) -> int:
        return self.top.dim - self.bottom.dim

    def as_poset(self) -> FinitePoset:
        return FinitePoset(self.elements, lambda a, b: a <= b, check=False)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "elements": [{"dim": x.dim, "basis": x.to_json()} for x in self.elements],
            "hasse": [list(e) for e in self.hasse_edges()],
            "mobius": self.mobius,
            "mobius_invariant": abs(self.mobius[-1]),
        }


def intersection_lattice(a: Arrangement) -> IntersectionLattice:
    """Every intersection of hyperplanes, each hyperplane being a normal's null space.

    Flats are generated through their orthogonal complements, the spans of
    subsets of normals, and converted back at the end.
    """
    if not a.is_essential():
        raise ValueError("normals do not span the ambient space")
    c = Configuration(a.normals)
    duals = dual_flats(c, proper=False)
    elements = sorted((w.orthogonal_complement() for w in duals), key=lambda x: (x.dim, x.basis))
    lat = IntersectionLattice(a.dim, elements)
    lat.mobius = _mobius_from_bottom(elements)
    return lat


def _mobius_from_bottom(elements: list) -> list[int]:
    mu: list[int] = []
    for i, x in enumerate(elements):
        if i == 0:
            mu.append(1)
            continue
        mu.append(-sum(mu[j] for j in range(i) if elements[j].dim < x.dim and elements[j] <= x))
    return mu


def mobius_invariant(lat: IntersectionLattice, signed: bool = False) -> int:
    """|mu(0, 1)|; the signed value is checked against (-1)^rank."""
    value = lat.mobius[-1]
    if value == 0 or (value > 0) != (lat.rank % 2 == 0):
        raise AssertionError(f"Mobius value {value} has the wrong sign for rank {lat.rank}")
    return value if signed else abs(value)


def config_from_arrangement(a: Arrangement) -> Configuration:
    """Both unit-normal directions of each hyperplane, labelled i and -i."""
    points, labels = [], []
    for i, n in enumerate(a.normals, start=1):
        points += [n, tuple(-x for x in n)]
        labels += [i, -i]
    return Configuration(tuple(points), tuple(labels))


def arrangement_from_config(c: Configuration) -> Arrangement:
    if not is_antipodal(c):
        raise ValueError("configuration is not antipodal")
    if not is_ample(c):
        raise ValueError("configuration is not ample")
    normals = []
    for p in c.points:
        r = int_content(p)
        if next(x for x in r if x) > 0:
            normals.append(p)
    return Arrangement(tuple(normals))


def proper_dual_poset(lat: IntersectionLattice) -> FinitePoset:
    """Proper part with the order reversed, elements written as orthogonal complements."""
    inner = lat.elements[1:-1]
    comps = [x.orthogonal_complement() for x in inner]
    return FinitePoset(comps, lambda a, b: a <= b, check=False)


def braid_arrangement(n: int) -> Arrangement:
    """Type A arrangement x_i = x_j on n letters, essentialized to dimension n - 1."""
    normals = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[j], v[i] = 1, -1
            normals.append(tuple(v))
    return Arrangement(tuple(normals)).essentialized()


def random_arrangement(rng: random.Random, dim: int = 3, max_hyperplanes: int = 6, bound: int = 3) -> Arrangement:
    """Spanning arrangement with small integer normals; resamples until spanning."""
    while True:
        k = rng.randint(dim, max_hyperplanes)
        normals = []
        while len(normals) < k:
            v = tuple(rng.randint(-bound, bound) for _ in range(dim))
            if any(v):
                normals.append(v)
        a = Arrangement(tuple(normals))
        if a.is_essential():
            return a


@dataclass
class QuillenReport:
    faces: int = 0
    stel_faces: int = 0
    flats: int = 0
    well_defined: bool = True
    monotone: bool = True
    case1_ok: bool = True
    fibers: list = field(default_factory=list)  # (flat dim, betti dict, equals nerve)
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return (
            self.well_defined
            and self.monotone
            and self.case1_ok
            and all(acyc and same for _, acyc, same in self.fibers)
            and self.counterexample is None
        )


def quillen_map_check(c: Configuration) -> QuillenReport:
    """Build the map I -> I (constellations) or W_I (otherwise) and test its fibers."""
    if not is_antipodal(c):
        raise ValueError("configuration is not antipodal")
    c = essentialize(c)
    if not is_ample(c):
        raise ValueError("configuration is not ample")
    rep = QuillenReport()
    stel = _stel_masks(c)
    bstel = _bstel_masks(c)
    ridges = _ridge_table(c)
    flats = set(dual_flats(c))
    rep.faces, rep.stel_faces, rep.flats = len(bstel), len(stel), len(flats)

    def image(m: int):
        return ("stel", m) if m in stel else ("flat", ridges[m])

    def below(x, y) -> bool:
        if x[0] == "stel" and y[0] == "stel":
            return x[1] & ~y[1] == 0
        if x[0] == "stel":
            return True
        if y[0] == "stel":
            return False
        return x[1] <= y[1]

    for m in bstel:
        w = ridges[m]
        if (m in stel) != (w.dim == 0):
            rep.well_defined = False
            rep.counterexample = f"face {c.labels and [c.labels[i] for i in bits(m)]}: Stel membership vs zero ridge"
            return rep
        if m not in stel and w not in flats:
            rep.well_defined = False
            rep.counterexample = f"face {[c.labels[i] for i in bits(m)]}: ridge {w!r} not a proper dual flat"
            return rep
    for m in bstel:
        fm = image(m)
        for b in bits(m):
            sub = m ^ (1 << b)
            if sub and not below(image(sub), fm):
                rep.monotone = False
                rep.counterexample = f"f not monotone on {[c.labels[i] for i in bits(sub)]} < {[c.labels[i] for i in bits(m)]}"
                return rep
    # stel targets: preimage of the down-set of I is the full simplex on I
    for m in stel:
        pre = {x for x in bstel if image(x)[0] == "stel" and x & ~m == 0}
        expected = {s for s in _submasks(m)}
        if pre != expected:
            rep.case1_ok = False
            rep.counterexample = f"fiber over constellation {[c.labels[i] for i in bits(m)]} lacks a greatest element"
            return rep
    for flat in sorted(flats, key=lambda f: (f.dim, f.basis)):
        fiber = quillen_fiber(c, flat)
        nerve = halfspace_nerve(c, flat)
        h = reduced_homology(fiber)
        rep.fibers.append((flat.dim, h.is_acyclic(), fiber.faces == nerve.faces))
        if not h.is_acyclic():
            rep.counterexample = f"fiber over {flat!r} has homology {h.concentrated()}"
        elif fiber.faces != nerve.faces:
            rep.counterexample = f"fiber over {flat!r} differs from the halfspace nerve"
    return rep


def _submasks(mask: int):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask
