"""Vietoris-Rips filtrations with exact squared-distance values, persistence
over GF(2), and the two hemisphere endpoints of the spherical Cech filtration.

Filtration values are squared Euclidean diameters.  A radius-style time t
with the half-distance convention corresponds to the value (2t)^2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .arrangements import arrangement_from_config, intersection_lattice, mobius_invariant
from .complexes import EnumerationLimitError, SimplicialComplex, face_limit, reduced_homology
from .exact import format_rational, qvector
from .spheres import Configuration, bstel_complex, essentialize, is_ample, is_antipodal, stel_complex

__all__ = [
    "Filtration",
    "Bar",
    "PersistenceDiagram",
    "vr_filtration",
    "persistence",
    "hypercube",
    "EndpointReport",
    "hemisphere_cech_endpoints",
]

MAX_POINTS = 16
INF = None  # death of an essential class


@dataclass(frozen=True)
class Filtration:
    simplices: tuple  # tuple of (vertex tuple, Fraction) in filtration order
    n_points: int
    max_dim: int

    def __len__(self) -> int:
        return len(self.simplices)

    def value(self, simplex: tuple) -> Fraction:
        return dict(self.simplices)[tuple(simplex)]

    def is_complete(self) -> bool:
        return self.max_dim >= self.n_points - 1

    def snapshot(self, t: Fraction) -> SimplicialComplex:
        faces = [s for s, v in self.simplices if v <= t]
        return SimplicialComplex.from_faces(range(self.n_points), faces)


def _sqdist(a: Sequence, b: Sequence) -> Fraction:
    return sum((x - y) ** 2 for x, y in zip(a, b))


def vr_filtration(points: Sequence[Sequence], max_dim: int) -> Filtration:
    """Every simplex of dimension <= max_dim, born at its squared diameter."""
    pts = [qvector(p) for p in points]
    if len(pts) > MAX_POINTS and face_limit() is None:
        raise EnumerationLimitError(f"{len(pts)} points exceeds the guard of {MAX_POINTS}")
    n = len(pts)
    d2 = {(i, j): _sqdist(pts[i], pts[j]) for i, j in combinations(range(n), 2)}
    out = []
    for k in range(1, min(max_dim, n - 1) + 2):
        for s in combinations(range(n), k):
            v = max((d2[e] for e in combinations(s, 2)), default=Fraction(0))
            out.append((s, Fraction(v)))
    out.sort(key=lambda sv: (sv[1], len(sv[0]), sv[0]))
    return Filtration(tuple(out), n, max_dim)


@dataclass(frozen=True)
class Bar:
    degree: int
    birth: Fraction
    death: Fraction | None  # None for an infinite bar

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "birth": format_rational(self.birth),
            "death": "inf" if self.death is None else format_rational(self.death),
        }


@dataclass
class PersistenceDiagram:
    bars: list = field(default_factory=list)
    max_degree: int = 0  # bars above this degree are not reported

    def in_degree(self, k: int) -> list[Bar]:
        return [b for b in self.bars if b.degree == k]

    def multiset(self) -> dict:
        out: dict = {}
        for b in self.bars:
            key = (b.degree, b.birth, b.death)
            out[key] = out.get(key, 0) + 1
        return out

    def to_json(self) -> list:
        return [b.to_json() for b in self.bars]


def persistence(f: Filtration) -> PersistenceDiagram:
    """Standard column reduction over GF(2); zero-length pairs are dropped."""
    index = {s: i for i, (s, _) in enumerate(f.simplices)}
    values = [v for _, v in f.simplices]
    dims = [len(s) - 1 for s, _ in f.simplices]
    low_owner: dict[int, int] = {}
    paired: set[int] = set()
    bars = []
    for j, (s, _) in enumerate(f.simplices):
        col = 0
        if len(s) > 1:
            for k in range(len(s)):
                col |= 1 << index[s[:k] + s[k + 1 :]]
        while col:
            low = col.bit_length() - 1
            other = low_owner.get(low)
            if other is None:
                break
            col ^= other
        if col:
            low = col.bit_length() - 1
            low_owner[low] = col
            paired.update((low, j))
            if values[low] < values[j]:
                bars.append(Bar(dims[low], values[low], values[j]))
    for i in range(len(values)):
        if i not in paired:
            bars.append(Bar(dims[i], values[i], None))
    top = len(values) and max(dims)
    reliable = top if f.is_complete() else f.max_dim - 1
    bars = sorted(
        (b for b in bars if b.degree <= reliable),
        key=lambda b: (b.degree, b.birth, b.death is None, b.death or 0),
    )
    return PersistenceDiagram(bars, reliable)


def hypercube(n: int) -> list[tuple]:
    return [tuple(Fraction(x) for x in eps) for eps in product((-1, 1), repeat=n)]


@dataclass
class EndpointReport:
    dim: int
    mobius: int
    stel_betti: dict
    bstel_betti: dict

    @property
    def ok(self) -> bool:
        d = self.dim
        return self.stel_betti == {d - 1: 1} and self.bstel_betti == {2 * d - 2: self.mobius}

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "mobius": self.mobius,
            "stel_betti": {str(k): v for k, v in self.stel_betti.items()},
            "bstel_betti": {str(k): v for k, v in self.bstel_betti.items()},
            "ok": self.ok,
        }


def hemisphere_cech_endpoints(c: Configuration) -> tuple[SimplicialComplex, SimplicialComplex, EndpointReport]:
    """Cech nerves of the geodesic balls just below and at radius pi/2.

    Just below pi/2 the balls are the open hemispheres (Stel); at pi/2 they
    are the closed ones (BStel).
    """
    if not is_antipodal(c):
        raise ValueError("configuration is not antipodal")
    c = essentialize(c)
    if not is_ample(c):
        raise ValueError("configuration is not ample")
    stel, bstel = stel_complex(c), bstel_complex(c)
    mu = mobius_invariant(intersection_lattice(arrangement_from_config(c)))
    report = EndpointReport(
        c.dim,
        mu,
        reduced_homology(stel).concentrated(),
        reduced_homology(bstel).concentrated(),
    )
    return stel, bstel, report
