"""Spherical configurations and their hemisphere nerves.

A configuration is a list of nonzero rational vectors.  Points are never
normalised: every predicate here only sees rays, so the unit-sphere picture
is purely conceptual and all answers stay exact.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .complexes import (
    SimplicialComplex,
    bits,
    check_guard,
    enumerate_downward_closed,
)
from .exact import (
    cone_contains,
    format_rational,
    inequalities_feasible,
    int_content,
    nullspace,
    qvector,
    rational_rank,
    rref,
    zero_in_convex_hull,
)

__all__ = [
    "Configuration",
    "Subspace",
    "essentialize",
    "in_open_hemisphere",
    "in_closed_hemisphere",
    "ridge",
    "stel_complex",
    "bstel_complex",
    "is_ample",
    "is_antipodal",
    "is_doubly_ample",
    "dual_flats",
    "quillen_fiber",
    "halfspace_nerve",
]

MAX_POINTS = 22


@dataclass(frozen=True)
class Configuration:
    points: tuple  # tuple of QVector
    labels: tuple = None

    def __post_init__(self):
        pts = tuple(qvector(p) for p in self.points)
        if not pts:
            raise ValueError("empty configuration")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("points of different dimensions")
        if any(all(x == 0 for x in p) for p in pts):
            raise ValueError("configuration contains the zero vector")
        labels = tuple(range(1, len(pts) + 1)) if self.labels is None else tuple(self.labels)
        if len(labels) != len(pts):
            raise ValueError("one label per point required")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def spans(self) -> bool:
        return rational_rank(self.points) == self.dim

    def scaled(self, factors: Sequence) -> "Configuration":
        return Configuration(
            tuple(tuple(Fraction(f) * x for x in p) for f, p in zip(factors, self.points)),
            self.labels,
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "points": [[format_rational(x) for x in p] for p in self.points],
            "labels": [list(l) if isinstance(l, tuple) else l for l in self.labels],
        }

    @classmethod
    def from_json(cls, data) -> "Configuration":
        if isinstance(data, str):
            data = json.loads(data)
        pts = [qvector(p) for p in data["points"]]
        if "dim" in data and any(len(p) != data["dim"] for p in pts):
            raise ValueError("point length disagrees with 'dim'")
        labels = data.get("labels")
        if labels is not None:
            labels = [tuple(l) if isinstance(l, list) else l for l in labels]
        return cls(tuple(pts), labels)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace kept as its reduced row-echelon basis (canonical)."""

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows, _ = rref(list(vectors), ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(
            [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)], ambient_dim
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Sequence) -> bool:
        return rational_rank(list(self.basis) + [list(v)]) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        if self.dim > other.dim:
            return False
        return rational_rank(list(other.basis) + list(self.basis)) == other.dim

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def orthogonal_complement(self) -> "Subspace":
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return Subspace.span(nullspace(self.basis, self.ambient_dim), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return (self.orthogonal_complement() + other.orthogonal_complement()).orthogonal_complement()

    def to_json(self) -> list:
        return [[format_rational(x) for x in r] for r in self.basis]

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(format_rational(x) for x in r) + ")" for r in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}: {rows})"


def essentialize(c: Configuration) -> Configuration:
    """Rewrite the points in coordinates of a rational basis of their span.

    With the span in RREF, a vector of the span is recovered from its entries
    at the pivot columns, so projecting to those columns is the coordinate map.
    """
    _, pivots = rref(c.points, c.dim)
    if len(pivots) == c.dim:
        return c
    return Configuration(tuple(tuple(p[j] for j in pivots) for p in c.points), c.labels)


def _require_spanning(c: Configuration) -> None:
    if not c.spans():
        raise ValueError("configuration does not span its ambient space; essentialize it first")


def _indices(c: Configuration, I: Iterable) -> list[int]:
    """Accept point positions (ints) or labels; labels win when they match."""
    idx = {lab: i for i, lab in enumerate(c.labels)}
    out = []
    for x in I:
        if x in idx:
            out.append(idx[x])
        elif isinstance(x, int) and 0 <= x < len(c):
            out.append(x)
        else:
            raise KeyError(x)
    return out


def _probes(d: int):
    for j in range(d):
        for s in (1, -1):
            yield tuple(s if k == j else 0 for k in range(d))


def _cone_is_everything(vectors: Sequence[Sequence], d: int) -> bool:
    return all(cone_contains(vectors, e) for e in _probes(d))


def in_open_hemisphere(c: Configuration, I: Iterable) -> bool:
    pts = [c.points[i] for i in _indices(c, I)]
    if not pts:
        return True
    return not zero_in_convex_hull(pts)


def in_closed_hemisphere(c: Configuration, I: Iterable) -> bool:
    """False exactly when the points of I positively span the whole space."""
    _require_spanning(c)
    pts = [c.points[i] for i in _indices(c, I)]
    if not pts:
        return True
    return not _cone_is_everything(pts, c.dim)


def _ridge_positions(c: Configuration, idx: Sequence[int]) -> list[int]:
    pts = [c.points[i] for i in idx]
    return [i for i in idx if cone_contains(pts, tuple(-x for x in c.points[i]))]


def ridge(c: Configuration, I: Iterable) -> Subspace:
    """Largest linear subspace inside cone{z_i : i in I}."""
    _require_spanning(c)
    idx = _indices(c, I)
    return Subspace.span([c.points[i] for i in _ridge_positions(c, idx)], c.dim)


@lru_cache(maxsize=64)
def _stel_masks(c: Configuration) -> frozenset:
    check_guard("constellation complex", len(c), MAX_POINTS)
    pts = c.points
    return frozenset(
        enumerate_downward_closed(len(c), lambda m: not zero_in_convex_hull([pts[i] for i in bits(m)]))
    )


@lru_cache(maxsize=64)
def _bstel_masks(c: Configuration) -> frozenset:
    check_guard("big constellation complex", len(c), MAX_POINTS)
    _require_spanning(c)
    pts, d = c.points, c.dim
    return frozenset(
        enumerate_downward_closed(len(c), lambda m: not _cone_is_everything([pts[i] for i in bits(m)], d))
    )


def stel_complex(c: Configuration) -> SimplicialComplex:
    """Nerve of the open hemispheres centred at the points."""
    return SimplicialComplex.from_masks(c.labels, _stel_masks(c), check=False)


def bstel_complex(c: Configuration) -> SimplicialComplex:
    """Nerve of the closed hemispheres centred at the points."""
    return SimplicialComplex.from_masks(c.labels, _bstel_masks(c), check=False)


def is_ample(c: Configuration) -> bool:
    e = essentialize(c)
    return _cone_is_everything(e.points, e.dim)


def _ray(v: Sequence) -> tuple[int, ...]:
    return int_content(v)


def is_antipodal(c: Configuration) -> bool:
    rays = Counter(_ray(p) for p in c.points)
    return all(rays[tuple(-x for x in r)] == n for r, n in rays.items())


def is_doubly_ample(c: Configuration) -> bool:
    """Every open hemisphere holds two points: ample after deleting any one point."""
    _require_spanning(c)
    if len(c) < 2:
        return False
    pts = list(c.points)
    return all(_cone_is_everything(pts[:i] + pts[i + 1 :], c.dim) for i in range(len(pts)))


def line_normals(c: Configuration) -> list[tuple]:
    """One representative per line through a point; the induced arrangement."""
    seen: dict[tuple, tuple] = {}
    for p in c.points:
        r = _ray(p)
        key = r if next(x for x in r if x) > 0 else tuple(-x for x in r)
        seen.setdefault(key, p)
    return list(seen.values())


@lru_cache(maxsize=64)
def _dual_flat_set(c: Configuration) -> frozenset:
    normals = line_normals(c)
    d = c.dim
    flats = {Subspace.zero(d)}
    frontier = [Subspace.zero(d)]
    while frontier:
        nxt = []
        for f in frontier:
            for n in normals:
                if not f.contains_vector(n):
                    g = f + Subspace.span([n], d)
                    if g not in flats:
                        flats.add(g)
                        nxt.append(g)
        frontier = nxt
    return frozenset(flats)


def dual_flats(c: Configuration, proper: bool = True) -> list[Subspace]:
    """Spans of subsets of the induced normals, i.e. the dual intersection lattice."""
    flats = _dual_flat_set(c)
    if proper:
        flats = [f for f in flats if 0 < f.dim < c.dim]
    return sorted(flats, key=lambda f: (f.dim, f.basis))


def _check_flat(c: Configuration, flat: Subspace) -> None:
    if flat.ambient_dim != c.dim or flat not in _dual_flat_set(c) or not 0 < flat.dim < c.dim:
        raise ValueError(f"{flat!r} is not a proper element of the dual intersection lattice")


@lru_cache(maxsize=16)
def _ridge_table(c: Configuration) -> dict:
    out = {}
    for m in _bstel_masks(c):
        pos = _ridge_positions(c, bits(m))
        out[m] = Subspace.span([c.points[i] for i in pos], c.dim)
    return out


def quillen_fiber(c: Configuration, flat: Subspace) -> SimplicialComplex:
    """Faces of the big constellation complex whose ridge lies inside ``flat``."""
    _require_spanning(c)
    _check_flat(c, flat)
    table = _ridge_table(c)
    faces = [m for m, w in table.items() if w <= flat]
    return SimplicialComplex.from_masks(c.labels, faces, check=False)


def halfspace_nerve(c: Configuration, flat: Subspace) -> SimplicialComplex:
    """Nerve of {<u,z_i> >= 0 if z_i in flat, <u,z_i> >= 1 otherwise}."""
    _require_spanning(c)
    _check_flat(c, flat)
    check_guard("halfspace nerve", len(c), MAX_POINTS)
    pts, d = c.points, c.dim
    bound = [0 if flat.contains_vector(p) else 1 for p in pts]

    def feasible(m: int) -> bool:
        idx = bits(m)
        return inequalities_feasible([pts[i] for i in idx], [bound[i] for i in idx], d)

    faces = enumerate_downward_closed(len(c), feasible)
    return SimplicialComplex.from_masks(c.labels, faces, check=False)
