"""Simplicial complexes, integral homology, posets and order complexes.

Faces are stored as integer bitmasks over the positions of the vertex labels,
so the declared label order is the global vertex order that fixes
orientations.  The empty face is never stored but is always present, except
in the void complex.
"""
from __future__ import annotations

import json
import os
import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .exact import sparse_invariant_factors

__all__ = [
    "EnumerationLimitError",
    "SimplicialComplex",
    "HomologyProfile",
    "FinitePoset",
    "PseudomanifoldReport",
    "from_facets",
    "enumerate_downward_closed",
    "boundary_columns",
    "reduced_homology",
    "order_complex",
    "chain_count",
    "face_poset",
    "ordered_sum",
    "poset_isomorphism",
    "alexander_dual",
    "classify_pseudomanifold",
    "bits",
    "popcount",
]


class EnumerationLimitError(RuntimeError):
    """An enumeration guard refused to build something too large."""


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def face_limit() -> int | None:
    """Face-count ceiling from ``HEMI_MAX_FACES``; when set it replaces size guards."""
    raw = os.environ.get("HEMI_MAX_FACES")
    if not raw:
        return None
    return int(raw)


def check_guard(what: str, size: int, limit: int) -> None:
    if face_limit() is None and size > limit:
        raise EnumerationLimitError(
            f"{what}: size {size} exceeds the guard {limit} (set HEMI_MAX_FACES to override)"
        )


@dataclass(frozen=True)
class SimplicialComplex:
    labels: tuple
    faces: frozenset  # nonempty faces as bitmasks
    void: bool = False
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
        if self.void and self.faces:
            raise ValueError("the void complex has no faces")

    # construction -------------------------------------------------------
    @classmethod
    def from_masks(cls, labels: Sequence, masks: Iterable[int], check: bool = True) -> "SimplicialComplex":
        faces = frozenset(m for m in masks if m)
        k = cls(tuple(labels), faces)
        if check:
            k._check_closed()
        return k

    @classmethod
    def from_faces(cls, labels: Sequence, faces: Iterable[Iterable]) -> "SimplicialComplex":
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        return cls.from_masks(labels, (sum(1 << index[v] for v in f) for f in faces))

    @classmethod
    def void_complex(cls, labels: Sequence = ()) -> "SimplicialComplex":
        return cls(tuple(labels), frozenset(), void=True)

    def _check_closed(self) -> None:
        full = (1 << len(self.labels)) - 1
        for f in self.faces:
            if f & ~full:
                raise ValueError("face uses an undeclared vertex")
            for b in bits(f):
                sub = f ^ (1 << b)
                if sub and sub not in self.faces:
                    raise ValueError("face family is not downward closed")

    # views ----------------------------------------------------------------
    def mask(self, face: Iterable) -> int:
        return sum(1 << self._index[v] for v in face)

    def labels_of(self, mask: int) -> frozenset:
        return frozenset(self.labels[i] for i in bits(mask))

    def __contains__(self, face) -> bool:
        try:
            m = self.mask(face)
        except KeyError:
            return False
        return m == 0 and not self.void or m in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def labeled_faces(self) -> set[frozenset]:
        return {self.labels_of(f) for f in self.faces}

    @property
    def dim(self) -> int:
        if not self.faces:
            return -1
        return max(popcount(f) for f in self.faces) - 1

    def f_vector(self) -> list[int]:
        c = Counter(popcount(f) for f in self.faces)
        return [c[k] for k in range(1, self.dim + 2)]

    def facet_masks(self) -> list[int]:
        faces = self.faces
        out = []
        for f in faces:
            if not any((f | (1 << v)) in faces for v in range(len(self.labels)) if not f >> v & 1):
                out.append(f)
        return sorted(out)

    def facets(self) -> list[frozenset]:
        return [self.labels_of(f) for f in self.facet_masks()]

    def to_json(self) -> dict:
        def enc(v):
            return list(v) if isinstance(v, tuple) else v

        return {
            "vertices": [enc(v) for v in self.labels],
            "facets": [[enc(self.labels[i]) for i in bits(f)] for f in self.facet_masks()],
        }

    @classmethod
    def from_json(cls, data) -> "SimplicialComplex":
        if isinstance(data, str):
            data = json.loads(data)

        def dec(v):
            return tuple(v) if isinstance(v, list) else v

        return from_facets([dec(v) for v in data["vertices"]], [[dec(v) for v in f] for f in data["facets"]])

    def relabel(self, labels: Sequence) -> "SimplicialComplex":
        return SimplicialComplex(tuple(labels), self.faces, self.void)

    def __repr__(self) -> str:
        return f"SimplicialComplex(vertices={len(self.labels)}, faces={len(self.faces)}, dim={self.dim})"


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def from_facets(labels: Sequence, facets: Iterable[Iterable]) -> SimplicialComplex:
    """Downward closure of ``facets``."""
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    faces: set[int] = set()
    for facet in facets:
        facet = list(facet)
        if len(set(facet)) != len(facet):
            raise ValueError(f"facet {facet!r} repeats a vertex")
        try:
            m = sum(1 << index[v] for v in facet)
        except KeyError as exc:
            raise ValueError(f"facet uses undeclared vertex {exc.args[0]!r}") from None
        if m not in faces:
            faces.update(_submasks(m))
    return SimplicialComplex.from_masks(labels, faces, check=False)


def enumerate_downward_closed(n: int, predicate: Callable[[int], bool]) -> set[int]:
    """All nonempty masks over ``n`` vertices in a downward-closed family.

    Level by level; a candidate is built by appending a vertex above the
    current maximum and is tested only if all its facets already passed.
    """
    limit = face_limit()
    level = [1 << v for v in range(n) if predicate(1 << v)]
    found = set(level)
    while level:
        nxt = []
        for f in level:
            top = f.bit_length()
            for v in range(top, n):
                cand = f | (1 << v)
                if all((cand ^ (1 << b)) in found for b in bits(f)) and predicate(cand):
                    nxt.append(cand)
        found.update(nxt)
        if limit is not None and len(found) > limit:
            raise EnumerationLimitError(f"more than {limit} faces")
        level = nxt
    return found


# ---------------------------------------------------------------------------
# Homology


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology, degree by degree from 0 up to the dimension."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler: int
    empty: bool = False  # the complex {∅}: reduced homology Z in degree -1

    def reduced_betti(self, k: int) -> int:
        if k == -1:
            return int(self.empty)
        return self.betti[k] if 0 <= k < len(self.betti) else 0

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)

    def is_acyclic(self) -> bool:
        return not self.empty and not any(self.betti) and self.torsion_free

    def concentrated(self) -> dict[int, int]:
        """Nonzero reduced Betti numbers as ``{degree: rank}``."""
        out = {k: b for k, b in enumerate(self.betti) if b}
        if self.empty:
            out[-1] = 1
        return out

    def to_json(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "euler": self.euler,
        }


def boundary_columns(k: SimplicialComplex) -> list[tuple[list[int], list[dict[int, int]]]]:
    """Per dimension q >= 0: the q-faces (sorted) and the columns of their boundary.

    Dimension 0 maps to the augmentation (row 0 is the empty face).  Signs are
    (-1)^position with positions taken in the global vertex order.
    """
    by_dim: dict[int, list[int]] = {}
    for f in k.faces:
        by_dim.setdefault(popcount(f) - 1, []).append(f)
    out = []
    prev_index = {0: 0}
    for q in range(k.dim + 1):
        faces = sorted(by_dim.get(q, []))
        cols = []
        for f in faces:
            col = {}
            for pos, b in enumerate(bits(f)):
                col[prev_index[f ^ (1 << b)]] = -1 if pos % 2 else 1
            cols.append(col)
        out.append((faces, cols))
        prev_index = {f: i for i, f in enumerate(faces)}
    return out


def _compose_is_zero(lower: list[dict[int, int]], upper: list[dict[int, int]]) -> bool:
    for col in upper:
        acc: dict[int, int] = {}
        for i, v in col.items():
            for r, w in lower[i].items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


def reduced_homology(k: SimplicialComplex) -> HomologyProfile:
    """Reduced homology over Z from Smith forms of the boundary matrices."""
    if k.void:
        return HomologyProfile((), (), 0)
    if not k.faces:
        return HomologyProfile((), (), 0, empty=True)
    chain = boundary_columns(k)
    for q in range(1, len(chain)):
        if not _compose_is_zero(chain[q - 1][1], chain[q][1]):
            raise AssertionError(f"boundary of boundary is nonzero in degree {q}")
    forms = [sparse_invariant_factors(cols) for _, cols in chain]
    top = len(chain) - 1
    betti, torsion = [], []
    for q in range(top + 1):
        nq = len(chain[q][0])
        r_out = forms[q].rank
        r_in = forms[q + 1].rank if q < top else 0
        betti.append(nq - r_out - r_in)
        torsion.append(forms[q + 1].torsion if q < top else ())
    euler = sum((-1) ** q * len(chain[q][0]) for q in range(top + 1))
    if euler - 1 != sum((-1) ** q * b for q, b in enumerate(betti)):
        raise AssertionError("Euler characteristic disagrees with Betti numbers")
    if any(torsion):
        warnings.warn(f"torsion in homology: {torsion}", RuntimeWarning, stacklevel=2)
    return HomologyProfile(tuple(betti), tuple(tuple(t) for t in torsion), euler)


# ---------------------------------------------------------------------------
# Posets


class FinitePoset:
    """Finite partial order on hashable labels.

    ``leq`` is either a callable ``leq(a, b)`` or an iterable of pairs
    ``(a, b)`` meaning a <= b (reflexive pairs may be omitted).
    """

    def __init__(self, elements: Iterable[Hashable], leq, check: bool = True):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate poset elements")
        n = len(self.elements)
        up = [1 << i for i in range(n)]
        if callable(leq):
            for i, a in enumerate(self.elements):
                for j, b in enumerate(self.elements):
                    if i != j and leq(a, b):
                        up[i] |= 1 << j
        else:
            for a, b in leq:
                up[self.index[a]] |= 1 << self.index[b]
        self._up = up
        if check:
            self._validate()

    @classmethod
    def _from_up(cls, elements, up) -> "FinitePoset":
        p = cls.__new__(cls)
        p.elements = tuple(elements)
        p.index = {e: i for i, e in enumerate(p.elements)}
        p._up = list(up)
        return p

    def _validate(self) -> None:
        up = self._up
        for i, u in enumerate(up):
            for j in bits(u):
                if j != i and up[j] >> i & 1:
                    raise ValueError(f"not antisymmetric: {self.elements[i]!r}, {self.elements[j]!r}")
                if up[j] & ~u:
                    raise ValueError(f"not transitive at {self.elements[i]!r} <= {self.elements[j]!r}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leq(self, a, b) -> bool:
        return bool(self._up[self.index[a]] >> self.index[b] & 1)

    def less(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def strictly_above(self, i: int) -> int:
        return self._up[i] & ~(1 << i)

    def subposet(self, keep: Iterable) -> "FinitePoset":
        wanted = set(keep)
        keep = [e for e in self.elements if e in wanted]
        pos = [self.index[e] for e in keep]
        new_up = []
        for i in pos:
            u = self._up[i]
            new_up.append(sum(1 << n for n, j in enumerate(pos) if u >> j & 1))
        return FinitePoset._from_up(keep, new_up)

    def without(self, *drop) -> "FinitePoset":
        dropped = set(drop)
        return self.subposet(e for e in self.elements if e not in dropped)

    def dual(self) -> "FinitePoset":
        n = len(self.elements)
        down = [0] * n
        for i, u in enumerate(self._up):
            for j in bits(u):
                down[j] |= 1 << i
        return FinitePoset._from_up(self.elements, down)

    def minimal(self) -> list:
        n = len(self.elements)
        has_below = 0
        for i in range(n):
            has_below |= self.strictly_above(i)
        return [e for i, e in enumerate(self.elements) if not has_below >> i & 1]

    def maximal(self) -> list:
        return [e for i, e in enumerate(self.elements) if not self.strictly_above(i)]

    def bottom(self):
        m = self.minimal()
        if len(m) == 1 and self._up[self.index[m[0]]] == (1 << len(self)) - 1:
            return m[0]
        return None

    def top(self):
        return self.dual().bottom()

    def cover_pairs(self) -> list[tuple]:
        out = []
        for i in range(len(self.elements)):
            above = self.strictly_above(i)
            for j in bits(above):
                if not any(self.strictly_above(k) >> j & 1 for k in bits(above) if k != j):
                    out.append((self.elements[i], self.elements[j]))
        return out

    def __repr__(self) -> str:
        return f"FinitePoset({len(self.elements)} elements)"


ORDER_COMPLEX_FACES = 2_000_000


def chain_count(p: FinitePoset) -> int:
    """Number of nonempty chains, by counting chains that start at each element."""
    n = len(p)
    starting = [0] * n
    # elements with larger up-sets come first in any linear extension
    for i in sorted(range(n), key=lambda i: popcount(p._up[i])):
        starting[i] = 1 + sum(starting[j] for j in bits(p.strictly_above(i)))
    return sum(starting)


def order_complex(p: FinitePoset) -> SimplicialComplex:
    """Complex of chains; vertices are the poset elements."""
    limit = face_limit() or ORDER_COMPLEX_FACES
    total = chain_count(p)
    if total > limit:
        raise EnumerationLimitError(
            f"order complex would have {total} faces, above {limit} (set HEMI_MAX_FACES to override)"
        )
    faces: list[int] = []

    def grow(chain: int, last: int) -> None:
        for j in bits(p.strictly_above(last)):
            c = chain | (1 << j)
            faces.append(c)
            grow(c, j)

    for i in range(len(p)):
        faces.append(1 << i)
        grow(1 << i, i)
    return SimplicialComplex.from_masks(p.elements, faces, check=False)


def face_poset(k: SimplicialComplex) -> FinitePoset:
    """Nonempty faces ordered by inclusion, labelled by frozensets of vertex labels."""
    masks = sorted(k.faces, key=lambda f: (popcount(f), f))
    elements = [k.labels_of(f) for f in masks]
    pos = {f: i for i, f in enumerate(masks)}
    up = [0] * len(masks)
    # walk upward through cofaces of codimension one, then close transitively
    cover = [0] * len(masks)
    n = len(k.labels)
    for f in masks:
        for v in range(n):
            if not f >> v & 1:
                g = f | (1 << v)
                if g in pos:
                    cover[pos[f]] |= 1 << pos[g]
    for i in reversed(range(len(masks))):
        u = 1 << i
        for j in bits(cover[i]):
            u |= up[j]
        up[i] = u
    return FinitePoset._from_up(elements, up)


def ordered_sum(p1: FinitePoset, p2: FinitePoset) -> FinitePoset:
    """Disjoint union with every element of ``p1`` below every element of ``p2``.

    Labels are tagged ``(0, x)`` / ``(1, y)`` when the two label sets meet.
    """
    e1, e2 = list(p1.elements), list(p2.elements)
    if set(e1) & set(e2):
        e1 = [(0, x) for x in e1]
        e2 = [(1, y) for y in e2]
    n1 = len(e1)
    all_two = sum(1 << (n1 + j) for j in range(len(e2)))
    up = [u | all_two for u in p1._up] + [u << n1 for u in p2._up]
    return FinitePoset._from_up(e1 + e2, up)


def poset_isomorphism(p: FinitePoset, q: FinitePoset) -> dict | None:
    """An order isomorphism p -> q as a dict, or None.

    Backtracking over elements sorted by (up-set size, down-set size), which
    any isomorphism must preserve.
    """
    if len(p) != len(q):
        return None
    n = len(p)

    def profile(x: FinitePoset) -> list[tuple[int, int]]:
        down = [0] * n
        for i, u in enumerate(x._up):
            for j in bits(u):
                down[j] += 1
        return [(popcount(x._up[i]), down[i]) for i in range(n)]

    pp, qp = profile(p), profile(q)
    if sorted(pp) != sorted(qp):
        return None
    order = sorted(range(n), key=lambda i: (pp[i], i))
    image = [-1] * n
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        for k in range(n):
            m = image[k]
            if m < 0:
                continue
            if (p._up[i] >> k & 1) != (q._up[j] >> m & 1):
                return False
            if (p._up[k] >> i & 1) != (q._up[m] >> j & 1):
                return False
        return True

    def extend(t: int) -> bool:
        if t == n:
            return True
        i = order[t]
        for j in range(n):
            if not used[j] and qp[j] == pp[i] and consistent(i, j):
                image[i], used[j] = j, True
                if extend(t + 1):
                    return True
                image[i], used[j] = -1, False
        return False

    if not extend(0):
        return None
    return {p.elements[i]: q.elements[image[i]] for i in range(n)}


def alexander_dual(k: SimplicialComplex, ground: Sequence | None = None) -> SimplicialComplex:
    """Combinatorial Alexander dual {I ⊆ ground : ground \\ I not a face}."""
    ground = tuple(k.labels) if ground is None else tuple(ground)
    missing = [v for v in k.labels if v not in set(ground)]
    if missing and any(k.mask([v]) in k.faces for v in missing):
        raise ValueError("complex uses vertices outside the ground set")
    m = len(ground)
    check_guard("alexander_dual ground set", m, 22)
    kidx = k._index
    # translate ground positions into the complex's bit positions
    trans = [1 << kidx[v] if v in kidx else 0 for v in ground]
    full = (1 << m) - 1

    def in_k(gmask: int) -> bool:
        if gmask == 0:
            return not k.void
        km = 0
        for b in bits(gmask):
            if not trans[b]:
                return False
            km |= trans[b]
        return km in k.faces

    if in_k(full):
        raise ValueError("Alexander dual of the full simplex is excluded")
    if all(in_k(full ^ (1 << b)) for b in range(m)):
        raise ValueError("Alexander dual of the simplex boundary is excluded")
    faces = [s for s in range(1, full + 1) if not in_k(full ^ s)]
    return SimplicialComplex.from_masks(ground, faces, check=False)


@dataclass(frozen=True)
class PseudomanifoldReport:
    pure: bool
    dim: int
    facet_count: int
    ridge_histogram: dict  # facets-per-ridge -> number of ridges
    pseudomanifold: bool  # pure, every ridge in one or two facets
    has_boundary: bool  # some ridge lies in exactly one facet

    @property
    def closed_pseudomanifold(self) -> bool:
        return self.pseudomanifold and not self.has_boundary


def classify_pseudomanifold(k: SimplicialComplex) -> PseudomanifoldReport:
    facets = k.facet_masks()
    sizes = {popcount(f) for f in facets}
    pure = len(sizes) <= 1
    if not pure:
        return PseudomanifoldReport(False, k.dim, len(facets), {}, False, False)
    count: Counter = Counter()
    for f in facets:
        for b in bits(f):
            r = f ^ (1 << b)
            if r:
                count[r] += 1
    hist = dict(sorted(Counter(count.values()).items()))
    pm = set(hist) <= {1, 2}
    return PseudomanifoldReport(True, k.dim, len(facets), hist, pm, pm and 1 in hist)
