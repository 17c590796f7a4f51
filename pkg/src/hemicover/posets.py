"""Orders, preorders and finite topologies on [n], and Galois connections."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .complexes import FinitePoset, bits, check_guard, face_poset
from .digraphs import Digraph, dag_complex, disds_complex

__all__ = [
    "Relation",
    "FiniteTopology",
    "transitive_closure",
    "strict_digraph",
    "enumerate_orders",
    "enumerate_preorders",
    "enumerate_topologies",
    "poset_of_orders",
    "poset_of_preorders",
    "poset_of_topologies",
    "poset_of_t0_topologies",
    "GaloisResult",
    "galois_check",
    "topology_from_preorder",
    "preorder_from_topology",
    "is_T0",
    "orders_dag_connection",
    "preorders_disds_connection",
]


@dataclass(frozen=True)
class Relation:
    """Binary relation on [n] as an n*n bit matrix; bit (i-1)*n + (j-1) is i R j."""

    n: int
    mask: int

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        m = 0
        for i, j in pairs:
            m |= 1 << ((i - 1) * n + (j - 1))
        return cls(n, m)

    @classmethod
    def diagonal(cls, n: int) -> "Relation":
        return cls.from_pairs(n, ((i, i) for i in range(1, n + 1)))

    @classmethod
    def full(cls, n: int) -> "Relation":
        return cls(n, (1 << (n * n)) - 1)

    def holds(self, i: int, j: int) -> bool:
        return bool(self.mask >> ((i - 1) * self.n + (j - 1)) & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(b // self.n + 1, b % self.n + 1) for b in bits(self.mask)]

    def __le__(self, other: "Relation") -> bool:
        return self.mask & ~other.mask == 0

    def is_reflexive(self) -> bool:
        return all(self.holds(i, i) for i in range(1, self.n + 1))

    def is_transitive(self) -> bool:
        r = range(1, self.n + 1)
        return all(
            self.holds(i, k) for i in r for j in r if self.holds(i, j) for k in r if self.holds(j, k)
        )

    def is_antisymmetric(self) -> bool:
        return not any(self.holds(i, j) and self.holds(j, i) for i, j in self.pairs() if i != j)

    def is_preorder(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def is_order(self) -> bool:
        return self.is_preorder() and self.is_antisymmetric()

    def __repr__(self) -> str:
        off = [p for p in self.pairs() if p[0] != p[1]]
        return f"Relation(n={self.n}, {off})"


@dataclass(frozen=True)
class FiniteTopology:
    """Opens as bitmasks over [n] (bit v-1 is the point v)."""

    n: int
    opens: frozenset

    def __post_init__(self):
        full = (1 << self.n) - 1
        ops = frozenset(self.opens)
        if 0 not in ops or full not in ops:
            raise ValueError("a topology contains the empty set and the whole set")
        for a in ops:
            for b in ops:
                if a | b not in ops or a & b not in ops:
                    raise ValueError("opens not closed under union and intersection")
        object.__setattr__(self, "opens", ops)

    def __le__(self, other: "FiniteTopology") -> bool:
        """Coarser-or-equal: every open here is open there."""
        return self.opens <= other.opens

    def minimal_neighbourhood(self, x: int) -> int:
        u = (1 << self.n) - 1
        for o in self.opens:
            if o >> (x - 1) & 1:
                u &= o
        return u

    def __repr__(self) -> str:
        return f"FiniteTopology(n={self.n}, opens={sorted(self.opens)})"


def transitive_closure(g: Digraph) -> Relation:
    """Smallest preorder containing the edges (Warshall)."""
    n = g.n
    reach = [[i == j for j in range(n)] for i in range(n)]
    for i, j in g.edges:
        reach[i - 1][j - 1] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                rk = reach[k]
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return Relation.from_pairs(n, ((i + 1, j + 1) for i in range(n) for j in range(n) if reach[i][j]))


def strict_digraph(r: Relation) -> Digraph:
    if not r.is_preorder():
        raise ValueError("not a preorder")
    return Digraph(r.n, frozenset((i, j) for i, j in r.pairs() if i != j))


def _off_diagonal_bits(n: int) -> list[int]:
    return [(i * n + j) for i in range(n) for j in range(n) if i != j]


def enumerate_preorders(n: int) -> list[Relation]:
    """All preorders on [n], by filtering every off-diagonal pattern."""
    check_guard("enumerate_preorders n", n, 4)
    diag = Relation.diagonal(n).mask
    off = _off_diagonal_bits(n)
    out = []
    for code in range(1 << len(off)):
        m = diag
        for k, b in enumerate(off):
            if code >> k & 1:
                m |= 1 << b
        r = Relation(n, m)
        if r.is_transitive():
            out.append(r)
    return sorted(out, key=lambda r: r.mask)


def enumerate_orders(n: int) -> list[Relation]:
    return [r for r in enumerate_preorders(n) if r.is_antisymmetric()]


def enumerate_topologies(n: int) -> list[FiniteTopology]:
    """All topologies on [n] by brute force over families of subsets."""
    check_guard("enumerate_topologies n", n, 4)
    full = (1 << n) - 1
    middle = list(range(1, full))
    out = []
    for code in range(1 << len(middle)):
        fam = {0, full} | {s for k, s in enumerate(middle) if code >> k & 1}
        if all(a | b in fam and a & b in fam for a in fam for b in fam):
            out.append(FiniteTopology(n, frozenset(fam)))
    return out


def poset_of_orders(n: int, remove_bottom: bool = True) -> FinitePoset:
    """Orders on [n] under inclusion, by default without the trivial order."""
    els = enumerate_orders(n)
    p = FinitePoset(els, lambda a, b: a <= b)
    return p.without(Relation.diagonal(n)) if remove_bottom else p


def poset_of_preorders(n: int, proper: bool = True) -> FinitePoset:
    """Preorders on [n] under inclusion, by default without the trivial and full ones."""
    els = enumerate_preorders(n)
    p = FinitePoset(els, lambda a, b: a <= b)
    return p.without(Relation.diagonal(n), Relation.full(n)) if proper else p


def _discrete(n: int) -> FiniteTopology:
    return FiniteTopology(n, frozenset(range(1 << n)))


def _indiscrete(n: int) -> FiniteTopology:
    return FiniteTopology(n, frozenset({0, (1 << n) - 1}))


def poset_of_topologies(n: int, proper: bool = True) -> FinitePoset:
    """Topologies ordered by strength; ``proper`` drops the indiscrete and discrete ones."""
    els = enumerate_topologies(n)
    p = FinitePoset(els, lambda a, b: a <= b)
    return p.without(_indiscrete(n), _discrete(n)) if proper else p


def poset_of_t0_topologies(n: int, remove_top: bool = True) -> FinitePoset:
    """T0 topologies by strength; only the discrete topology is removed."""
    els = [t for t in enumerate_topologies(n) if is_T0(t)]
    p = FinitePoset(els, lambda a, b: a <= b)
    return p.without(_discrete(n)) if remove_top else p


def topology_from_preorder(r: Relation) -> FiniteTopology:
    """Alexandrov topology: the opens are the upper sets."""
    if not r.is_preorder():
        raise ValueError("not a preorder")
    n = r.n
    up = [0] * n
    for i, j in r.pairs():
        up[i - 1] |= 1 << (j - 1)
    opens = frozenset(s for s in range(1 << n) if all(up[v] & ~s == 0 for v in bits(s)))
    return FiniteTopology(n, opens)


def preorder_from_topology(t: FiniteTopology) -> Relation:
    """x <= y iff U_x contains U_y, U_x being the least open neighbourhood."""
    u = {x: t.minimal_neighbourhood(x) for x in range(1, t.n + 1)}
    return Relation.from_pairs(
        t.n,
        ((x, y) for x in u for y in u if u[y] & ~u[x] == 0),
    )


def is_T0(t: FiniteTopology) -> bool:
    return preorder_from_topology(t).is_antisymmetric()


@dataclass
class GaloisResult:
    ok: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def galois_check(S: FinitePoset, T: FinitePoset, f: Mapping, g: Mapping) -> GaloisResult:
    """Check that f: S -> T, g: T -> S form a Galois connection (f left adjoint).

    Verifies monotonicity of both maps, g(f(s)) <= s and f(g(t)) >= t, the
    adjunction f(s) >= t <=> s >= g(t), and f g f = f, g f g = g.
    """
    for a in S:
        if f[a] not in T.index:
            return GaloisResult(False, f"f({a!r}) = {f[a]!r} is not in T")
    for b in T:
        if g[b] not in S.index:
            return GaloisResult(False, f"g({b!r}) = {g[b]!r} is not in S")
    for a, b in S.cover_pairs():
        if not T.leq(f[a], f[b]):
            return GaloisResult(False, f"f not monotone on {a!r} <= {b!r}")
    for a, b in T.cover_pairs():
        if not S.leq(g[a], g[b]):
            return GaloisResult(False, f"g not monotone on {a!r} <= {b!r}")
    for s in S:
        if not S.leq(g[f[s]], s):
            return GaloisResult(False, f"g(f(s)) not below s for s = {s!r}")
        if f[g[f[s]]] != f[s]:
            return GaloisResult(False, f"fgf != f at {s!r}")
    for t in T:
        if not T.leq(t, f[g[t]]):
            return GaloisResult(False, f"f(g(t)) not above t for t = {t!r}")
        if g[f[g[t]]] != g[t]:
            return GaloisResult(False, f"gfg != g at {t!r}")
    for s in S:
        for t in T:
            if T.leq(t, f[s]) != S.leq(g[t], s):
                return GaloisResult(False, f"adjunction fails at s = {s!r}, t = {t!r}")
    return GaloisResult(True)


def _connection(S: FinitePoset, complex_faces: FinitePoset, n: int):
    f = {r: strict_digraph(r).edges for r in S}
    g = {e: transitive_closure(Digraph(n, e)) for e in complex_faces}
    return S, complex_faces, f, g


def orders_dag_connection(n: int):
    """(Pos_n^*, nonempty DAG_n faces, d, p) ready for :func:`galois_check`."""
    return _connection(poset_of_orders(n), face_poset(dag_complex(n)), n)


def preorders_disds_connection(n: int):
    """(PrePos_n^*, nonempty DisDS_n faces, d, p) ready for :func:`galois_check`."""
    return _connection(poset_of_preorders(n), face_poset(disds_complex(n)), n)
