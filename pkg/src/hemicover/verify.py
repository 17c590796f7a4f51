"""Registry of quantitative checks and the runner behind ``hemicover verify``.

Each claim computes a JSON-ready value and compares it with its expected
value by plain equality.  Claim ids look like ``group/instance``; a selector
is ``all``, a group name, an exact id, or a glob over ids.
"""
from __future__ import annotations

import fnmatch
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Callable

from .arrangements import (
    braid_arrangement,
    config_from_arrangement,
    intersection_lattice,
    mobius_invariant,
    proper_dual_poset,
    quillen_map_check,
    random_arrangement,
)
from .complexes import (
    alexander_dual,
    classify_pseudomanifold,
    order_complex,
    poset_isomorphism,
    reduced_homology,
)
from .digraphs import (
    dag_complex,
    decode_vector,
    disds_complex,
    disds_facets,
    encode_dag,
    is_acyclic,
    root_system,
    verify_identifications,
)
from .exact import format_rational
from .gale import cycle_lattice, cycle_polytope_facets, minimal_nonfaces, nerve_complex
from .posets import (
    enumerate_orders,
    enumerate_preorders,
    galois_check,
    orders_dag_connection,
    poset_of_orders,
    poset_of_preorders,
    poset_of_t0_topologies,
    poset_of_topologies,
    preorders_disds_connection,
    strict_digraph,
    transitive_closure,
)
from .spheres import Configuration, Subspace, bstel_complex, essentialize, halfspace_nerve
from .tda import hemisphere_cech_endpoints, hypercube, persistence, vr_filtration

__all__ = ["Claim", "VerificationReport", "CLAIMS", "select", "run_claims", "run_suite", "UnknownSelector"]


class UnknownSelector(ValueError):
    pass


@dataclass(frozen=True)
class Claim:
    id: str
    expected: Any
    compute: Callable[[int], Any]  # seed -> computed value
    quick: bool = True
    note: str | None = None


@dataclass
class VerificationReport:
    claim: str
    expected: Any
    computed: Any
    passed: bool
    wall_time: float
    note: str | None = None
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
            "wall_time": round(self.wall_time, 4),
        }
        if self.note:
            out["note"] = self.note
        if self.error:
            out["error"] = self.error
        return out


def betti(k) -> dict:
    """Nonzero reduced Betti numbers with string degrees, plus torsion if any."""
    h = reduced_homology(k)
    out: dict = {str(d): b for d, b in sorted(h.concentrated().items())}
    if not h.torsion_free:
        out["torsion"] = [list(t) for t in h.torsion]
    return out


def sphere(degree: int, count: int = 1) -> dict:
    return {str(degree): count}


def seeded_arrangements(seed: int) -> dict:
    rng = random.Random(seed)
    out = {"braid-3": braid_arrangement(3), "braid-4": braid_arrangement(4)}
    for i in range(3):
        out[f"random-{i}"] = random_arrangement(rng, dim=3, max_hyperplanes=6)
    return out


def nonantipodal_plane() -> tuple[Configuration, Subspace]:
    """Five rays in the plane; the line through (1, 1) carries only one of them."""
    c = Configuration(((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)))
    return c, Subspace.span([(1, 1)], 2)


# claim builders --------------------------------------------------------------


def _arrangement_claims() -> list[Claim]:
    out = []
    for n, quick in ((3, True), (4, True), (5, True), (6, False)):
        out.append(
            Claim(
                f"braid-mobius/n={n}",
                factorial(n - 1),
                lambda s, n=n: mobius_invariant(intersection_lattice(braid_arrangement(n))),
                quick,
            )
        )
    for name in ("braid-3", "braid-4", "random-0", "random-1", "random-2"):

        def lattice_wedge(s, name=name):
            a = seeded_arrangements(s)[name]
            lat = intersection_lattice(a)
            mu = mobius_invariant(lat)
            return {"mobius": mu, "betti": betti(order_complex(proper_dual_poset(lat)))}

        def lattice_expected(s, name=name):
            a = seeded_arrangements(s)[name]
            mu = mobius_invariant(intersection_lattice(a))
            return {"mobius": mu, "betti": sphere(a.dim - 2, mu)}

        def bstel_wedge(s, name=name):
            a = seeded_arrangements(s)[name]
            mu = mobius_invariant(intersection_lattice(a))
            return {"mobius": mu, "betti": betti(bstel_complex(config_from_arrangement(a)))}

        def bstel_expected(s, name=name):
            a = seeded_arrangements(s)[name]
            mu = mobius_invariant(intersection_lattice(a))
            return {"mobius": mu, "betti": sphere(2 * a.dim - 2, mu)}

        out.append(Claim(f"lattice-wedge/{name}", lattice_expected, lattice_wedge))
        out.append(Claim(f"bstel-wedge/{name}", bstel_expected, bstel_wedge))
    for n, quick in ((3, True), (4, False)):

        def fibers(s, n=n):
            r = quillen_map_check(config_from_arrangement(braid_arrangement(n)))
            return {
                "well_defined": r.well_defined,
                "monotone": r.monotone,
                "fibers_acyclic": all(a for _, a, _ in r.fibers),
                "fibers_equal_nerves": all(e for _, _, e in r.fibers),
                "flats": r.flats,
            }

        flats = {3: 3, 4: 13}[n]
        out.append(
            Claim(
                f"quillen-fibers/braid-{n}",
                {"well_defined": True, "monotone": True, "fibers_acyclic": True, "fibers_equal_nerves": True, "flats": flats},
                fibers,
                quick,
            )
        )
    return out


def _digraph_claims() -> list[Claim]:
    out = []
    for n, quick in ((3, True), (4, True), (5, False)):
        out.append(Claim(f"dag-homology/n={n}", sphere(n - 2), lambda s, n=n: betti(dag_complex(n)), quick))
    for n in (3, 4):
        out.append(
            Claim(
                f"disds-homology/n={n}",
                sphere(2 * n - 4, factorial(n - 1)),
                lambda s, n=n: betti(disds_complex(n)),
            )
        )
    for n in (3, 4):

        def ident(s, n=n):
            r = verify_identifications(n)
            return {"dag=stel": r.dag_equals_stel, "disds=bstel": r.disds_equals_bstel}

        out.append(Claim(f"identification/n={n}", {"dag=stel": True, "disds=bstel": True}, ident))
    for n, quick in ((3, True), (4, True), (5, False)):

        def pm(s, n=n):
            r = classify_pseudomanifold(dag_complex(n))
            return {
                "pure": r.pure,
                "dim": r.dim,
                "facets": r.facet_count,
                "max_ridge_degree": max(r.ridge_histogram),
                "with_boundary": r.pseudomanifold,
            }

        out.append(
            Claim(
                f"dag-pseudomanifold/n={n}",
                {"pure": True, "dim": (n + 1) * (n - 2) // 2, "facets": factorial(n), "max_ridge_degree": 2, "with_boundary": True},
                pm,
                quick,
            )
        )
    for n in (3, 4):

        def facets(s, n=n):
            k = disds_complex(n)
            found = set(k.facets())
            formula = set(disds_facets(n))
            return {"count": len(found), "match_formula": found == formula, "pure": classify_pseudomanifold(k).pure}

        out.append(
            Claim(
                f"disds-facets/n={n}",
                {"count": 2**n - 2, "match_formula": True, "pure": n == 3},
                facets,
                note="n = 3 is pure: every split has |A1||A2| = 2" if n == 3 else None,
            )
        )

    def encode_decode(s):
        rng = random.Random(s)
        ok, acyclic = 0, 0
        for _ in range(100):
            n = rng.randint(3, 6)
            x = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(n - 1)]
            x.append(-sum(x))
            if not any(x):
                x = [Fraction(1), Fraction(-1)] + [Fraction(0)] * (n - 2)
            w = decode_vector(x)
            acyclic += is_acyclic(w.digraph)
            ok += encode_dag(w) == tuple(n * v for v in x)
        return {"identity": ok, "acyclic": acyclic}

    out.append(Claim("encode-decode/random-100", {"identity": 100, "acyclic": 100}, encode_decode))
    return out


def _poset_claims() -> list[Claim]:
    out = [
        Claim("bouc/orders-count-n=3", 19, lambda s: len(enumerate_orders(3))),
        Claim("bouc/preorders-count-n=3", 29, lambda s: len(enumerate_preorders(3))),
        Claim("bouc/orders-homology-n=3", sphere(1), lambda s: betti(order_complex(poset_of_orders(3)))),
        Claim("bouc/preorders-homology-n=3", sphere(2, 2), lambda s: betti(order_complex(poset_of_preorders(3)))),
        Claim(
            "bouc/topologies-isomorphic-preorders-n=3",
            True,
            lambda s: poset_isomorphism(poset_of_preorders(3, proper=False), poset_of_topologies(3, proper=False)) is not None,
        ),
        Claim("bouc/topologies-homology-n=3", sphere(2, 2), lambda s: betti(order_complex(poset_of_topologies(3)))),
        Claim("bouc/t0-homology-n=3", sphere(1), lambda s: betti(order_complex(poset_of_t0_topologies(3)))),
    ]

    def adjudicate(s):
        return {
            "statement_single_sphere": sphere(1),
            "statement_wedge": sphere(2, 2),
            "computed": betti(order_complex(poset_of_preorders(3))),
        }

    out.append(
        Claim(
            "prepos-adjudication/n=3",
            {"statement_single_sphere": sphere(1), "statement_wedge": sphere(2, 2), "computed": sphere(2, 2)},
            adjudicate,
            note="proper preorders on 3 points: a wedge of (n-1)! spheres of dimension 2n-4, not one sphere of dimension n-2",
        )
    )

    def galois(s, which):
        S, T, f, g = orders_dag_connection(3) if which == "orders" else preorders_disds_connection(3)
        r = galois_check(S, T, f, g)
        return {"ok": r.ok, "witness": r.witness}

    out.append(Claim("galois/orders-dag-n=3", {"ok": True, "witness": None}, lambda s: galois(s, "orders")))
    out.append(Claim("galois/preorders-disds-n=3", {"ok": True, "witness": None}, lambda s: galois(s, "preorders")))
    out.append(
        Claim(
            "galois/closure-of-strict-part-n=3",
            True,
            lambda s: all(transitive_closure(strict_digraph(r)) == r for r in enumerate_orders(3)),
        )
    )
    return out


def _gale_claims() -> list[Claim]:
    out = []
    for n, mnf in ((3, 5), (4, 20)):

        def dual(s, n=n):
            fi = cycle_polytope_facets(n)
            return alexander_dual(nerve_complex(fi), fi.vertices).faces == dag_complex(n).faces

        out.append(Claim(f"gale/alexander-dual-n={n}", True, dual))
        out.append(Claim(f"gale/minimal-nonfaces-n={n}", mnf, lambda s, n=n: len(minimal_nonfaces(dag_complex(n)))))
    out.append(Claim("gale/nerve-homology-n=3", sphere(2), lambda s: betti(nerve_complex(cycle_polytope_facets(3)))))

    def lattice3(s):
        p = cycle_lattice(3).proper_part()
        return {"elements": len(p), "betti": betti(order_complex(p))}

    out.append(Claim("gale/cycle-lattice-n=3", {"elements": 20, "betti": sphere(2)}, lattice3))
    return out


def _tda_claims() -> list[Claim]:
    def cube(s):
        d = persistence(vr_filtration(hypercube(3), 4))
        finite = {}
        for b in d.bars:
            if b.degree >= 1:
                key = f"{b.degree}:[{format_rational(b.birth)},{'inf' if b.death is None else format_rational(b.death)})"
                finite[key] = finite.get(key, 0) + 1
        return finite

    def endpoints(s):
        _, _, r = hemisphere_cech_endpoints(essentialize(root_system(4)))
        return {"stel": {str(k): v for k, v in r.stel_betti.items()}, "bstel": {str(k): v for k, v in r.bstel_betti.items()}, "mobius": r.mobius}

    def nonantipodal(s):
        c, flat = nonantipodal_plane()
        return betti(halfspace_nerve(c, flat))

    return [
        Claim("hypercube-persistence/n=3", {"1:[4,8)": 5, "3:[8,12)": 1}, cube),
        Claim("hemisphere-endpoints/A3", {"stel": sphere(2), "bstel": sphere(4, 6), "mobius": 6}, endpoints),
        Claim("nonantipodal-fiber/plane-5", sphere(1), nonantipodal),
    ]


CLAIMS: list[Claim] = sorted(
    _arrangement_claims() + _digraph_claims() + _poset_claims() + _gale_claims() + _tda_claims(),
    key=lambda c: c.id,
)


def groups() -> list[str]:
    return sorted({c.id.split("/")[0] for c in CLAIMS})


def select(selector: str, quick: bool = False) -> list[Claim]:
    if selector == "all":
        picked = list(CLAIMS)
    else:
        picked = [
            c
            for c in CLAIMS
            if c.id == selector or c.id.split("/")[0] == selector or fnmatch.fnmatchcase(c.id, selector)
        ]
        if not picked:
            raise UnknownSelector(f"no claim matches {selector!r}; groups: {', '.join(groups())}")
    if quick:
        picked = [c for c in picked if c.quick]
    return picked


def _jsonable(v):
    return json.loads(json.dumps(v, default=str))


def run_claims(claims: list[Claim], seed: int = 0) -> list[VerificationReport]:
    out = []
    for c in claims:
        t0 = time.perf_counter()
        expected = computed = error = None
        try:
            expected = c.expected(seed) if callable(c.expected) else c.expected
            computed = c.compute(seed)
        except Exception as exc:  # a crashing check is a failed check
            error = f"{type(exc).__name__}: {exc}"
        expected, computed = _jsonable(expected), _jsonable(computed)
        out.append(
            VerificationReport(
                c.id,
                expected,
                computed,
                error is None and expected == computed,
                time.perf_counter() - t0,
                c.note,
                error,
            )
        )
    return out


def run_suite(selector: str, seed: int = 0, output: str | None = None, quick: bool = False) -> tuple[int, list[VerificationReport]]:
    """Run matching claims; exit code 0 if all pass, 1 on a failure, 2 on a bad selector."""
    try:
        claims = select(selector, quick)
    except UnknownSelector:
        return 2, []
    reports = run_claims(claims, seed)
    if output:
        with open(output, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2)
            fh.write("\n")
    return (0 if all(r.passed for r in reports) else 1), reports
