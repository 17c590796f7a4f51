"""Command-line entry point: ``hemicover <group> <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arrangements import Arrangement, intersection_lattice
from .complexes import (
    EnumerationLimitError,
    SimplicialComplex,
    alexander_dual,
    classify_pseudomanifold,
    order_complex,
    reduced_homology,
)
from .digraphs import WeightedDAG, dag_complex, decode_vector, encode_dag, verify_identifications
from .exact import format_rational, parse_rational
from .gale import cycle_lattice, cycle_polytope_facets, gale_duality_check, minimal_nonfaces, nerve_complex
from .posets import (
    enumerate_orders,
    enumerate_preorders,
    enumerate_topologies,
    is_T0,
    poset_of_orders,
    poset_of_preorders,
    poset_of_t0_topologies,
    poset_of_topologies,
)
from .spheres import (
    Configuration,
    Subspace,
    bstel_complex,
    essentialize,
    halfspace_nerve,
    is_ample,
    is_antipodal,
    is_doubly_ample,
    quillen_fiber,
    stel_complex,
)
from .tda import hemisphere_cech_endpoints, hypercube, persistence, vr_filtration
from .verify import groups, run_suite, select, UnknownSelector


class UsageError(Exception):
    pass


def _load(path: str):
    return json.loads(Path(path).read_text())


def _complex_report(k: SimplicialComplex, homology: bool = True) -> dict:
    out = {"faces": len(k), "dim": k.dim, "f_vector": k.f_vector(), "complex": k.to_json()}
    if homology:
        out["homology"] = reduced_homology(k).to_json()
    return out


# sphere ----------------------------------------------------------------------


def cmd_sphere(args) -> dict:
    c = Configuration.from_json(_load(args.config))
    if args.command == "ample":
        e = essentialize(c)
        return {
            "essential_dim": e.dim,
            "ample": is_ample(c),
            "antipodal": is_antipodal(c),
            "doubly_ample": is_doubly_ample(e),
        }
    c = essentialize(c) if args.essentialize else c
    if args.command == "stel":
        return _complex_report(stel_complex(c))
    if args.command == "bstel":
        return _complex_report(bstel_complex(c))
    if not args.flat:
        raise UsageError("fiber needs --flat, a JSON list of spanning vectors")
    flat = Subspace.span(json.loads(args.flat), c.dim)
    fiber, nerve = quillen_fiber(c, flat), halfspace_nerve(c, flat)
    return {
        "flat": flat.to_json(),
        "fiber": _complex_report(fiber),
        "halfspace_nerve_equal": fiber.faces == nerve.faces,
    }


# arrangement -----------------------------------------------------------------


def cmd_arrangement(args) -> dict:
    a = Arrangement.from_json(_load(args.input))
    return intersection_lattice(a).to_json()


# dag -------------------------------------------------------------------------


def cmd_dag(args) -> dict:
    if args.command == "complex":
        k = dag_complex(args.n)
        out = _complex_report(k)
        out["pseudomanifold"] = vars(classify_pseudomanifold(k))
        return out
    if args.command == "verify":
        return vars(verify_identifications(args.n))
    if args.command == "encode":
        w = WeightedDAG.from_json(_load(args.input))
        return {"n": w.n, "vector": [format_rational(x) for x in encode_dag(w)]}
    if args.vector is not None:
        x = [parse_rational(v.strip()) for v in args.vector.split(",")]
    elif args.input:
        x = [parse_rational(v) for v in _load(args.input)["vector"]]
    else:
        raise UsageError("decode needs --vector or --input")
    return decode_vector(x).to_json()


# posets ----------------------------------------------------------------------

_KINDS = {
    "orders": (enumerate_orders, poset_of_orders),
    "preorders": (enumerate_preorders, poset_of_preorders),
    "topologies": (enumerate_topologies, poset_of_topologies),
    "t0": (lambda n: [t for t in enumerate_topologies(n) if is_T0(t)], poset_of_t0_topologies),
}


def cmd_posets(args) -> dict:
    enum, proper = _KINDS[args.kind]
    p = proper(args.n)
    return {
        "kind": args.kind,
        "n": args.n,
        "elements": len(enum(args.n)),
        "proper_elements": len(p),
        "homology": reduced_homology(order_complex(p)).to_json(),
    }


# gale ------------------------------------------------------------------------


def cmd_gale(args) -> dict:
    if args.command == "check":
        if args.config:
            r = gale_duality_check(Configuration.from_json(_load(args.config)))
            return {
                "doubly_ample": r.doubly_ample,
                "facet_sizes": r.facet_sizes,
                "dual_equals_stel": r.dual_equals_stel,
                "facets": [sorted(f, key=repr) for f in r.facets],
            }
        fi = cycle_polytope_facets(args.n)
        nerve = nerve_complex(fi)
        dag = dag_complex(args.n)
        return {
            "n": args.n,
            "facets": len(fi.facets),
            "minimal_nonfaces": len(minimal_nonfaces(dag)),
            "alexander_dual_equals_dag": alexander_dual(nerve, fi.vertices).faces == dag.faces,
            "nerve_homology": reduced_homology(nerve).to_json(),
        }
    if args.n >= 4 and not args.allow_large:
        raise UsageError("n >= 4 is slow; pass --allow-large")
    lat = cycle_lattice(args.n)
    p = lat.proper_part()
    out = {"n": args.n, "elements": len(lat.elements), "proper_elements": len(p), "generators": len(lat.generators)}
    if args.homology:
        out["homology"] = reduced_homology(order_complex(p)).to_json()
    return out


# tda -------------------------------------------------------------------------


def cmd_tda(args):
    if args.command == "cube":
        if args.n >= 4 and not args.allow_large:
            raise UsageError("n >= 4 is slow; pass --allow-large")
        # one dimension above the cube is enough for every degree up to n
        return persistence(vr_filtration(hypercube(args.n), args.n + 1)).to_json()
    _, _, report = hemisphere_cech_endpoints(Configuration.from_json(_load(args.config)))
    return report.to_json()


# verify ----------------------------------------------------------------------


def cmd_verify(args):
    try:
        select(args.selector, args.quick)
    except UnknownSelector as exc:
        raise UsageError(str(exc)) from exc
    code, reports = run_suite(args.selector, seed=args.seed, output=args.output, quick=args.quick)
    return [r.to_json() for r in reports], code


# output ----------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render_table(data) -> str:
    if isinstance(data, list) and data and all(isinstance(r, dict) for r in data):
        cols = list(dict.fromkeys(k for r in data for k in r))
        rows = [[_cell(r.get(c, "")) for c in cols] for r in data]
        widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
        line = lambda cells: "  ".join(s.ljust(w) for s, w in zip(cells, widths)).rstrip()
        return "\n".join([line(cols), line(["-" * w for w in widths]), *map(line, rows)])
    if isinstance(data, dict):
        width = max((len(k) for k in data), default=0)
        return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in data.items())
    return _cell(data)


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="table", action="store_false", help="JSON output (default)")
    g.add_argument("--table", dest="table", action="store_true", help="human-readable output")
    fmt.set_defaults(table=False)

    parser = argparse.ArgumentParser(prog="hemicover", description=__doc__)
    sub = parser.add_subparsers(dest="group", required=True)

    sp = sub.add_parser("sphere", parents=[fmt], help="constellation complexes of a configuration")
    sp.add_argument("command", choices=["stel", "bstel", "ample", "fiber"])
    sp.add_argument("--config", required=True, help="configuration JSON file")
    sp.add_argument("--flat", help="fiber: JSON list of vectors spanning the flat")
    sp.add_argument("--essentialize", action="store_true", help="project onto the span first")
    sp.set_defaults(func=cmd_sphere)

    ap = sub.add_parser("arrangement", parents=[fmt], help="intersection lattices")
    ap.add_argument("command", choices=["lattice"])
    ap.add_argument("--input", required=True, help='JSON file {"normals": [[...], ...]}')
    ap.set_defaults(func=cmd_arrangement)

    dp = sub.add_parser("dag", parents=[fmt], help="acyclic digraph complexes")
    dp.add_argument("command", choices=["complex", "verify", "encode", "decode"])
    dp.add_argument("--n", type=int, default=3)
    dp.add_argument("--input", help="encode: weighted DAG JSON; decode: {\"vector\": [...]}")
    dp.add_argument("--vector", help="decode: comma-separated rationals summing to zero")
    dp.set_defaults(func=cmd_dag)

    pp = sub.add_parser("posets", parents=[fmt], help="orders, preorders and topologies")
    pp.add_argument("command", choices=["homology"])
    pp.add_argument("--kind", choices=sorted(_KINDS), required=True)
    pp.add_argument("--n", type=int, default=3)
    pp.set_defaults(func=cmd_posets)

    gp = sub.add_parser("gale", parents=[fmt], help="nerve-complexes and cycle lattices")
    gp.add_argument("command", choices=["check", "cycle-lattice"])
    gp.add_argument("--n", type=int, default=3)
    gp.add_argument("--config", help="check: doubly ample configuration JSON instead of the cycle polytope")
    gp.add_argument("--homology", action="store_true")
    gp.add_argument("--allow-large", action="store_true")
    gp.set_defaults(func=cmd_gale)

    tp = sub.add_parser("tda", parents=[fmt], help="filtrations and persistence")
    tp.add_argument("command", choices=["cube", "sphere-endpoints"])
    tp.add_argument("--n", type=int, default=3)
    tp.add_argument("--config")
    tp.add_argument("--allow-large", action="store_true")
    tp.set_defaults(func=cmd_tda)

    vp = sub.add_parser("verify", parents=[fmt], help="run registered checks")
    vp.add_argument("selector", help=f"'all', a group ({', '.join(groups())}), a claim id or a glob")
    vp.add_argument("--quick", action="store_true", help="skip the slowest instances")
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--output", help="also write the report array to this file")
    vp.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    code = 0
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (ValueError, EnumerationLimitError, OSError) as exc:
        print(f"hemicover: error: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, tuple):
        result, code = result
    print(render_table(result) if args.table else json.dumps(result, indent=2, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
