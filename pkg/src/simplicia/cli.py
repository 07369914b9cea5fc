"""Command-line interface: construct, inspect, transform, persist."""

from __future__ import annotations

import argparse
import json
import sys

from . import generators
from .bistellar import ReductionOptions, bistellarly_equivalent, randomize, reduce
from .blowup import ResolutionBlock, blowup
from .complex import Complex, SimplicialError
from .invariants import euler_characteristic, homology
from .slicing import NormalSurface, VertexPartition, ns_triangulation, slicing, surface_type
from .store import (
    SCHEMA_VERSION,
    DocumentError,
    default_library,
    dumps_document,
    export,
    load,
    load_document,
    save,
    to_document,
)


def _write_ns(ns: NormalSurface, path):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "normal_surface",
        "name": ns.name,
        "vertices": [list(v) for v in ns.vertices],
        "edges": [list(e) for e in ns.edges],
        "triangles": [list(t) for t in ns.triangles],
        "quads": [list(q) for q in ns.quads],
        "labels": list(ns.labels),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _read_ns(path) -> NormalSurface:
    doc = load_document(path)
    if doc.get("kind") != "normal_surface":
        raise DocumentError("%s: not a normal-surface document" % path)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError("unsupported schema_version %r" % doc.get("schema_version"))
    return NormalSurface(
        tuple(tuple(v) for v in doc["vertices"]),
        tuple(tuple(e) for e in doc["edges"]),
        tuple(tuple(t) for t in doc["triangles"]),
        tuple(tuple(q) for q in doc["quads"]),
        tuple(doc["labels"]),
        doc.get("name", ""),
    )


def _cmd_construct(args):
    kind = args.family
    if kind == "simplex":
        c = generators.simplex(args.d)
    elif kind == "bdsimplex":
        c = generators.boundary_simplex(args.d)
    elif kind == "cross":
        c = generators.cross_polytope(args.d)
    elif kind == "cyclic":
        if args.n is None:
            raise SimplicialError("cyclic requires -n")
        c = generators.cyclic_polytope_boundary(args.d, args.n)
    elif kind == "stacked":
        if args.n is None:
            raise SimplicialError("stacked requires -n")
        c = generators.stacked_sphere(args.d, args.n, seed=args.seed)
    else:  # pragma: no cover - argparse restricts choices
        raise SimplicialError("unknown family %r" % kind)
    c.f_vector()
    euler_characteristic(c)
    c.flags()
    save(c, args.output)
    print("%s -> %s" % (c.name or kind, args.output))
    return 0


def _info_payload(c: Complex):
    payload = {
        "name": c.name,
        "dim": c.dim,
        "f_vector": c.f_vector(),
        "chi": euler_characteristic(c),
        "n_vertices": c.n_vertices,
        "flags": c.flags(),
    }
    for key in ("homology", "topological_type"):
        if c.cache_get(key) is not None:
            value = c.cache_get(key)
            if key == "homology":
                value = [[b, list(t)] for b, t in value]
            payload[key] = value
    return payload


def _cmd_info(args):
    c = load(args.file, strict=args.strict)
    payload = _info_payload(c)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
        return 0
    print("Name=%s" % (payload["name"] or "(unnamed)"))
    print("Dim=%d" % payload["dim"])
    print("F=%s" % payload["f_vector"])
    print("Chi=%d" % payload["chi"])
    for flag, value in sorted(payload["flags"].items()):
        print("%s=%s" % (flag, value))
    if "homology" in payload:
        print("Homology=%s" % payload["homology"])
    if "topological_type" in payload:
        print("TopologicalType=%s" % payload["topological_type"])
    return 0


def _cmd_homology(args):
    c = load(args.file)
    h = homology(c)
    if args.json:
        print(json.dumps(h.to_lists()))
    else:
        print("Homology=%s" % h.to_lists())
    return 0


def _cmd_flags(args):
    c = load(args.file)
    for flag, value in sorted(c.flags().items()):
        print("%s=%s" % (flag, value))
    return 0


def _cmd_reduce(args):
    c = load(args.file)
    opts = ReductionOptions(rounds=args.rounds, seed=args.seed)
    result = reduce(c, opts)
    save(result.complex, args.output,
         move_log=[(m.a, m.b) for m in result.moves])
    print("F=%s" % result.complex.f_vector())
    print("moves=%d converged=%s" % (len(result.moves), result.converged))
    return 0


def _cmd_randomize(args):
    c = load(args.file)
    result = randomize(c, args.moves, seed=args.seed)
    save(result.complex, args.output,
         move_log=[(m.a, m.b) for m in result.moves])
    print("F=%s applied=%d" % (result.complex.f_vector(), result.applied))
    return 0


def _cmd_equivalent(args):
    c1 = load(args.file1)
    c2 = load(args.file2)
    opts = ReductionOptions(rounds=args.rounds, seed=args.seed)
    verdict = bistellarly_equivalent(c1, c2, opts)
    print("equivalent" if verdict else "not established")
    return 0


def _cmd_slice(args):
    c = load(args.file)
    try:
        part_a, part_b = args.sides.split("/")
        side_a = [int(x) for x in part_a.split(",") if x]
        side_b = [int(x) for x in part_b.split(",") if x]
    except ValueError as err:
        raise SimplicialError("cannot parse --sides %r: %s" % (args.sides, err))
    partition = VertexPartition.of(c, side_a, side_b)
    ns = slicing(c, partition)
    print("F=%s" % ns.f_vector())
    print("Chi=%d" % ns.euler_characteristic())
    print("TopologicalType=%s" % surface_type(ns).descriptor)
    if args.output:
        _write_ns(ns, args.output)
    return 0


def _cmd_nstriangulate(args):
    ns = _read_ns(args.file)
    tri = ns_triangulation(ns)
    save(tri, args.output)
    print("F=%s" % tri.f_vector())
    return 0


def _cmd_blowup(args):
    c = load(args.file)
    if args.block:
        block_complex = load(args.block)
        block = ResolutionBlock(block_complex, provenance=args.block)
    else:
        lib = default_library()
        hits = lib.search_name("resolution block")
        if not hits:
            raise SimplicialError("no resolution block in the library; pass --block")
        block = ResolutionBlock(hits[0].complex, provenance=hits[0].name)
    stream = sys.stderr if args.log else None
    opts = ReductionOptions(seed=args.seed)
    result = blowup(c, args.vertex, block, opts=opts, log_stream=stream)
    save(result, args.output)
    print("F=%s" % result.f_vector())
    print("Chi=%d" % euler_characteristic(result))
    return 0


def _cmd_lib(args):
    lib = default_library()
    if args.action != "search":
        raise SimplicialError("unknown lib action %r" % args.action)
    hits = lib.search(args.query)
    for entry in hits:
        print("%s  dim=%d f=%s" % (entry.name, entry.dim, entry.properties["f_vector"]))
    if not hits:
        print("(no matches)", file=sys.stderr)
    return 0


def _cmd_export(args):
    c = load(args.file)
    sys.stdout.write(export(c, args.format))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="simplicia",
        description="simplicial complexes: construct, analyze, transform",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="generate a standard triangulation")
    p.add_argument("family", choices=["simplex", "bdsimplex", "cross", "cyclic", "stacked"])
    p.add_argument("-d", type=int, required=True, help="dimension")
    p.add_argument("-n", type=int, help="vertex count (cyclic, stacked)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("info", help="print basic properties")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--strict", action="store_true",
                   help="validate cached properties against recomputation")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("homology", help="integral homology profile")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("flags", help="structural flags")
    p.add_argument("file")
    p.set_defaults(func=_cmd_flags)

    p = sub.add_parser("reduce", help="bistellar vertex-count reduction")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=5000)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("randomize", help="apply random bistellar moves")
    p.add_argument("file")
    p.add_argument("--moves", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_randomize)

    p = sub.add_parser("equivalent", help="bistellar equivalence heuristic")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=5000)
    p.set_defaults(func=_cmd_equivalent)

    p = sub.add_parser("slice", help="normal surface of a vertex bipartition")
    p.add_argument("file")
    p.add_argument("--sides", required=True, help="A/B, e.g. 1,3,5/2,4,6")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_slice)

    p = sub.add_parser("nstriangulate", help="triangulate a normal surface")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_nstriangulate)

    p = sub.add_parser("blowup", help="resolve an ordinary double point")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--block", help="resolution block document (default: library)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--log", action="store_true", help="JSON-line phases on stderr")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_blowup)

    p = sub.add_parser("lib", help="query the fixture library")
    p.add_argument("action", choices=["search"])
    p.add_argument("query")
    p.set_defaults(func=_cmd_lib)

    p = sub.add_parser("export", help="export as LaTeX or TOPAZ text")
    p.add_argument("file")
    p.add_argument("--format", choices=["latex", "topaz"], required=True)
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SimplicialError, DocumentError, OSError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
