"""Command-line front end: enumeration dumps, graph exports, catalogs and verification."""

from __future__ import annotations

import argparse
import json
import sys

from .cliques import maximal_cliques
from .errors import CeilingExceeded
from .grassmann import Ambient, gaussian_binomial
from .pairs import DEFAULT_PAIR_CEILING, Kind, Relation, RelationGraph, build_graph, enumerate_pairs
from .transforms import DEFAULT_CATALOG_CEILING, catalog, catalog_size
from .verify import ALL_ORDER, FAIL, run_all, run_check

CHECK_NAMES = [*ALL_ORDER, "lemma1", "lemma2", "all"]


class UsageError(Exception):
    """Invalid parameters; reported on one line with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _poly(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("--poly takes comma-separated coefficients c0,c1,...,1")


def _ambient(args) -> Ambient:
    try:
        return Ambient(args.n, args.k, args.q, args.poly)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _add_space(p, kind=False):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True, help="field order p^e")
    p.add_argument("--poly", type=_poly, default=None, help="reduction polynomial c0,c1,...,1")
    if kind:
        p.add_argument("--kind", choices=[k.value for k in Kind], default=Kind.COMPLEMENTARY.value)


def _basis_text(S) -> str:
    return ";".join(" ".join(str(x) for x in row) for row in S.basis)


def _pair_rows(space):
    return [{"id": p.id, "s": p.s.id, "u": p.u.id} for p in space]


def cmd_enum_grassmannian(args, out):
    amb = _ambient(args)
    i = amb.k if args.i is None else args.i
    if not 0 <= i <= amb.n:
        raise UsageError(f"--i must lie in 0..{amb.n}")
    subs = amb.grassmannian(i)
    if args.format == "json":
        json.dump({"params": {**amb.params, "i": i}, "subspaces": [{"id": S.id, "basis": [list(r) for r in S.basis]} for S in subs]}, out)
        out.write("\n")
    else:
        out.write("id,basis\n")
        for S in subs:
            out.write(f"{S.id},{_basis_text(S)}\n")
    return 0


def cmd_enum_pairs(args, out):
    amb = _ambient(args)
    space = enumerate_pairs(amb, Kind(args.kind), args.ceiling)
    if args.format == "json":
        json.dump({"params": {**amb.params, "kind": args.kind}, "points": _pair_rows(space)}, out)
        out.write("\n")
    else:
        out.write("id,s_id,u_id\n")
        for p in space:
            out.write(f"{p.id},{p.s.id},{p.u.id}\n")
    return 0


def graph_to_json(graph: RelationGraph) -> dict:
    space = graph.space
    return {
        "params": {**space.ambient.params, "kind": space.kind.value},
        "relation": graph.relation.value,
        "vertices": _pair_rows(space),
        "edges": [list(e) for e in graph.edges],
    }


def graph_from_json(data: dict) -> RelationGraph:
    """Rebuild a graph (without its pair space) from ``graph_to_json`` output."""
    return RelationGraph.from_edges(len(data["vertices"]), [tuple(e) for e in data["edges"]], relation=Relation(data["relation"]))


def cmd_graph(args, out):
    amb = _ambient(args)
    space = enumerate_pairs(amb, Kind(args.kind), args.ceiling)
    graph = build_graph(space, Relation(args.relation))
    if args.format == "json":
        json.dump(graph_to_json(graph), out)
        out.write("\n")
    elif args.format == "csv":
        for a, b in graph.edges:
            out.write(f"{a},{b}\n")
    else:
        out.write("graph G {\n")
        for p in space:
            out.write(f'  {p.id} [label="({p.s.id},{p.u.id})"];\n')
        for a, b in graph.edges:
            out.write(f"  {a} -- {b};\n")
        out.write("}\n")
    return 0


def cmd_catalog(args, out):
    amb = _ambient(args)
    kind = Kind(args.kind)
    if args.count_only:
        out.write(f"{catalog_size(amb, kind)}\n")
        return 0
    cat = catalog(amb, kind, args.ceiling)
    maps = [
        {"index": i, "label": t.label, "shape": t.shape.value, "perm": [int(x) for x in row]}
        for i, (t, row) in enumerate(zip(cat.maps, cat.perms))
    ]
    json.dump({"params": {**amb.params, "kind": kind.value}, "size": len(cat), "maps": maps}, out)
    out.write("\n")
    return 0


def cmd_verify(args, out):
    amb = _ambient(args)
    if args.check == "all":
        reports = run_all(amb, ceiling=args.ceiling, seed=args.seed, jobs=args.jobs)
    else:
        try:
            reports = [run_check(args.check, amb, ceiling=args.ceiling, seed=args.seed)]
        except ValueError as exc:
            if isinstance(exc, CeilingExceeded):
                raise
            raise UsageError(str(exc)) from exc
    if args.json:
        payload = [r.to_json() for r in reports]
        json.dump(payload if args.check == "all" else payload[0], out, indent=2)
        out.write("\n")
    else:
        for r in reports:
            out.write(r.summary() + "\n")
            for w in r.witnesses:
                out.write(f"    witness: {json.dumps(w)}\n")
    return 1 if any(r.status == FAIL for r in reports) else 0


def cmd_stats(args, out):
    amb = _ambient(args)
    n, q = amb.n, amb.q
    for i in range(n + 1):
        out.write(f"|G_{i}| = {len(amb.grassmannian(i))}  (gaussian binomial {gaussian_binomial(n, i, q)})\n")
    space = enumerate_pairs(amb, Kind.COMPLEMENTARY, args.ceiling)
    out.write(f"|G| = {len(space)}\n")
    for rel in Relation:
        g = build_graph(space, rel)
        line = f"{rel.value}: edges = {g.edge_count}"
        try:
            cl = maximal_cliques(g)
            sizes = sorted({len(c) for c in cl})
            line += f", maximal cliques = {len(cl)} (sizes {sizes})"
        except CeilingExceeded as exc:
            line += f", maximal cliques skipped ({exc})"
        out.write(line + "\n")
    out.write(f"catalog size = {catalog_size(amb, Kind.COMPLEMENTARY)}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="grasspair", description="Complementary subspace pairs over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enum-grassmannian", help="list the subspaces of one dimension in canonical order")
    _add_space(p)
    p.add_argument("--i", type=int, default=None, help="subspace dimension (default k)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_enum_grassmannian)

    p = sub.add_parser("enum-pairs", help="list the points of the pair space")
    _add_space(p, kind=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--ceiling", type=int, default=DEFAULT_PAIR_CEILING)
    p.set_defaults(func=cmd_enum_pairs)

    p = sub.add_parser("graph", help="export the adjacency or closeness graph")
    _add_space(p, kind=True)
    p.add_argument("--relation", choices=[r.value for r in Relation], required=True)
    p.add_argument("--format", choices=["dot", "csv", "json"], default="dot")
    p.add_argument("--ceiling", type=int, default=DEFAULT_PAIR_CEILING)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("catalog", help="action tables of the standard transformations")
    _add_space(p, kind=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--ceiling", type=int, default=DEFAULT_CATALOG_CEILING)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="run exhaustive checks")
    p.add_argument("check", choices=CHECK_NAMES)
    _add_space(p)
    p.add_argument("--ceiling", type=int, default=64, help="vertex ceiling for automorphism search")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="sizes, edge counts and clique counts")
    _add_space(p)
    p.add_argument("--ceiling", type=int, default=DEFAULT_PAIR_CEILING)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, CeilingExceeded) as exc:
        print(f"grasspair: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
