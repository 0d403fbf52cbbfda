"""Pipeline driver: each stage of the offline workflow as a subcommand.

Stages read and write files so a cleaning run can feed many projections.
Exit codes: 0 success, 1 I/O failure, 2 empty result, 3 not found, 64 usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .export import DocumentError, export_graph, import_graph
from .graph import (
    NodeNotFoundError,
    ProjectionParams,
    build_bipartite,
    neighborhood,
    project,
)
from .ingest import AliasMap, clean_links, load_alias_map, parse_link_stream
from .layout import LayoutParams, LayoutState, RenderAttributes, render_attributes, run_layout

EXIT_OK = 0
EXIT_IO = 1
EXIT_EMPTY = 2
EXIT_NOT_FOUND = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 64 on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="collabgraph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help="clean raw link data into a distinct-pairs file")
    p.add_argument("--links", required=True, help="raw project<TAB>author file")
    p.add_argument("--aliases", help="optional raw<TAB>canonical alias file")
    p.add_argument("--min-authors", type=int, default=2, metavar="K")
    p.add_argument("--out", required=True, help="cleaned pairs file (TSV)")

    p = sub.add_parser("project", help="build a one-mode projection document")
    p.add_argument("--pairs", required=True, help="cleaned pairs file")
    p.add_argument("--mode", required=True, choices=["author", "project"])
    p.add_argument("--min-degree", type=int, required=True, metavar="N")
    p.add_argument("--min-shared", type=int, required=True, metavar="M")
    p.add_argument("--drop-isolated", action="store_true")
    p.add_argument("--allow-empty", action="store_true")
    p.add_argument("--out", required=True, help="output .graph.json")

    p = sub.add_parser("layout", help="compute positions for a graph document")
    p.add_argument("--graph", required=True, help="input .graph.json")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--iterations", type=int, metavar="N")
    p.add_argument("--out", required=True)

    p = sub.add_parser("a2gr", help="extract the neighborhood around a node")
    p.add_argument("--graph", required=True, help="input .graph.json")
    p.add_argument("--center", required=True, help="center node id")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("serve", help="serve graph documents over HTTP")
    p.add_argument("--graphs", required=True, help="directory of .graph.json files")
    p.add_argument("--pairs", help="optional pairs file enabling re-projection")
    p.add_argument("--listen", default="127.0.0.1:8000", metavar="ADDR")
    p.add_argument("--node-cap", type=int, default=None)
    p.add_argument("--static", help="static directory with the explorer UI bundle")

    return parser


def _cmd_ingest(args: argparse.Namespace) -> int:
    aliases = AliasMap()
    if args.aliases:
        with open(args.aliases, encoding="utf-8") as fh:
            aliases, _ = load_alias_map(fh)
    with open(args.links, encoding="utf-8") as fh:
        records, parse_errors = parse_link_stream(fh)
    cleaned = clean_links(records, aliases, min_authors=args.min_authors)

    out = Path(args.out)
    with open(out, "w", encoding="utf-8") as fh:
        for proj, author in cleaned.sorted_pairs():
            fh.write(f"{proj}\t{author}\n")
    stats_json = cleaned.stats.to_json()
    Path(str(out) + ".stats.json").write_text(stats_json + "\n", encoding="utf-8")
    print(stats_json, file=sys.stderr)
    if parse_errors:
        print(f"skipped {parse_errors} malformed line(s)", file=sys.stderr)
    if not cleaned.pairs:
        print("no pairs survived cleaning", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


def _zero_layout(n: int) -> LayoutState:
    return LayoutState(positions=np.zeros((n, 2)), prev_forces=np.zeros((n, 2)))


def _cmd_project(args: argparse.Namespace) -> int:
    with open(args.pairs, encoding="utf-8") as fh:
        records, _ = parse_link_stream(fh)
    bg = build_bipartite((r.project, r.author) for r in records)
    try:
        params = ProjectionParams(
            mode=args.mode,
            min_degree=args.min_degree,
            min_shared=args.min_shared,
            drop_isolated=args.drop_isolated,
        )
    except ValueError as exc:
        print(f"collabgraph project: {exc}", file=sys.stderr)
        return EXIT_USAGE
    g = project(bg, params)
    Path(args.out).write_bytes(export_graph(g, _zero_layout(g.n_nodes), render_attributes(g)))
    if g.n_nodes == 0 and not args.allow_empty:
        print("projection produced an empty graph", file=sys.stderr)
        return EXIT_EMPTY
    return EXIT_OK


def _cmd_layout(args: argparse.Namespace) -> int:
    g, _, attrs = import_graph(Path(args.graph).read_bytes())
    params = LayoutParams(seed=args.seed)
    if args.iterations is not None:
        params = LayoutParams(seed=args.seed, max_iterations=args.iterations)
    state = run_layout(g, params)
    Path(args.out).write_bytes(export_graph(g, state, attrs))
    return EXIT_OK


def _cmd_a2gr(args: argparse.Namespace) -> int:
    if args.depth < 0:
        print("collabgraph a2gr: depth must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    g, layout, attrs = import_graph(Path(args.graph).read_bytes())
    try:
        sub = neighborhood(g, args.center, args.depth)
    except NodeNotFoundError:
        print(f"collabgraph a2gr: node {args.center!r} not found", file=sys.stderr)
        return EXIT_NOT_FOUND
    member_idx = np.array([g.index_of(nid) for nid in sub.ids], dtype=np.int64)
    sub_layout = LayoutState(
        positions=layout.positions[member_idx].copy(),
        prev_forces=np.zeros((len(member_idx), 2)),
    )
    sub_attrs = RenderAttributes(
        size=attrs.size[member_idx].copy(),
        color_scalar=attrs.color_scalar[member_idx].copy(),
    )
    Path(args.out).write_bytes(export_graph(sub, sub_layout, sub_attrs))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import DEFAULT_NODE_CAP, GraphRegistry, GraphSnapshot, create_app

    source = None
    if args.pairs:
        with open(args.pairs, encoding="utf-8") as fh:
            records, _ = parse_link_stream(fh)
        source = build_bipartite((r.project, r.author) for r in records)

    registry = GraphRegistry(source=source)
    graphs_dir = Path(args.graphs)
    if not graphs_dir.is_dir():
        raise OSError(f"not a directory: {graphs_dir}")
    for path in sorted(graphs_dir.glob("*.graph.json")):
        graph_id = path.name[: -len(".graph.json")]
        registry.register(graph_id, GraphSnapshot.from_document(path.read_bytes()))

    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        print(f"collabgraph serve: bad --listen address {args.listen!r}", file=sys.stderr)
        return EXIT_USAGE
    cap = args.node_cap if args.node_cap is not None else DEFAULT_NODE_CAP
    app = create_app(registry, node_cap=cap, static_dir=args.static)
    uvicorn.run(app, host=host, port=int(port), log_level="warning")
    return EXIT_OK


_COMMANDS = {
    "ingest": _cmd_ingest,
    "project": _cmd_project,
    "layout": _cmd_layout,
    "a2gr": _cmd_a2gr,
    "serve": _cmd_serve,
}


def run(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"collabgraph {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except DocumentError as exc:
        print(f"collabgraph {args.command}: bad graph document: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
