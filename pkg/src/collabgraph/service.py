"""HTTP API over registered graph snapshots.

Read endpoints serve precomputed document bytes from an immutable registry;
POST /api/projections builds a new projection (optionally laid out) from the
loaded bipartite source and registers it atomically, so concurrent readers
only ever observe complete graphs.
"""

from __future__ import annotations

import itertools
import threading
from collections import deque
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .export import export_graph, import_graph
from .graph import (
    BipartiteGraph,
    NodeNotFoundError,
    ProjectedGraph,
    ProjectionParams,
    neighborhood,
    project,
    search_nodes,
)
from .layout import (
    LayoutParams,
    LayoutState,
    RenderAttributes,
    render_attributes,
    run_layout,
)

__all__ = ["GraphSnapshot", "GraphRegistry", "create_app", "DEFAULT_NODE_CAP"]

DEFAULT_NODE_CAP = 50_000
MAX_SEARCH_LIMIT = 200
MAX_DEPTH = 6


@dataclass
class GraphSnapshot:
    """One registered graph with layout, attributes and its export bytes."""

    graph: ProjectedGraph
    layout: LayoutState
    attrs: RenderAttributes
    document: bytes

    @classmethod
    def build(
        cls, graph: ProjectedGraph, layout: LayoutState, attrs: RenderAttributes
    ) -> "GraphSnapshot":
        return cls(graph, layout, attrs, export_graph(graph, layout, attrs))

    @classmethod
    def from_document(cls, data: bytes) -> "GraphSnapshot":
        graph, layout, attrs = import_graph(data)
        # Re-export so served bytes are canonical regardless of input formatting.
        return cls.build(graph, layout, attrs)


class _FifoLock:
    """Mutex handing itself to waiters in arrival order."""

    def __init__(self) -> None:
        self._cond = threading.Condition()
        self._queue: deque[object] = deque()
        self._busy = False

    def __enter__(self) -> None:
        ticket = object()
        with self._cond:
            self._queue.append(ticket)
            self._cond.wait_for(lambda: not self._busy and self._queue[0] is ticket)
            self._queue.popleft()
            self._busy = True

    def __exit__(self, *exc) -> None:
        with self._cond:
            self._busy = False
            self._cond.notify_all()


class GraphRegistry:
    """Id -> snapshot map with atomic replacement and an optional source."""

    def __init__(self, source: BipartiteGraph | None = None):
        self._snapshots: dict[str, GraphSnapshot] = {}
        self._write_lock = threading.Lock()
        self._ids = itertools.count(1)
        self.source = source

    def register(self, graph_id: str, snapshot: GraphSnapshot) -> None:
        with self._write_lock:
            self._snapshots[graph_id] = snapshot

    def fresh_id(self) -> str:
        return f"projection-{next(self._ids):04d}"

    def get(self, graph_id: str) -> GraphSnapshot | None:
        return self._snapshots.get(graph_id)

    def items(self) -> list[tuple[str, GraphSnapshot]]:
        return sorted(self._snapshots.items())

    def __len__(self) -> int:
        return len(self._snapshots)


class ApiError(Exception):
    def __init__(self, status: int, error: str, detail: str):
        self.status = status
        self.error = error
        self.detail = detail


def _error_response(status: int, error: str, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": error, "detail": detail})


def create_app(
    registry: GraphRegistry,
    node_cap: int = DEFAULT_NODE_CAP,
    static_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="collabgraph", docs_url=None, redoc_url=None)
    projection_lock = _FifoLock()

    @app.exception_handler(ApiError)
    async def on_api_error(request: Request, exc: ApiError) -> JSONResponse:
        return _error_response(exc.status, exc.error, exc.detail)

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return _error_response(400, "bad_request", str(exc))

    def snapshot_or_404(graph_id: str) -> GraphSnapshot:
        snap = registry.get(graph_id)
        if snap is None:
            raise ApiError(404, "not_found", f"graph {graph_id!r} is not registered")
        return snap

    @app.get("/api/graphs")
    def list_graphs() -> list[dict]:
        return [
            {
                "id": graph_id,
                "mode": snap.graph.mode,
                "node_count": snap.graph.n_nodes,
                "edge_count": snap.graph.n_edges,
            }
            for graph_id, snap in registry.items()
        ]

    @app.get("/api/graphs/{graph_id}")
    def get_graph(graph_id: str) -> Response:
        snap = snapshot_or_404(graph_id)
        return Response(content=snap.document, media_type="application/json")

    @app.get("/api/graphs/{graph_id}/search")
    def search(graph_id: str, q: str | None = None, limit: str = "20") -> list[dict]:
        snap = snapshot_or_404(graph_id)
        if q is None:
            raise ApiError(400, "bad_request", "missing query parameter 'q'")
        try:
            limit_n = int(limit)
        except ValueError:
            raise ApiError(400, "bad_request", f"limit must be an integer, got {limit!r}")
        if not 1 <= limit_n <= MAX_SEARCH_LIMIT:
            raise ApiError(
                400, "bad_request", f"limit must be in 1..{MAX_SEARCH_LIMIT}, got {limit_n}"
            )
        g = snap.graph
        wd = g.weighted_degrees()
        out = []
        for node_id in search_nodes(g, q, limit_n):
            i = g.index_of(node_id)
            out.append(
                {
                    "id": node_id,
                    "x": float(snap.layout.positions[i, 0]),
                    "y": float(snap.layout.positions[i, 1]),
                    "weighted_degree": int(wd[i]),
                    "counterpart_count": int(g.counterpart_count[i]),
                }
            )
        return out

    @app.get("/api/graphs/{graph_id}/nodes/{node_id:path}/neighborhood")
    def node_neighborhood(graph_id: str, node_id: str, depth: str = "1") -> Response:
        snap = snapshot_or_404(graph_id)
        try:
            depth_n = int(depth)
        except ValueError:
            raise ApiError(400, "bad_request", f"depth must be an integer, got {depth!r}")
        if not 0 <= depth_n <= MAX_DEPTH:
            raise ApiError(400, "bad_request", f"depth must be in 0..{MAX_DEPTH}, got {depth_n}")
        g = snap.graph
        try:
            sub = neighborhood(g, node_id, depth_n)
        except NodeNotFoundError:
            raise ApiError(404, "not_found", f"node {node_id!r} not in graph {graph_id!r}")
        member_idx = np.array([g.index_of(nid) for nid in sub.ids], dtype=np.int64)
        layout = LayoutState(
            positions=snap.layout.positions[member_idx].copy(),
            prev_forces=np.zeros((len(member_idx), 2)),
        )
        attrs = RenderAttributes(
            size=snap.attrs.size[member_idx].copy(),
            color_scalar=snap.attrs.color_scalar[member_idx].copy(),
        )
        return Response(
            content=export_graph(sub, layout, attrs), media_type="application/json"
        )

    @app.post("/api/projections", status_code=201)
    def create_projection(body: dict) -> dict:
        if registry.source is None:
            raise ApiError(409, "no_source", "no bipartite source loaded for re-projection")
        mode = body.get("mode")
        min_degree = body.get("min_degree")
        min_shared = body.get("min_shared")
        drop_isolated = body.get("drop_isolated", False)
        with_layout = body.get("layout", False)
        if not isinstance(drop_isolated, bool) or not isinstance(with_layout, bool):
            raise ApiError(400, "bad_request", "drop_isolated and layout must be booleans")
        if (
            not isinstance(min_degree, int)
            or not isinstance(min_shared, int)
            or isinstance(min_degree, bool)
            or isinstance(min_shared, bool)
        ):
            raise ApiError(400, "bad_request", "min_degree and min_shared must be integers")
        try:
            params = ProjectionParams(
                mode=str(mode),
                min_degree=min_degree,
                min_shared=min_shared,
                drop_isolated=drop_isolated,
            )
        except ValueError as exc:
            raise ApiError(400, "bad_request", str(exc))

        with projection_lock:
            g = project(registry.source, params)
            if g.n_nodes > node_cap:
                raise ApiError(
                    422,
                    "result_too_large",
                    f"projection has {g.n_nodes} nodes, cap is {node_cap}; "
                    "raise min_degree or min_shared",
                )
            if with_layout:
                layout = run_layout(g, LayoutParams())
            else:
                layout = LayoutState(
                    positions=np.zeros((g.n_nodes, 2)), prev_forces=np.zeros((g.n_nodes, 2))
                )
            graph_id = registry.fresh_id()
            registry.register(graph_id, GraphSnapshot.build(g, layout, render_attributes(g)))
        return {"id": graph_id}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
