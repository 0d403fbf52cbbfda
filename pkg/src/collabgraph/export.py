"""Graph document serialization.

A projected graph plus its layout and render attributes is written as one
deterministic UTF-8 JSON document (extension ``.graph.json``): nodes sorted
by id, edges by (source, target), floats at 9 significant digits.  Importing
reproduces the in-memory structures exactly and rejects malformed or
inconsistent documents.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .errors import ContractViolationError
from .graph import ProjectedGraph, ProjectionParams, graph_stats
from .layout import LayoutState, RenderAttributes

__all__ = [
    "SCHEMA_VERSION",
    "DocumentError",
    "DocumentParseError",
    "UnsupportedVersionError",
    "DocumentIntegrityError",
    "export_graph",
    "import_graph",
]

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Base class for graph-document failures."""


class DocumentParseError(DocumentError):
    """The bytes are not a well-formed document."""


class UnsupportedVersionError(DocumentError):
    """The document's schema_version is not supported."""


class DocumentIntegrityError(DocumentError):
    """The document is well-formed JSON but internally inconsistent."""


def _round9(x: float) -> float:
    """Quantize to 9 significant digits; repr of the result stays within 9."""
    return float(f"{x:.9g}")


def export_graph(
    g: ProjectedGraph, layout_state: LayoutState, attrs: RenderAttributes
) -> bytes:
    """Serialize to canonical document bytes.

    The layout state and attributes must cover exactly the graph's nodes.
    Identical inputs always produce byte-identical output.
    """
    n = g.n_nodes
    if layout_state.positions.shape != (n, 2):
        raise ContractViolationError(
            f"layout covers {layout_state.positions.shape[0]} nodes, graph has {n}"
        )
    if len(attrs.size) != n or len(attrs.color_scalar) != n:
        raise ContractViolationError("render attributes do not cover the graph's nodes")
    floats = [layout_state.positions, attrs.size, attrs.color_scalar]
    if any(not np.all(np.isfinite(a)) for a in floats):
        raise ContractViolationError("non-finite layout or attribute values")

    params = g.params if g.params is not None else ProjectionParams(g.mode)
    wd = g.weighted_degrees()
    # Node index order is id order, so iteration yields id-sorted nodes and
    # (source, target)-sorted edges without extra work.
    nodes = [
        {
            "id": g.ids[i],
            "label": g.ids[i],
            "x": _round9(float(layout_state.positions[i, 0])),
            "y": _round9(float(layout_state.positions[i, 1])),
            "size": _round9(float(attrs.size[i])),
            "color_scalar": _round9(float(attrs.color_scalar[i])),
            "counterpart_count": int(g.counterpart_count[i]),
            "weighted_degree": int(wd[i]),
        }
        for i in range(n)
    ]
    edges = [
        {
            "source": g.ids[int(g.edge_src[k])],
            "target": g.ids[int(g.edge_dst[k])],
            "weight": int(g.edge_weight[k]),
        }
        for k in range(g.n_edges)
    ]
    doc = {
        "meta": {
            "mode": g.mode,
            "params": {
                "mode": params.mode,
                "min_degree": params.min_degree,
                "min_shared": params.min_shared,
                "drop_isolated": params.drop_isolated,
            },
            "stats": graph_stats(g).as_dict(),
            "schema_version": SCHEMA_VERSION,
        },
        "nodes": nodes,
        "edges": edges,
    }
    return (json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n").encode("utf-8")


def _field(obj: dict, key: str, types: Any, where: str) -> Any:
    if key not in obj:
        raise DocumentIntegrityError(f"missing {key!r} in {where}")
    val = obj[key]
    if types is bool:
        if not isinstance(val, bool):
            raise DocumentIntegrityError(f"bad type for {key!r} in {where}")
        return val
    if isinstance(val, bool) or not isinstance(val, types):
        raise DocumentIntegrityError(f"bad type for {key!r} in {where}")
    return val


def import_graph(data: bytes | str) -> tuple[ProjectedGraph, LayoutState, RenderAttributes]:
    """Parse document bytes back into (graph, layout, attributes).

    Raises DocumentParseError on malformed JSON, UnsupportedVersionError on an
    unknown schema_version, DocumentIntegrityError on dangling edges or other
    inconsistencies.
    """
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DocumentParseError(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentParseError("document root must be an object")

    meta = doc.get("meta")
    if not isinstance(meta, dict):
        raise DocumentIntegrityError("missing meta object")
    version = meta.get("schema_version")
    if version != SCHEMA_VERSION:
        raise UnsupportedVersionError(f"unsupported schema_version: {version!r}")
    mode = _field(meta, "mode", str, "meta")
    raw_params = meta.get("params")
    if not isinstance(raw_params, dict):
        raise DocumentIntegrityError("missing params object")
    try:
        params = ProjectionParams(
            mode=_field(raw_params, "mode", str, "params"),
            min_degree=_field(raw_params, "min_degree", int, "params"),
            min_shared=_field(raw_params, "min_shared", int, "params"),
            drop_isolated=_field(raw_params, "drop_isolated", bool, "params"),
        )
    except ValueError as exc:
        raise DocumentIntegrityError(f"invalid params: {exc}") from exc

    raw_nodes = doc.get("nodes")
    raw_edges = doc.get("edges")
    if not isinstance(raw_nodes, list) or not isinstance(raw_edges, list):
        raise DocumentIntegrityError("nodes and edges must be arrays")

    ids: list[str] = []
    cc: list[int] = []
    xs: list[float] = []
    ys: list[float] = []
    sizes: list[float] = []
    colors: list[float] = []
    for i, raw in enumerate(raw_nodes):
        if not isinstance(raw, dict):
            raise DocumentIntegrityError(f"node {i} is not an object")
        where = f"node {i}"
        ids.append(_field(raw, "id", str, where))
        _field(raw, "label", str, where)
        xs.append(float(_field(raw, "x", (int, float), where)))
        ys.append(float(_field(raw, "y", (int, float), where)))
        sizes.append(float(_field(raw, "size", (int, float), where)))
        colors.append(float(_field(raw, "color_scalar", (int, float), where)))
        cc.append(_field(raw, "counterpart_count", int, where))
    index = {nid: i for i, nid in enumerate(ids)}
    if len(index) != len(ids):
        raise DocumentIntegrityError("duplicate node ids")
    if any(not math.isfinite(v) for v in xs + ys + sizes + colors):
        raise DocumentIntegrityError("non-finite node attribute")

    src: list[int] = []
    dst: list[int] = []
    wts: list[int] = []
    for k, raw in enumerate(raw_edges):
        if not isinstance(raw, dict):
            raise DocumentIntegrityError(f"edge {k} is not an object")
        where = f"edge {k}"
        s = _field(raw, "source", str, where)
        t = _field(raw, "target", str, where)
        w = _field(raw, "weight", int, where)
        if s not in index or t not in index:
            raise DocumentIntegrityError(f"edge {k} references a missing node")
        if s == t:
            raise DocumentIntegrityError(f"edge {k} is a self-loop")
        if w < 1:
            raise DocumentIntegrityError(f"edge {k} has non-positive weight")
        src.append(index[s])
        dst.append(index[t])
        wts.append(w)

    g = ProjectedGraph.from_edges(
        mode=mode,
        nodes=list(zip(ids, cc)),
        edges=list(zip(src, dst, wts)),
        params=params,
    )
    # from_edges sorts by id; carry the attribute arrays through the same order.
    order = [index[nid] for nid in g.ids]
    positions = np.column_stack(
        [np.asarray(xs, dtype=np.float64)[order], np.asarray(ys, dtype=np.float64)[order]]
    )
    state = LayoutState(positions=positions, prev_forces=np.zeros((g.n_nodes, 2)))
    attrs = RenderAttributes(
        size=np.asarray(sizes, dtype=np.float64)[order],
        color_scalar=np.asarray(colors, dtype=np.float64)[order],
    )
    return g, state, attrs
