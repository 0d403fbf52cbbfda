"""Bipartite contribution graph and weighted one-mode projections.

The bipartite graph links authors to the projects they contributed to.  A
projection collapses it onto one side: two authors connect when they share a
project (two projects when they share an author), with the edge weight equal
to the number of shared counterparts.  Node and edge thresholds keep the
result at an explorable size.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

__all__ = [
    "NodeNotFoundError",
    "BipartiteGraph",
    "ProjectionParams",
    "ProjectedGraph",
    "GraphStats",
    "build_bipartite",
    "project",
    "weighted_degree",
    "neighborhood",
    "search_nodes",
    "graph_stats",
    "adjacency_maps",
]

MODES = ("author", "project")


class NodeNotFoundError(KeyError):
    """Raised when a node id is not present in a graph."""


def _gather_slices(indptr: np.ndarray, indices: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """Concatenate CSR rows ``indices[indptr[k]:indptr[k+1]]`` for all keys."""
    starts = indptr[keys]
    counts = indptr[keys + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype)
    rep_starts = np.repeat(starts, counts)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    return indices[rep_starts + offsets]


def _csr_from_pairs(rows: np.ndarray, cols: np.ndarray, n_rows: int) -> tuple[np.ndarray, np.ndarray]:
    """Build (indptr, indices) with each row's indices sorted ascending."""
    order = np.lexsort((cols, rows))
    rows = rows[order]
    cols = cols[order]
    counts = np.bincount(rows, minlength=n_rows)
    indptr = np.zeros(n_rows + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, cols.astype(np.int64, copy=False)


@dataclass
class BipartiteGraph:
    """Authors and projects with contribution edges, indexed both ways.

    Ids on each side are sorted, so index order equals lexicographic id
    order.  ``project_authors`` / ``author_projects`` are CSR adjacency
    (indptr, indices) pairs and are exact transposes of each other.
    """

    authors: list[str]
    projects: list[str]
    author_projects: tuple[np.ndarray, np.ndarray]
    project_authors: tuple[np.ndarray, np.ndarray]

    @property
    def n_authors(self) -> int:
        return len(self.authors)

    @property
    def n_projects(self) -> int:
        return len(self.projects)

    def author_degree(self) -> np.ndarray:
        """Projects per author (bipartite degree)."""
        indptr, _ = self.author_projects
        return np.diff(indptr)

    def project_degree(self) -> np.ndarray:
        """Authors per project (bipartite degree)."""
        indptr, _ = self.project_authors
        return np.diff(indptr)


def build_bipartite(pairs: Iterable[tuple[str, str]]) -> BipartiteGraph:
    """Materialize distinct (project, author) pairs as a bipartite graph."""
    pair_list = sorted(set(pairs))
    projects = sorted({p for p, _ in pair_list})
    authors = sorted({a for _, a in pair_list})
    p_index = {p: i for i, p in enumerate(projects)}
    a_index = {a: i for i, a in enumerate(authors)}

    n = len(pair_list)
    p_idx = np.empty(n, dtype=np.int64)
    a_idx = np.empty(n, dtype=np.int64)
    for k, (p, a) in enumerate(pair_list):
        p_idx[k] = p_index[p]
        a_idx[k] = a_index[a]

    author_projects = _csr_from_pairs(a_idx, p_idx, len(authors))
    project_authors = _csr_from_pairs(p_idx, a_idx, len(projects))
    return BipartiteGraph(
        authors=authors,
        projects=projects,
        author_projects=author_projects,
        project_authors=project_authors,
    )


@dataclass(frozen=True)
class ProjectionParams:
    """Thresholds controlling a one-mode projection."""

    mode: str
    min_degree: int = 1
    min_shared: int = 1
    drop_isolated: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.min_degree < 1:
            raise ValueError(f"min_degree must be >= 1, got {self.min_degree}")
        if self.min_shared < 1:
            raise ValueError(f"min_shared must be >= 1, got {self.min_shared}")


@dataclass
class ProjectedGraph:
    """One-mode weighted graph in canonical form.

    ``ids`` is sorted ascending, so node index order is id order.  Edges are
    stored once with ``src < dst`` and sorted by (src, dst).
    ``counterpart_count`` keeps each node's bipartite degree from before any
    thresholding (projects per author, or authors per project).
    """

    mode: str
    ids: list[str]
    counterpart_count: np.ndarray
    edge_src: np.ndarray
    edge_dst: np.ndarray
    edge_weight: np.ndarray
    params: ProjectionParams | None = None
    _index: dict[str, int] | None = field(default=None, repr=False)
    _adj: tuple[np.ndarray, np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    @property
    def n_nodes(self) -> int:
        return len(self.ids)

    @property
    def n_edges(self) -> int:
        return len(self.edge_weight)

    def index_of(self, node_id: str) -> int:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.ids)}
        try:
            return self._index[node_id]
        except KeyError:
            raise NodeNotFoundError(node_id) from None

    def __contains__(self, node_id: str) -> bool:
        if self._index is None:
            self._index = {s: i for i, s in enumerate(self.ids)}
        return node_id in self._index

    def adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Undirected CSR view (indptr, neighbor indices, edge weights)."""
        if self._adj is None:
            rows = np.concatenate([self.edge_src, self.edge_dst])
            cols = np.concatenate([self.edge_dst, self.edge_src])
            wts = np.concatenate([self.edge_weight, self.edge_weight])
            order = np.lexsort((cols, rows))
            rows, cols, wts = rows[order], cols[order], wts[order]
            counts = np.bincount(rows, minlength=self.n_nodes)
            indptr = np.zeros(self.n_nodes + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            self._adj = (indptr, cols, wts)
        return self._adj

    def degrees(self) -> np.ndarray:
        """Unweighted degree per node (incident edge count)."""
        both = np.concatenate([self.edge_src, self.edge_dst])
        return np.bincount(both, minlength=self.n_nodes).astype(np.int64)

    def weighted_degrees(self) -> np.ndarray:
        """Sum of incident edge weights per node."""
        wd = np.zeros(self.n_nodes, dtype=np.int64)
        np.add.at(wd, self.edge_src, self.edge_weight)
        np.add.at(wd, self.edge_dst, self.edge_weight)
        return wd

    @classmethod
    def from_edges(
        cls,
        mode: str,
        nodes: list[tuple[str, int]],
        edges: list[tuple[int, int, int]],
        params: ProjectionParams | None = None,
    ) -> "ProjectedGraph":
        """Build a graph from (id, counterpart_count) nodes and index edges.

        Node ids must be distinct; edges are canonicalized to src < dst and
        sorted.  Intended for imports and tests, not the projection path.
        """
        order = np.argsort(np.array([nid for nid, _ in nodes], dtype=object), kind="stable")
        ids = [nodes[i][0] for i in order]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate node ids")
        cc = np.array([nodes[i][1] for i in order], dtype=np.int64)
        remap = np.empty(len(nodes), dtype=np.int64)
        remap[order] = np.arange(len(nodes))

        if edges:
            src = remap[np.array([e[0] for e in edges], dtype=np.int64)]
            dst = remap[np.array([e[1] for e in edges], dtype=np.int64)]
            wts = np.array([e[2] for e in edges], dtype=np.int64)
            lo = np.minimum(src, dst)
            hi = np.maximum(src, dst)
            if np.any(lo == hi):
                raise ValueError("self-loop edge")
            eorder = np.lexsort((hi, lo))
            src, dst, wts = lo[eorder], hi[eorder], wts[eorder]
        else:
            src = np.empty(0, dtype=np.int64)
            dst = np.empty(0, dtype=np.int64)
            wts = np.empty(0, dtype=np.int64)
        return cls(
            mode=mode,
            ids=ids,
            counterpart_count=cc,
            edge_src=src,
            edge_dst=dst,
            edge_weight=wts,
            params=params,
        )


def _count_shared(
    gathered: np.ndarray, n: int, min_shared: int
) -> tuple[np.ndarray, np.ndarray]:
    """Counts of each value in ``gathered`` that reach min_shared.

    Returns (values, counts) sorted by value.  Uses bincount when the
    gathered list is long relative to n, a sort-based count otherwise.
    """
    if gathered.size == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    if gathered.size * 8 > n:
        counts = np.bincount(gathered, minlength=n)
        vals = np.nonzero(counts >= min_shared)[0]
        return vals, counts[vals]
    vals, counts = np.unique(gathered, return_counts=True)
    keep = counts >= min_shared
    return vals[keep], counts[keep]


def project(bg: BipartiteGraph, params: ProjectionParams) -> ProjectedGraph:
    """One-mode projection of the bipartite graph.

    Steps: (1) keep nodes of the chosen mode with bipartite degree >=
    min_degree; (2) weight each surviving pair by its number of shared
    counterparts, counted on the full counterpart lists (the opposite side is
    never thresholded); (3) keep edges with weight >= min_shared; (4) drop
    isolated survivors when requested.  Runs one source node at a time so the
    accumulator never holds more than one node's co-occurrence counts, which
    keeps memory bounded even around hub counterparts.
    """
    if params.mode == "author":
        ids = bg.authors
        own_indptr, own_indices = bg.author_projects
        cpt_indptr, cpt_indices = bg.project_authors
    else:
        ids = bg.projects
        own_indptr, own_indices = bg.project_authors
        cpt_indptr, cpt_indices = bg.author_projects

    n = len(ids)
    degree = np.diff(own_indptr)
    survive = degree >= params.min_degree
    surviving = np.nonzero(survive)[0]

    src_parts: list[np.ndarray] = []
    dst_parts: list[np.ndarray] = []
    wt_parts: list[np.ndarray] = []
    for u in surviving:
        counterparts = own_indices[own_indptr[u]:own_indptr[u + 1]]
        cooc = _gather_slices(cpt_indptr, cpt_indices, counterparts)
        vals, counts = _count_shared(cooc, n, params.min_shared)
        keep = (vals > u) & survive[vals]
        if not np.any(keep):
            continue
        vals = vals[keep]
        src_parts.append(np.full(len(vals), u, dtype=np.int64))
        dst_parts.append(vals)
        wt_parts.append(counts[keep])

    if src_parts:
        src = np.concatenate(src_parts)
        dst = np.concatenate(dst_parts)
        wts = np.concatenate(wt_parts)
    else:
        src = dst = wts = np.empty(0, dtype=np.int64)

    keep_nodes = surviving
    if params.drop_isolated:
        touched = np.zeros(n, dtype=bool)
        touched[src] = True
        touched[dst] = True
        keep_nodes = surviving[touched[surviving]]

    compact = np.full(n, -1, dtype=np.int64)
    compact[keep_nodes] = np.arange(len(keep_nodes))
    return ProjectedGraph(
        mode=params.mode,
        ids=[ids[i] for i in keep_nodes],
        counterpart_count=degree[keep_nodes].astype(np.int64),
        edge_src=compact[src],
        edge_dst=compact[dst],
        edge_weight=wts,
        params=params,
    )


def weighted_degree(g: ProjectedGraph, node_id: str) -> int:
    """Sum of incident edge weights; 0 for isolated nodes."""
    i = g.index_of(node_id)
    return int(g.weighted_degrees()[i])


def neighborhood(g: ProjectedGraph, center: str, depth: int) -> ProjectedGraph:
    """Induced subgraph on all nodes within ``depth`` hops of ``center``.

    Hops are unweighted; all edges of ``g`` between included nodes are kept.
    Depth 0 yields just the center node.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    start = g.index_of(center)
    indptr, nbrs, _ = g.adjacency()

    dist = np.full(g.n_nodes, -1, dtype=np.int64)
    dist[start] = 0
    queue: deque[int] = deque([start])
    while queue:
        u = queue.popleft()
        if dist[u] == depth:
            continue
        for v in nbrs[indptr[u]:indptr[u + 1]]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)

    members = np.nonzero(dist >= 0)[0]
    compact = np.full(g.n_nodes, -1, dtype=np.int64)
    compact[members] = np.arange(len(members))
    emask = (dist[g.edge_src] >= 0) & (dist[g.edge_dst] >= 0)
    return ProjectedGraph(
        mode=g.mode,
        ids=[g.ids[i] for i in members],
        counterpart_count=g.counterpart_count[members],
        edge_src=compact[g.edge_src[emask]],
        edge_dst=compact[g.edge_dst[emask]],
        edge_weight=g.edge_weight[emask],
        params=g.params,
    )


def search_nodes(g: ProjectedGraph, query: str, limit: int = 20) -> list[str]:
    """Case-insensitive substring search over node ids.

    Results are ordered by descending weighted degree, ties broken by id.
    The empty query matches nothing.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if not query:
        return []
    needle = query.lower()
    hits = [i for i, s in enumerate(g.ids) if needle in s.lower()]
    if not hits:
        return []
    wd = g.weighted_degrees()
    hits.sort(key=lambda i: (-wd[i], g.ids[i]))
    return [g.ids[i] for i in hits[:limit]]


@dataclass(frozen=True)
class GraphStats:
    node_count: int
    edge_count: int
    total_weight: int
    max_weighted_degree: int

    def as_dict(self) -> dict[str, int]:
        return {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "total_weight": self.total_weight,
            "max_weighted_degree": self.max_weighted_degree,
        }


def graph_stats(g: ProjectedGraph) -> GraphStats:
    wd = g.weighted_degrees()
    return GraphStats(
        node_count=g.n_nodes,
        edge_count=g.n_edges,
        total_weight=int(g.edge_weight.sum()),
        max_weighted_degree=int(wd.max()) if g.n_nodes else 0,
    )


def adjacency_maps(bg: BipartiteGraph, mode: str) -> dict[str, list[str]]:
    """Unthresholded one-mode neighbor lists (ids sharing >= 1 counterpart).

    Matches the edge structure of ``project(bg, ProjectionParams(mode, 1, 1))``
    but is computed directly from the counterpart lists.
    """
    if mode == "author":
        ids = bg.authors
        own_indptr, own_indices = bg.author_projects
        cpt_indptr, cpt_indices = bg.project_authors
    elif mode == "project":
        ids = bg.projects
        own_indptr, own_indices = bg.project_authors
        cpt_indptr, cpt_indices = bg.author_projects
    else:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")

    out: dict[str, list[str]] = {}
    for u in range(len(ids)):
        counterparts = own_indices[own_indptr[u]:own_indptr[u + 1]]
        cooc = np.unique(_gather_slices(cpt_indptr, cpt_indices, counterparts))
        out[ids[u]] = [ids[v] for v in cooc if v != u]
    return out
