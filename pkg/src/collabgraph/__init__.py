"""Collaboration-network mining toolkit.

Builds author/project collaboration graphs from raw contribution records:
cleaning and identity resolution, weighted one-mode projection with
thresholds, force-directed layout, a portable JSON document format, and an
HTTP API for interactive exploration.
"""

from .errors import ContractViolationError
from .export import (
    DocumentError,
    DocumentIntegrityError,
    DocumentParseError,
    UnsupportedVersionError,
    export_graph,
    import_graph,
)
from .graph import (
    BipartiteGraph,
    GraphStats,
    NodeNotFoundError,
    ProjectedGraph,
    ProjectionParams,
    adjacency_maps,
    build_bipartite,
    graph_stats,
    neighborhood,
    project,
    search_nodes,
    weighted_degree,
)
from .ingest import (
    AliasMap,
    CleanedLinkSet,
    IngestStats,
    LinkRecord,
    clean_links,
    load_alias_map,
    parse_link_stream,
    resolve_alias,
    validate_author_id,
)
from .layout import (
    LayoutParams,
    LayoutState,
    RenderAttributes,
    fa2_step,
    init_layout,
    render_attributes,
    run_layout,
)
from .service import GraphRegistry, GraphSnapshot, create_app

__version__ = "0.1.0"
