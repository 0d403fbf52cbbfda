// Wire types for the graph HTTP API. Field names and shapes mirror the
// JSON documents the server emits; nothing here is UI state.

export interface NodeRecord {
  id: string;
  label: string;
  x: number;
  y: number;
  size: number;
  color_scalar: number;
  counterpart_count: number;
  weighted_degree: number;
}

export interface EdgeRecord {
  source: string;
  target: string;
  weight: number;
}

export interface ProjectionParams {
  mode: 'author' | 'project';
  min_degree: number;
  min_shared: number;
  drop_isolated: boolean;
}

export interface GraphMeta {
  mode: 'author' | 'project';
  params: ProjectionParams;
  stats: {
    node_count: number;
    edge_count: number;
    total_weight: number;
    max_weighted_degree: number;
  };
  schema_version: number;
}

export interface GraphDocument {
  meta: GraphMeta;
  nodes: NodeRecord[];
  edges: EdgeRecord[];
}

export interface GraphSummary {
  id: string;
  mode: string;
  node_count: number;
  edge_count: number;
}

export interface SearchHit {
  id: string;
  x: number;
  y: number;
  weighted_degree: number;
  counterpart_count: number;
}

export interface ProjectionRequest {
  mode: 'author' | 'project';
  min_degree: number;
  min_shared: number;
  drop_isolated?: boolean;
  layout?: boolean;
}

// Structural sanity check used before rendering: a document is drawable
// only if every edge endpoint resolves to a node. Returns a problem
// description or null.
export function documentProblem(doc: GraphDocument): string | null {
  if (!doc || !Array.isArray(doc.nodes) || !Array.isArray(doc.edges)) {
    return 'document is missing nodes or edges';
  }
  const ids = new Set<string>();
  for (const n of doc.nodes) {
    if (ids.has(n.id)) return `duplicate node id ${n.id}`;
    if (!Number.isFinite(n.x) || !Number.isFinite(n.y)) {
      return `non-finite position on ${n.id}`;
    }
    ids.add(n.id);
  }
  for (const e of doc.edges) {
    if (!ids.has(e.source) || !ids.has(e.target)) {
      return `edge ${e.source} -- ${e.target} references a missing node`;
    }
  }
  return null;
}
