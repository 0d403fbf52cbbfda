// Thin typed client over the graph service. The fetch implementation is
// injectable so tests can drive it without a network.

import type {
  GraphDocument,
  GraphSummary,
  ProjectionRequest,
  SearchHit,
} from './types.js';

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly error: string,
    public readonly detail: string,
  ) {
    super(`${status} ${error}: ${detail}`);
    this.name = 'ApiError';
  }
}

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly base: string = '',
    fetchFn?: FetchLike,
  ) {
    // bind so the global fetch keeps its expected receiver
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    let body: unknown = null;
    try {
      body = await resp.json();
    } catch {
      body = null;
    }
    if (!resp.ok) {
      const err = (body ?? {}) as { error?: string; detail?: string };
      throw new ApiError(
        resp.status,
        err.error ?? 'error',
        err.detail ?? resp.statusText,
      );
    }
    return body as T;
  }

  listGraphs(): Promise<GraphSummary[]> {
    return this.request('/api/graphs');
  }

  getGraph(graphId: string): Promise<GraphDocument> {
    return this.request(`/api/graphs/${encodeURIComponent(graphId)}`);
  }

  search(graphId: string, query: string, limit = 20): Promise<SearchHit[]> {
    const qs = new URLSearchParams({ q: query, limit: String(limit) });
    return this.request(
      `/api/graphs/${encodeURIComponent(graphId)}/search?${qs}`,
    );
  }

  neighborhood(
    graphId: string,
    nodeId: string,
    depth: number,
  ): Promise<GraphDocument> {
    // node ids contain slashes and spaces; the server accepts them
    // percent-encoded anywhere in the path segment
    return this.request(
      `/api/graphs/${encodeURIComponent(graphId)}/nodes/` +
        `${encodeURIComponent(nodeId)}/neighborhood?depth=${depth}`,
    );
  }

  postProjection(params: ProjectionRequest): Promise<{ id: string }> {
    return this.request('/api/projections', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(params),
    });
  }
}
