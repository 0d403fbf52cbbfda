import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api.js';
import { ViewStore, closedNeighborhood } from '../src/store.js';
import type {
  GraphDocument,
  GraphSummary,
  SearchHit,
  ProjectionRequest,
} from '../src/types.js';

function doc(
  nodes: string[],
  edges: Array<[string, string]>,
): GraphDocument {
  return {
    meta: {
      mode: 'author',
      params: { mode: 'author', min_degree: 1, min_shared: 1, drop_isolated: false },
      stats: {
        node_count: nodes.length,
        edge_count: edges.length,
        total_weight: edges.length,
        max_weighted_degree: 1,
      },
      schema_version: 1,
    },
    nodes: nodes.map((id, i) => ({
      id,
      label: id,
      x: i * 10,
      y: -i * 5,
      size: 5,
      color_scalar: 0.5,
      counterpart_count: 1,
      weighted_degree: 1,
    })),
    edges: edges.map(([s, t]) => ({ source: s, target: t, weight: 1 })),
  };
}

// structural stand-in for ApiClient; every behavior is overridable
class FakeApi {
  graphs: GraphSummary[] = [];
  docs = new Map<string, GraphDocument>();
  searchImpl: (q: string) => Promise<SearchHit[]> = async () => [];
  neighborhoodImpl: (n: string, d: number) => Promise<GraphDocument> =
    async () => doc([], []);
  postImpl: (p: ProjectionRequest) => Promise<{ id: string }> = async () => ({
    id: 'projection-0001',
  });
  neighborhoodCalls = 0;
  postCalls = 0;

  async listGraphs(): Promise<GraphSummary[]> {
    return this.graphs;
  }
  async getGraph(id: string): Promise<GraphDocument> {
    const d = this.docs.get(id);
    if (!d) throw new ApiError(404, 'graph not found', id);
    return d;
  }
  async search(_g: string, q: string): Promise<SearchHit[]> {
    return this.searchImpl(q);
  }
  async neighborhood(
    _g: string,
    n: string,
    d: number,
  ): Promise<GraphDocument> {
    this.neighborhoodCalls++;
    return this.neighborhoodImpl(n, d);
  }
  async postProjection(p: ProjectionRequest): Promise<{ id: string }> {
    this.postCalls++;
    return this.postImpl(p);
  }
}

function makeStore(api: FakeApi, errors: string[] = []) {
  return new ViewStore(api as unknown as ApiClient, {
    onError: (m) => errors.push(m),
  });
}

function deferred<T>() {
  let resolve!: (v: T) => void;
  const promise = new Promise<T>((r) => (resolve = r));
  return { promise, resolve };
}

const PATH = doc(
  ['a', 'b', 'c', 'd'],
  [
    ['a', 'b'],
    ['b', 'c'],
    ['c', 'd'],
  ],
);

describe('closed neighborhood', () => {
  it('is selection plus direct neighbors per the edge list', () => {
    expect(closedNeighborhood(PATH, 'b')).toEqual(new Set(['a', 'b', 'c']));
    expect(closedNeighborhood(PATH, 'a')).toEqual(new Set(['a', 'b']));
  });

  it('is empty without a selection or document', () => {
    expect(closedNeighborhood(PATH, null).size).toBe(0);
    expect(closedNeighborhood(null, 'a').size).toBe(0);
  });
});

describe('view store', () => {
  it('opens a graph: document installed, camera fitted, selection reset', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    const store = makeStore(api);
    await store.openGraph('g');
    expect(store.activeGraph).toBe('g');
    expect(store.document).toBe(PATH);
    expect(store.selection).toBeNull();
    expect(store.highlighted.size).toBe(0);
    // camera centered on node bounds: x in [0,30], y in [-15,0]
    expect(store.camera.centerX).toBe(15);
    expect(store.camera.centerY).toBe(-7.5);
  });

  it('selection highlights exactly its closed neighborhood', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    const store = makeStore(api);
    await store.openGraph('g');
    store.select('b');
    expect(store.highlighted).toEqual(new Set(['a', 'b', 'c']));
    store.select(null);
    expect(store.highlighted.size).toBe(0);
  });

  it('choosing a search result centers the camera and selects the node', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    api.searchImpl = async () => [
      { id: 'c', x: 20, y: -10, weighted_degree: 2, counterpart_count: 1 },
    ];
    const store = makeStore(api);
    await store.openGraph('g');
    await store.search('c');
    expect(store.searchResults.map((h) => h.id)).toEqual(['c']);
    store.chooseResult(store.searchResults[0]);
    expect(store.camera.centerX).toBe(20);
    expect(store.camera.centerY).toBe(-10);
    expect(store.selection).toBe('c');
    expect(store.highlighted).toEqual(new Set(['b', 'c', 'd']));
  });

  it('empty query clears results; a miss sets the no-results state', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    const store = makeStore(api);
    await store.openGraph('g');
    await store.search('zzz');
    expect(store.noResults).toBe(true);
    await store.search('');
    expect(store.searchResults).toEqual([]);
    expect(store.noResults).toBe(false);
  });

  it('discards stale search responses by token', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    const first = deferred<SearchHit[]>();
    const second = deferred<SearchHit[]>();
    const pending = [first, second];
    api.searchImpl = () => pending.shift()!.promise;
    const store = makeStore(api);
    await store.openGraph('g');

    const p1 = store.search('old');
    const p2 = store.search('new');
    second.resolve([
      { id: 'd', x: 30, y: -15, weighted_degree: 1, counterpart_count: 1 },
    ]);
    await p2;
    first.resolve([
      { id: 'a', x: 0, y: 0, weighted_degree: 1, counterpart_count: 1 },
    ]);
    await p1;
    // the older response must not overwrite the newer one
    expect(store.searchResults.map((h) => h.id)).toEqual(['d']);
  });

  it('expand replaces the view with the API neighborhood', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    const ball = doc(['b', 'a', 'c'], [['a', 'b'], ['b', 'c']]);
    api.neighborhoodImpl = async (n, d) => {
      expect(n).toBe('b');
      expect(d).toBe(1);
      return ball;
    };
    const store = makeStore(api);
    await store.openGraph('g');
    store.select('b');
    await store.expand(1);
    expect(store.document).toBe(ball);
    expect(store.highlighted).toEqual(new Set(['a', 'b', 'c']));
  });

  it('repeated expand at the same depth skips the request', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    api.neighborhoodImpl = async () => doc(['b'], []);
    const store = makeStore(api);
    await store.openGraph('g');
    store.select('b');
    await store.expand(0);
    await store.expand(0);
    expect(api.neighborhoodCalls).toBe(1);
    await store.expand(1); // different depth: a real request again
    expect(api.neighborhoodCalls).toBe(2);
  });

  it('a failed expand reports the error and leaves the view intact', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    api.neighborhoodImpl = async () => {
      throw new ApiError(404, 'node not found', 'ghost');
    };
    const errors: string[] = [];
    const store = makeStore(api, errors);
    await store.openGraph('g');
    store.select('b');
    await store.expand(2);
    expect(store.document).toBe(PATH);
    expect(errors).toHaveLength(1);
    expect(errors[0]).toContain('node not found');
  });

  it('blocks invalid projection thresholds client-side', async () => {
    const api = new FakeApi();
    const store = makeStore(api);
    await store.submitProjection({ mode: 'author', min_degree: 0, min_shared: 1 });
    expect(api.postCalls).toBe(0);
    expect(store.guidance).toContain('at least 1');
  });

  it('a 422 keeps the prior view and shows threshold guidance', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    api.postImpl = async () => {
      throw new ApiError(422, 'too many nodes', 'raise min_degree or min_shared');
    };
    const store = makeStore(api);
    await store.openGraph('g');
    store.select('b');
    await store.submitProjection({ mode: 'author', min_degree: 1, min_shared: 1 });
    expect(store.guidance).toContain('thresholds too loose');
    expect(store.guidance).toContain('min_degree');
    expect(store.document).toBe(PATH);
    expect(store.activeGraph).toBe('g');
    expect(store.selection).toBe('b');
  });

  it('a 201 switches to the newly created graph', async () => {
    const api = new FakeApi();
    api.docs.set('g', PATH);
    const fresh = doc(['x', 'y'], [['x', 'y']]);
    api.docs.set('projection-0001', fresh);
    api.graphs = [
      { id: 'g', mode: 'author', node_count: 4, edge_count: 3 },
      { id: 'projection-0001', mode: 'project', node_count: 2, edge_count: 1 },
    ];
    const store = makeStore(api);
    await store.openGraph('g');
    await store.submitProjection({ mode: 'project', min_degree: 1, min_shared: 1 });
    expect(store.activeGraph).toBe('projection-0001');
    expect(store.document).toBe(fresh);
    expect(store.graphs.map((g) => g.id)).toContain('projection-0001');
  });

  it('flags structurally broken documents instead of rendering them', async () => {
    const api = new FakeApi();
    const broken = doc(['a'], []);
    broken.edges.push({ source: 'a', target: 'ghost', weight: 1 });
    api.docs.set('g', broken);
    const store = makeStore(api);
    await store.openGraph('g');
    expect(store.documentError).toContain('missing node');
  });
});
