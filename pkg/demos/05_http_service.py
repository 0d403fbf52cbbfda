"""
Serving graphs over HTTP
========================

Stand up the API server in a background thread, then query it with
plain urllib: list snapshots, search, pull a neighborhood document,
and request a fresh projection with different thresholds.
"""

import json
import socket
import threading
import time
import urllib.parse
import urllib.request

import uvicorn

from collabgraph import (
    GraphRegistry,
    GraphSnapshot,
    LayoutParams,
    ProjectionParams,
    build_bipartite,
    create_app,
    project,
    render_attributes,
    run_layout,
)

pairs = [
    (f"team{c}/repo{i}", f"{c}{j} <{c}{j}@team{c}.org>")
    for c in "ab"
    for i in range(2)
    for j in range(3)
] + [("teama/repo0", "joint <joint@both.org>"), ("teamb/repo0", "joint <joint@both.org>")]

source = build_bipartite(pairs)
g = project(source, ProjectionParams("author"))
snapshot = GraphSnapshot.build(
    g, run_layout(g, LayoutParams(seed=1, max_iterations=60)), render_attributes(g)
)

registry = GraphRegistry(source=source)
registry.register("authors", snapshot)
app = create_app(registry)

# Run uvicorn on a free port inside this process.
with socket.socket() as s:
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
server = uvicorn.Server(uvicorn.Config(app, port=port, log_level="error"))
threading.Thread(target=server.run, daemon=True).start()
while not server.started:
    time.sleep(0.02)
base = f"http://127.0.0.1:{port}"


def get(path):
    with urllib.request.urlopen(base + path) as resp:
        return json.loads(resp.read())


print("available graphs:", get("/api/graphs"))

hits = get("/api/graphs/authors/search?q=" + urllib.parse.quote("joint"))
print("search 'joint':", [h["id"] for h in hits])

center = urllib.parse.quote("joint <joint@both.org>")
ego = get(f"/api/graphs/authors/nodes/{center}/neighborhood?depth=1")
print("depth-1 neighborhood:", [n["id"] for n in ego["nodes"]])

# POST a re-projection; the server computes it from the stored
# bipartite source and registers it under a fresh id.
body = json.dumps({"mode": "project", "min_degree": 1, "min_shared": 1}).encode()
req = urllib.request.Request(
    base + "/api/projections", data=body, headers={"Content-Type": "application/json"}
)
with urllib.request.urlopen(req) as resp:
    new_id = json.loads(resp.read())["id"]
print("created:", new_id)
print("now serving:", [g["id"] for g in get("/api/graphs")])

server.should_exit = True
