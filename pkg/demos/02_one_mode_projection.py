"""
Weighted one-mode projection
============================

Turn a bipartite project/author structure into an author-author
collaboration graph (edge weight = number of shared projects) and a
project-project graph (edge weight = number of shared authors), with
degree and co-occurrence thresholds.
"""

from collabgraph import ProjectionParams, build_bipartite, graph_stats, project

# Three projects; Bea contributes to all of them, the others to one or
# two. Weights count how many projects a pair of authors shares.
pairs = [
    ("proj/app", "Ann <ann@dev.org>"),
    ("proj/app", "Bea <bea@dev.org>"),
    ("proj/lib", "Bea <bea@dev.org>"),
    ("proj/lib", "Cal <cal@dev.org>"),
    ("proj/lib", "Ann <ann@dev.org>"),
    ("proj/web", "Bea <bea@dev.org>"),
    ("proj/web", "Cal <cal@dev.org>"),
]

bg = build_bipartite(pairs)
print(f"bipartite: {len(bg.projects)} projects x {len(bg.authors)} authors")

# Author mode: nodes are authors, counterpart_count is how many
# projects each one touched (kept even when thresholds prune edges).
authors = project(bg, ProjectionParams(mode="author", min_degree=1, min_shared=1))
print("\nauthor graph:")
for i, author_id in enumerate(authors.ids):
    print(f"  {author_id}  projects={authors.counterpart_count[i]}")
for s, d, w in zip(authors.edge_src, authors.edge_dst, authors.edge_weight):
    print(f"  {authors.ids[s]} -- {authors.ids[d]}  weight={w}")

# Raising min_shared keeps only repeat collaborations.
strong = project(bg, ProjectionParams(mode="author", min_shared=2, drop_isolated=True))
print("\npairs with >= 2 shared projects:")
for s, d, w in zip(strong.edge_src, strong.edge_dst, strong.edge_weight):
    print(f"  {strong.ids[s]} -- {strong.ids[d]}  weight={w}")

# Project mode is the transpose view: projects linked by shared authors.
projects = project(bg, ProjectionParams(mode="project"))
print("\nproject graph:", graph_stats(projects))
for s, d, w in zip(projects.edge_src, projects.edge_dst, projects.edge_weight):
    print(f"  {projects.ids[s]} -- {projects.ids[d]}  shared authors={w}")
