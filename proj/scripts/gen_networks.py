#!/usr/bin/env python3
"""Generate the synthetic stand-in networks shipped under data/.

The public benchmark instances commonly used for pipeline studies are not
redistributable, so we ship synthetic networks with the same node and edge
counts. Layout: random points in a disk, Euclidean minimum spanning tree,
then either extra short chords (|E| > |V|-1) or the longest tree edges
removed (|E| < |V|-1). Deterministic; rerun to regenerate byte-identical
files.
"""
import json
import math
import pathlib
import random

SPECS = [
    ("gessler", 12, 14),
    ("jilin", 28, 34),
    ("richmond", 48, 44),
    ("foss", 37, 58),
    ("rural", 48, 60),
    ("zj", 60, 85),
]

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def gen(name, n_nodes, n_edges, seed):
    rng = random.Random(seed)
    pts = []
    while len(pts) < n_nodes:
        x, y = rng.uniform(-1, 1), rng.uniform(-1, 1)
        if x * x + y * y > 1.0:
            continue
        if all((x - px) ** 2 + (y - py) ** 2 > 0.004 for px, py in pts):
            pts.append((x, y))

    def dist(i, j):
        return math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1])

    # Prim MST
    in_tree = {0}
    tree = []
    while len(in_tree) < n_nodes:
        best = None
        for i in in_tree:
            for j in range(n_nodes):
                if j in in_tree:
                    continue
                if best is None or dist(i, j) < best[0]:
                    best = (dist(i, j), i, j)
        tree.append((best[1], best[2]))
        in_tree.add(best[2])

    edges = sorted(tree, key=lambda e: dist(*e))
    if n_edges < len(edges):
        edges = edges[: n_edges]  # drop the longest tree edges -> forest
    else:
        have = {tuple(sorted(e)) for e in edges}
        chords = sorted(
            (
                (dist(i, j), i, j)
                for i in range(n_nodes)
                for j in range(i + 1, n_nodes)
                if (i, j) not in have
            ),
        )
        for d, i, j in chords:
            if len(edges) == n_edges:
                break
            edges.append((i, j))

    # scale so the farthest node sits at radius ~5
    cx = (max(p[0] for p in pts) + min(p[0] for p in pts)) / 2
    cy = (max(p[1] for p in pts) + min(p[1] for p in pts)) / 2
    r = max(math.hypot(p[0] - cx, p[1] - cy) for p in pts)
    s = 5.0 / r
    pts = [((p[0] - cx) * s, (p[1] - cy) * s) for p in pts]

    doc = {
        "name": name,
        "nodes": [
            {"id": f"n{i+1}", "x": round(pts[i][0], 6), "y": round(pts[i][1], 6)}
            for i in range(n_nodes)
        ],
        "edges": [
            {
                "id": f"e{k+1}",
                "source": f"n{i+1}",
                "target": f"n{j+1}",
                "weight": round(rng.uniform(0.5, 2.0), 3),
            }
            for k, (i, j) in enumerate(edges)
        ],
    }
    return doc


def main():
    OUT.mkdir(exist_ok=True)
    for k, (name, nv, ne) in enumerate(SPECS):
        doc = gen(name, nv, ne, seed=1000 + k)
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(doc, indent=1) + "\n")
        print(f"{name}: |V|={len(doc['nodes'])} |E|={len(doc['edges'])} -> {path}")


if __name__ == "__main__":
    main()
