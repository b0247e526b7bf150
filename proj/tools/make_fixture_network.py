#!/usr/bin/env python3
"""Writes the bundled 60-subsection fixture network.

Subsections are laid out on a 6 x 10 grid of 46 m x 36 m blocks separated by
4 m paths. Blocks sharing a side are neighbours, plus a few irregular diagonal contacts, with a few
edits so the degree range matches a real plantation layout (one long block,
node 43, touching 10 others; one isolated strip, node 54, touching 1).
"""
import pathlib
import sys

ROWS, COLS = 6, 10
W, H, GAP = 46.0, 36.0, 4.0
UNPLANTED = {9, 50}


def node(r, c):
    return r * COLS + c


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    edges = set()
    for r in range(ROWS):
        for c in range(COLS):
            for dr, dc in ((0, 1), (1, 0)):
                rr, cc = r + dr, c + dc
                if rr < ROWS and cc < COLS:
                    edges.add((node(r, c), node(rr, cc)))
    # Irregular blocks that also touch a diagonal neighbour.
    edges |= {(1, 12), (6, 15), (13, 24), (17, 28), (20, 31), (36, 47), (38, 47)}
    # Node 54 is a narrow strip reachable only from 44.
    edges -= {(53, 54), (54, 55)}
    # Node 43 is a long block reaching across two columns and one row up.
    edges |= {(32, 43), (34, 43), (43, 52), (41, 43), (43, 45), (23, 43)}
    # Paths wide enough that these blocks do not count as touching.
    edges -= {(4, 5), (25, 26), (58, 59)}

    with open(out / "network.csv", "w") as f:
        f.write("u,v\n")
        for u, v in sorted(edges):
            f.write(f"{u},{v}\n")
    with open(out / "nodes.csv", "w") as f:
        f.write("id,planted\n")
        for n in range(ROWS * COLS):
            f.write(f"{n},{0 if n in UNPLANTED else 1}\n")
    with open(out / "footprints.csv", "w") as f:
        f.write("node_id,vertex_index,x,y\n")
        for r in range(ROWS):
            for c in range(COLS):
                x0, y0 = c * (W + GAP), r * (H + GAP)
                square = [(x0, y0), (x0 + W, y0), (x0 + W, y0 + H), (x0, y0 + H)]
                for i, (x, y) in enumerate(square):
                    f.write(f"{node(r, c)},{i},{x:g},{y:g}\n")

    deg = [0] * (ROWS * COLS)
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    print(f"nodes={ROWS * COLS} edges={len(edges)} max_degree={max(deg)} (node {deg.index(max(deg))}) "
          f"min_degree={min(deg)} (node {deg.index(min(deg))})")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/fixture")
