"""Regenerate src/chromacount/data/bipartite7.g6: every connected
bipartite graph on at most 7 vertices, one graph6 line each, drawn from
the networkx graph atlas (isomorph-free by construction).

Usage: python3 scripts/make_corpus.py
"""

import pathlib
import sys

import networkx as nx

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from chromacount.graph import from_edges, to_graph6  # noqa: E402


def main():
    out = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < 1 or n > 7:
            continue
        if not nx.is_connected(g) or not nx.is_bipartite(g):
            continue
        relabel = {v: i for i, v in enumerate(sorted(g.nodes()))}
        edges = sorted((min(relabel[u], relabel[v]), max(relabel[u], relabel[v]))
                       for u, v in g.edges())
        out.append(to_graph6(from_edges(n, edges)))
    dest = (pathlib.Path(__file__).resolve().parents[1]
            / "src" / "chromacount" / "data" / "bipartite7.g6")
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_text("\n".join(out) + "\n")
    print(f"wrote {len(out)} graphs to {dest}")


if __name__ == "__main__":
    main()
