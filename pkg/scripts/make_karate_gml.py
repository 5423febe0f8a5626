#!/usr/bin/env python3
"""Write the classic 34-vertex karate-club network as a GML file.

The graph ships with networkx, so no network access is needed. The two
known factions are stored as the per-node `value` attribute (ground
truth for the evaluation tools).

Usage: python3 scripts/make_karate_gml.py [OUT.gml]   (default tests/data/karate.gml)
"""

import sys
from pathlib import Path

import networkx as nx


def main() -> int:
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/data/karate.gml")
    out.parent.mkdir(parents=True, exist_ok=True)
    g = nx.karate_club_graph()
    lines = ["graph ["]
    for node in sorted(g.nodes):
        club = g.nodes[node]["club"]
        value = 0 if club == "Mr. Hi" else 1
        lines += ["  node [", f"    id {node}", f'    label "v{node}"',
                  f"    value {value}", "  ]"]
    for u, v in sorted(g.edges):
        lines += ["  edge [", f"    source {u}", f"    target {v}", "  ]"]
    lines.append("]")
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out} (n={g.number_of_nodes()}, m={g.number_of_edges()})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
