#!/usr/bin/env python3
"""Generate LFR benchmark fixtures with networkx.

Writes the directory layout the `flockcut reproduce fig8` command and the
LFR acceptance check expect:

    OUT/mu<value>/trial<k>/network.dat     (one-indexed edge list)
    OUT/mu<value>/trial<k>/community.dat   ("vertex community", one-indexed)

Defaults follow the published benchmark setup: n=1000, degree exponent 2,
community-size exponent just above 1, average degree 10.

Usage:
    python3 scripts/make_lfr_fixtures.py OUT_DIR [--mus 0.1,0.2,...]
        [--trials 10] [--n 1000] [--seed 0]
"""

import argparse
import sys
from pathlib import Path

import networkx as nx


def generate_one(n, mu, seed):
    """One LFR graph; retries nearby seeds because the generator can fail."""
    for attempt in range(20):
        try:
            return nx.LFR_benchmark_graph(
                n=n,
                tau1=2.0,
                tau2=1.1,
                mu=mu,
                average_degree=10,
                max_degree=50,
                min_community=20,
                max_community=100,
                seed=seed + 1000 * attempt,
            )
        except nx.ExceededMaxIterations:
            continue
    raise RuntimeError(f"LFR generation failed for mu={mu}, seed={seed}")


def write_fixture(g, trial_dir: Path) -> None:
    trial_dir.mkdir(parents=True, exist_ok=True)
    with open(trial_dir / "network.dat", "w") as fh:
        for u, v in sorted(g.edges):
            fh.write(f"{u + 1}\t{v + 1}\n")
    communities = sorted({frozenset(g.nodes[v]["community"]) for v in g})
    label_of = {}
    for label, members in enumerate(communities):
        for v in members:
            label_of[v] = label
    with open(trial_dir / "community.dat", "w") as fh:
        for v in sorted(g.nodes):
            fh.write(f"{v + 1}\t{label_of[v] + 1}\n")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", help="output directory")
    parser.add_argument("--mus", default="0.1,0.2,0.3,0.4,0.5,0.6")
    parser.add_argument("--trials", type=int, default=10)
    parser.add_argument("--n", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    out = Path(args.out)
    mus = [float(s) for s in args.mus.split(",") if s]
    for mu in mus:
        for trial in range(args.trials):
            g = generate_one(args.n, mu, args.seed + 37 * trial + int(mu * 1e6))
            trial_dir = out / f"mu{mu:g}" / f"trial{trial}"
            write_fixture(g, trial_dir)
            print(f"wrote {trial_dir} (n={g.number_of_nodes()}, m={g.number_of_edges()})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
