#!/usr/bin/env python3
"""Regenerate the synthetic SOC fixtures in this directory.

Ballots come from a mixture of Mallows models whose centers are rotations of
one order, which produces majority cycles and hence nonempty H1 diagrams.
"""
import argparse
import collections
import pathlib

import numpy as np


def mallows(rng, center, phi):
    # repeated insertion sampling
    order = []
    for i, item in enumerate(center):
        weights = phi ** np.arange(i, -1, -1)
        pos = rng.choice(i + 1, p=weights / weights.sum())
        order.insert(pos, item)
    return tuple(order)


def write_soc(path, title, n, ballots):
    # rows keep first-appearance order so voter slices stay mixed
    counts = collections.Counter(ballots)
    rows = list(counts.items())
    with open(path, "w") as f:
        f.write(f"# FILE NAME: {path.name}\n# TITLE: {title}\n# DATA TYPE: soc\n")
        f.write(f"# NUMBER ALTERNATIVES: {n}\n# NUMBER VOTERS: {len(ballots)}\n")
        f.write(f"# NUMBER UNIQUE ORDERS: {len(rows)}\n")
        for a in range(1, n + 1):
            f.write(f"# ALTERNATIVE NAME {a}: item {a}\n")
        for order, c in rows:
            f.write(f"{c}: {','.join(str(a + 1) for a in order)}\n")


def generate(rng, n, voters, phi, shifts):
    base = list(range(n))
    ballots = []
    for v in range(voters):
        s = shifts[v % len(shifts)]
        center = base[s:] + base[:s]
        ballots.append(mallows(rng, center, phi))
    return ballots


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--out", default=pathlib.Path(__file__).parent, type=pathlib.Path)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    write_soc(args.out / "synthetic-irish.soc", "synthetic election", 12,
              generate(rng, 12, 4000, 0.7, [0, 4, 8]))
    write_soc(args.out / "synthetic-sushi.soc", "synthetic food ranking", 12,
              generate(rng, 12, 5000, 0.85, [0, 4, 8]))


if __name__ == "__main__":
    main()
