"""Compare in_NGamma with the brute-force conjugation oracle.

Every integer matrix of height at most --height that normalizes the point
group is tested for every catalog group of dimension at most --max-dim.
Usage: python scripts/normalizer_oracle_sweep.py [--height 2] [--max-dim 3]
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import in_NGamma_oracle, normalizing_subset, unimodular_matrices  # noqa: E402

from flatmoduli.cohomology import in_NGamma  # noqa: E402
from flatmoduli.groupio import catalog_names, load_catalog  # noqa: E402


@dataclass(frozen=True)
class SweepConfig:
    height: int = 2
    max_dim: int = 3


def run(cfg: SweepConfig) -> int:
    mats = {}
    bad = 0
    for name in catalog_names():
        G = load_catalog(name)
        if G.dim > cfg.max_dim:
            continue
        if G.dim not in mats:
            mats[G.dim] = unimodular_matrices(G.dim, cfg.height)
        start = time.perf_counter()
        cands = normalizing_subset(mats[G.dim], G)
        hits = agree = 0
        for g in cands:
            ours = in_NGamma(g.tolist(), G)
            hits += ours
            if ours == in_NGamma_oracle(g, G):
                agree += 1
            else:
                bad += 1
                print(f"  disagreement {name}: {g.tolist()}")
        print(f"{name:<24} normalizing {len(cands):>6}  in N_Gamma {hits:>6}  agree {agree:>6}  {time.perf_counter() - start:.2f}s")
    print(f"disagreements: {bad}")
    return bad


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--height", type=int, default=2)
    ap.add_argument("--max-dim", type=int, default=3)
    a = ap.parse_args(argv)
    return 1 if run(SweepConfig(a.height, a.max_dim)) else 0


if __name__ == "__main__":
    sys.exit(main())
