"""Analyze every catalog group and print a one-line summary with timings.

Usage: python scripts/analyze_catalog.py [--seed N] [--height-bound B] [--json]
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, replace

from flatmoduli.config import DEFAULT_CONFIG
from flatmoduli.groupio import catalog_names
from flatmoduli.moduli import analyze


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    height_bound: int = DEFAULT_CONFIG.height_bound
    as_json: bool = False


def run(cfg: RunConfig) -> list[dict]:
    config = replace(DEFAULT_CONFIG, seed=cfg.seed, height_bound=cfg.height_bound)
    rows = []
    for name in catalog_names():
        start = time.perf_counter()
        doc = analyze(name, config).to_dict()
        rows.append(
            {
                "name": name,
                "seconds": round(time.perf_counter() - start, 3),
                "teich_dim": doc["teichmuller"]["dimension"],
                "h1": doc["h1"]["group"],
                "finite_kernel": doc["mcg"]["finite_kernel"]["order"],
                "shape": doc["moduli"]["shape"],
            }
        )
    return rows


def main(argv=None) -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--height-bound", type=int, default=DEFAULT_CONFIG.height_bound)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args(argv)
    rows = run(RunConfig(a.seed, a.height_bound, a.json))
    if a.json:
        print(json.dumps(rows, ensure_ascii=False, indent=1))
        return
    for r in rows:
        print(f"{r['name']:<24} {r['seconds']:>7.3f}s  dim {r['teich_dim']:<3} H1 {r['h1']:<14} |G| {r['finite_kernel']:<3} {r['shape']}")
    print(f"total {sum(r['seconds'] for r in rows):.2f}s")


if __name__ == "__main__":
    main()
