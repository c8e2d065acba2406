"""Regenerate tests/golden/*.json from the current analysis of the catalog.

Usage: python scripts/regen_golden.py [--seed N]
Review the diff before committing: golden files pin the report format.
"""
from __future__ import annotations

import argparse
from dataclasses import replace
from pathlib import Path

from flatmoduli.cli import dumps
from flatmoduli.config import DEFAULT_CONFIG
from flatmoduli.groupio import catalog_names
from flatmoduli.moduli import analyze

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def golden_path(name: str) -> Path:
    return GOLDEN / (name.replace("/", "__") + ".json")


def main(argv=None) -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    config = replace(DEFAULT_CONFIG, seed=args.seed)
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name in catalog_names():
        golden_path(name).write_text(dumps(analyze(name, config).to_dict()) + "\n", encoding="utf-8")
        print("wrote", golden_path(name).name)


if __name__ == "__main__":
    main()
