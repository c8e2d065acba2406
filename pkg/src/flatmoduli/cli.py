"""Command line interface.

Exit codes: 0 on success, 2 for unreadable input, 3 when an analysis fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from .config import DEFAULT_CONFIG, AnalysisConfig
from .errors import AnalysisError, InputError


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1)


def _config(args) -> AnalysisConfig:
    return replace(
        DEFAULT_CONFIG,
        height_bound=args.height_bound,
        max_order=args.max_order,
        seed=args.seed,
    )


def _load(ref: str, config: AnalysisConfig):
    from .groupio import load_any

    return load_any(ref, config.max_order)


def cmd_analyze(args) -> str:
    from .moduli import analyze

    report = analyze(_load(args.group, _config(args)), _config(args))
    return dumps(report.to_dict()) + "\n" if args.json else report.to_text()


def cmd_report(args) -> str:
    from .moduli import analyze

    report = analyze(_load(args.group, _config(args)), _config(args))
    return report.to_text() if args.text else dumps(report.to_dict()) + "\n"


def cmd_teich(args) -> str:
    from .moduli import teichmuller_descriptor

    d = teichmuller_descriptor(_load(args.group, _config(args)), args.seed)
    if args.json:
        return dumps(d.to_dict()) + "\n"
    return f"{d.text}\ndimension {d.dimension}\n"


def cmd_h1(args) -> str:
    from .cohomology import class_of, h1

    G = _load(args.group, _config(args))
    grp, _ = h1(G)
    cls = class_of(G)
    if args.json:
        return dumps({"group": str(grp), "invariant_factors": list(grp.invariant_factors), "class": list(cls)}) + "\n"
    return f"H^1 = {grp}\nclass = {list(cls)}\n"


def cmd_mcg(args) -> str:
    from .normalizer import mcg_report

    rep = mcg_report(_load(args.group, _config(args)), _config(args))
    return dumps(rep.to_dict()) + "\n"


def _batch_one(job):
    path, config = job
    from .moduli import analyze

    try:
        return path, 0, analyze(_load(path, config), config).to_dict()
    except InputError as exc:
        return path, 2, {"error": type(exc).__name__, "message": str(exc)}
    except AnalysisError as exc:
        return path, 3, {"error": type(exc).__name__, "message": str(exc)}


def cmd_batch(args) -> tuple[str, int]:
    root = Path(args.directory)
    if not root.is_dir():
        raise InputError(f"not a directory: {root}")
    files = sorted(str(p) for p in root.rglob("*.json"))
    config = _config(args)
    jobs = [(f, config) for f in files]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_one, jobs))
    else:
        results = [_batch_one(j) for j in jobs]
    code = max((c for _, c, _ in results), default=0)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for path, _, doc in results:
            name = Path(path).relative_to(root).with_suffix(".report.json")
            target = out / name.as_posix().replace("/", "__")
            target.write_text(dumps(doc) + "\n", encoding="utf-8")
        return f"wrote {len(results)} reports to {out}\n", code
    lines = [json.dumps({"file": p, "report": d}, sort_keys=True, ensure_ascii=False) for p, _, d in results]
    return "\n".join(lines) + ("\n" if lines else ""), code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--height-bound", type=int, default=DEFAULT_CONFIG.height_bound, help="coefficient bound for unimodular searches")
    common.add_argument("--max-order", type=int, default=DEFAULT_CONFIG.max_order, help="largest point group to close")
    common.add_argument("--seed", type=int, default=DEFAULT_CONFIG.seed)

    p = argparse.ArgumentParser(prog="flatmoduli", description="Moduli of flat metrics on closed flat orbifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full analysis of a group file or catalog name")
    a.add_argument("group")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("report", parents=[common], help="full report as JSON or text")
    r.add_argument("group")
    fmt = r.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--text", action="store_true")
    r.set_defaults(func=cmd_report)

    b = sub.add_parser("batch", parents=[common], help="analyze every *.json below a directory")
    b.add_argument("directory")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", help="write one report per group into this directory")
    b.set_defaults(func=cmd_batch)

    for name, func, text in (
        ("teich", cmd_teich, "Teichmüller space descriptor"),
        ("h1", cmd_h1, "H^1 and the class of the vector system"),
        ("mcg", cmd_mcg, "mapping class group data"),
    ):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("group")
        if name != "mcg":
            s.add_argument("--json", action="store_true")
        s.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AnalysisError as exc:
        print(f"analysis failed ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 3
    code = 0
    if isinstance(out, tuple):
        out, code = out
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
