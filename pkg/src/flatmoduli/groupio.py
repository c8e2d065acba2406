"""Reading and writing group files, and the bundled catalog.

A group file is JSON::

    {"dim": 2, "name": "pg",
     "generators": [{"linear": [["1", "0"], ["0", "-1"]], "translation": ["1/2", "0"]},
                    ...],
     "expect": {"bieberbach": true, "teich_dim": 2, "h1": [2]}}

Matrix and vector entries are rational strings ``"p/q"`` (plain JSON
integers are accepted too).  Catalog entries are addressed ``family/name``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .crystallo import AffineMap, CrystGroup, normalize
from .errors import CatalogNotFound, DimensionMismatch, ParseError

CATALOG_PACKAGE = "flatmoduli.catalog"


def _rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"boolean is not a rational entry: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str):
        raise ParseError(f"entries must be rational strings, got {x!r}")
    try:
        return Fraction(x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}: {exc}") from None


def _fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_generators(data: dict) -> tuple[int, list[AffineMap]]:
    if not isinstance(data, dict):
        raise ParseError("group document must be a JSON object")
    try:
        dim = data["dim"]
        raw = data["generators"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"dim must be a positive integer, got {dim!r}")
    if not isinstance(raw, list) or not raw:
        raise ParseError("generators must be a non-empty list")
    gens = []
    for k, g in enumerate(raw):
        if not isinstance(g, dict) or "linear" not in g:
            raise ParseError(f"generator {k} needs a 'linear' entry")
        lin = g["linear"]
        tr = g.get("translation", ["0"] * dim)
        if not isinstance(lin, list) or len(lin) != dim or any(
            not isinstance(r, list) or len(r) != dim for r in lin
        ):
            raise DimensionMismatch(f"generator {k}: linear part is not {dim}x{dim}")
        if not isinstance(tr, list) or len(tr) != dim:
            raise DimensionMismatch(f"generator {k}: translation is not of length {dim}")
        L = [[_rational(x) for x in row] for row in lin]
        t = [_rational(x) for x in tr]
        gens.append(AffineMap.make(L, t))
    return dim, gens


def parse_group(text: str | bytes | dict, max_order: int = 2000) -> CrystGroup:
    """Parse a group document and normalize it."""
    if isinstance(text, dict):
        data = text
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    _, gens = parse_generators(data)
    expect = data.get("expect") or {}
    if not isinstance(expect, dict):
        raise ParseError("expect must be an object")
    expect = {k: (tuple(v) if isinstance(v, list) else v) for k, v in expect.items()}
    G = normalize(gens, max_order=max_order)
    return G.with_name(data.get("name"), expect)


def group_document(G: CrystGroup) -> dict:
    doc = {
        "dim": G.dim,
        "generators": [
            {
                "linear": [[_fmt(x) for x in row] for row in g.linear],
                "translation": [_fmt(x) for x in g.translation],
            }
            for g in G.generators()
        ],
    }
    if G.name:
        doc["name"] = G.name
    if G.expect:
        doc["expect"] = {k: (list(v) if isinstance(v, tuple) else v) for k, v in G.expect}
    return doc


def serialize_group(G: CrystGroup) -> str:
    return json.dumps(group_document(G), indent=1, sort_keys=True)


def load_group_file(path: str | Path, max_order: int = 2000) -> CrystGroup:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogNotFound(f"cannot read {p}: {exc}") from None
    G = parse_group(text, max_order=max_order)
    if not G.name:
        G = G.with_name(p.stem, G.expectations)
    return G


# ---------------------------------------------------------------------------
# catalog


def catalog_root() -> Path:
    return Path(str(resources.files(CATALOG_PACKAGE)))


@lru_cache(maxsize=None)
def catalog_names() -> tuple[str, ...]:
    root = catalog_root()
    names = [f"{p.parent.name}/{p.stem}" for p in root.glob("*/*.json")]
    return tuple(sorted(names, key=_catalog_sort_key))


def _catalog_sort_key(name: str):
    family, short = name.split("/")
    fam_rank = {"wallpaper": 0, "bieberbach3": 1, "dim4": 2}.get(family, 9)
    if family == "wallpaper":
        return (fam_rank, WALLPAPER_ORDER.index(short) if short in WALLPAPER_ORDER else 99, short)
    return (fam_rank, 0, short)


WALLPAPER_ORDER = [
    "p1", "p2", "pm", "pg", "cm", "pmm", "pmg", "pgg", "cmm",
    "p4", "p4m", "p4g", "p3", "p3m1", "p31m", "p6", "p6m",
]


def resolve_catalog_name(name: str) -> str:
    names = catalog_names()
    if name in names:
        return name
    matches = [n for n in names if n.split("/")[1] == name]
    if len(matches) == 1:
        return matches[0]
    if len(matches) > 1:
        raise CatalogNotFound(f"ambiguous catalog name {name!r}: {matches}")
    raise CatalogNotFound(f"no catalog entry {name!r}")


@lru_cache(maxsize=None)
def load_catalog(name: str, max_order: int = 2000) -> CrystGroup:
    full = resolve_catalog_name(name)
    path = catalog_root() / f"{full}.json"
    G = parse_group(path.read_text(encoding="utf-8"), max_order=max_order)
    return G.with_name(full, G.expectations)


def load_any(ref: str, max_order: int = 2000) -> CrystGroup:
    """A path to a group file, or a catalog name."""
    p = Path(ref)
    if p.suffix == ".json" and p.exists():
        return load_group_file(p, max_order)
    return load_catalog(ref, max_order)
