"""Write the bundled catalog of group files.

Each entry lists affine generators in a lattice basis together with the unit
translations.  ``expect`` blocks hold independently known facts: torsion
freeness, Teichmuller dimensions (dimension of the space of invariant
symmetric forms) and first cohomology checked by exhaustive enumeration in
the test suite.

Usage: python scripts/make_catalog.py [output_dir]
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1] / "src" / "flatmoduli" / "catalog"

I2 = [[1, 0], [0, 1]]
MX = [[1, 0], [0, -1]]       # reflection across the first axis
MY = [[-1, 0], [0, 1]]
MINUS = [[-1, 0], [0, -1]]
SWAP = [[0, 1], [1, 0]]
NSWAP = [[0, -1], [-1, 0]]
J = [[0, -1], [1, 0]]        # quarter turn
R3 = [[0, -1], [1, -1]]      # third of a turn in a 120-degree basis
R6 = [[1, -1], [1, 0]]       # sixth of a turn in the same basis


def g(linear, translation=None):
    n = len(linear)
    t = translation or ["0"] * n
    return {"linear": [[str(x) for x in row] for row in linear], "translation": [str(x) for x in t]}


def units(n):
    return [g([[int(i == j) for j in range(n)] for i in range(n)], [str(int(i == k)) for k in range(n)]) for i in range(n)]


# name: (generators, bieberbach, teich_dim, h1)
WALLPAPER = {
    "p1": ([], True, 3, []),
    "p2": ([g(MINUS)], False, 3, []),
    "pm": ([g(MX)], False, 2, [2]),
    "pg": ([g(MX, ["1/2", "0"])], True, 2, [2]),
    "cm": ([g(SWAP)], False, 2, []),
    "pmm": ([g(MX), g(MY)], False, 2, [2, 2]),
    "pmg": ([g(MX, ["1/2", "0"]), g(MY, ["1/2", "0"])], False, 2, [2, 2]),
    "pgg": ([g(MX, ["1/2", "1/2"]), g(MY, ["1/2", "1/2"])], False, 2, [2, 2]),
    "cmm": ([g(SWAP), g(MINUS)], False, 2, []),
    "p4": ([g(J)], False, 1, []),
    "p4m": ([g(J), g(MX)], False, 1, [2]),
    "p4g": ([g(J), g(MX, ["1/2", "1/2"])], False, 1, [2]),
    "p3": ([g(R3)], False, 1, []),
    "p3m1": ([g(R3), g(NSWAP)], False, 1, []),
    "p31m": ([g(R3), g(SWAP)], False, 1, []),
    "p6": ([g(R6)], False, 1, []),
    "p6m": ([g(R6), g(SWAP)], False, 1, []),
}

E3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
BIEBERBACH3 = {
    "G1": ([], True, 6, []),
    "G2": ([g([[1, 0, 0], [0, -1, 0], [0, 0, -1]], ["1/2", "0", "0"])], True, 4, [2]),
    "G3": ([g([[1, 0, 0], [0, 0, -1], [0, 1, -1]], ["1/3", "0", "0"])], True, 2, [3]),
    "G4": ([g([[1, 0, 0], [0, 0, -1], [0, 1, 0]], ["1/4", "0", "0"])], True, 2, [4]),
    "G5": ([g([[1, 0, 0], [0, 1, -1], [0, 1, 0]], ["1/6", "0", "0"])], True, 2, [6]),
    "G6": (
        [
            g([[1, 0, 0], [0, -1, 0], [0, 0, -1]], ["1/2", "1/2", "0"]),
            g([[-1, 0, 0], [0, 1, 0], [0, 0, -1]], ["0", "1/2", "1/2"]),
        ],
        True,
        3,
        [2, 2, 2],
    ),
}

# Q8 acting on the Lipschitz quaternions Z<1,i,j,k> by left multiplication
LI = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
LJ = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
# companion matrix of x^4 + x^3 + x^2 + x + 1
C5 = [[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]]
# dicyclic group of order 12 acting on the order Z<1, w, i, iw> of the
# quaternion algebra (-1,-3), w = (1 + j)/2, by left multiplication
LW = [[0, -1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, -1, 0]]
LI12 = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
DIM4 = {
    "q8-z4": ([g(LI), g(LJ)], False, 1, None),
    "c5-z4": ([g(C5)], False, 2, None),
    "dic12-z4": ([g(LW), g(LI12)], False, 1, None),
}


def write_family(out: Path, family: str, dim: int, table: dict) -> None:
    d = out / family
    d.mkdir(parents=True, exist_ok=True)
    (d / "__init__.py").touch()
    for name, (gens, bieb, teich, h1) in table.items():
        expect = {"bieberbach": bieb, "teich_dim": teich}
        if h1 is not None:
            expect["h1"] = h1
        doc = {"dim": dim, "name": name, "generators": gens + units(dim), "expect": expect}
        (d / f"{name}.json").write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


def main(argv=None) -> None:
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else ROOT
    out.mkdir(parents=True, exist_ok=True)
    (out / "__init__.py").touch()
    write_family(out, "wallpaper", 2, WALLPAPER)
    write_family(out, "bieberbach3", 3, BIEBERBACH3)
    write_family(out, "dim4", 4, DIM4)


if __name__ == "__main__":
    main()
