"""Teichmueller descriptors, invariant metrics and the moduli report."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import totient

from .cohomology import class_of, h1, in_NGamma
from .config import DEFAULT_CONFIG, AnalysisConfig
from .crystallo import CrystGroup, close_matrix_group, is_bieberbach
from .decomposition import real_isotypic_data
from .endo import ComponentAlgebra, component_algebras
from .errors import AnalysisError, NotInNormalizer, NotNormalizing, NotSPD
from .groupio import group_document, load_any
from .linalg import det, leading_minors_positive, mat_add, mat_mul, mat_scale, solve, transpose
from .normalizer import McgReport, mcg_report
from .poly import IntPoly, cyclotomic, squarefree_part

SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
FIELD = {"R": "ℝ", "C": "ℂ", "H": "ℍ"}


def _sub(n: int) -> str:
    return str(n).translate(SUB)


def _sup(n: int) -> str:
    return str(n).translate(SUP)


def _compact(M: int, K: str) -> str:
    """The maximal compact subgroup of GL_M(K)."""
    name = {"R": "O", "C": "U", "H": "Sp"}[K]
    return f"{name}({M})"


# ---------------------------------------------------------------------------
# invariant metrics


def _is_spd(M) -> bool:
    n = len(M)
    sym = all(M[i][j] == M[j][i] for i in range(n) for j in range(n))
    return sym and leading_minors_positive(M)


def average_form(mats: Sequence, S) -> list[list[Fraction]]:
    """(1/|K|) sum_k k^T S k over a finite list of matrices."""
    n = len(S)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for h in mats:
        acc = mat_add(acc, mat_mul(mat_mul(transpose(h), S), h))
    return mat_scale(Fraction(1, len(mats)), acc)


def invariant_inner_product(G: CrystGroup, seed) -> list[list[Fraction]]:
    S = [[Fraction(x) for x in row] for row in seed]
    if len(S) != G.dim or not _is_spd(S):
        raise NotSPD("seed is not symmetric positive definite")
    B = average_form(G.point_group.elements, S)
    for h in G.point_group.elements:
        if mat_mul(mat_mul(transpose(h), B), h) != B:
            raise AnalysisError("averaged form is not invariant")
    return B


def _is_invariant(B, mats) -> bool:
    return all(mat_mul(mat_mul(transpose(h), B), h) == B for h in mats)


@dataclass(frozen=True)
class ConvexityResult:
    group_order: int
    base_form: tuple
    pairs: int
    combinations: int
    passed: bool


def _random_spd(n: int, rng: random.Random) -> list[list[Fraction]]:
    A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    M = mat_mul(transpose(A), A)
    return [[Fraction(M[i][j] + (i == j)) for j in range(n)] for i in range(n)]


def fixset_convexity_check(
    G: CrystGroup,
    F: Sequence,
    samples: int = 32,
    seed: int = 0,
    max_order: int = 2000,
) -> ConvexityResult:
    """Sample the convex set of metrics invariant under H and F.

    Each pair of averaged random forms and each t in {0, 1/4, 1/2, 3/4, 1}
    gives a convex combination that must stay positive definite and
    invariant under every element of H and F.
    """
    n = G.dim
    F = [[[int(v) for v in row] for row in X] for X in F]
    for X in F:
        try:
            ok = in_NGamma(X, G)
        except NotNormalizing as exc:
            raise NotInNormalizer(str(exc)) from exc
        if not ok:
            raise NotInNormalizer("matrix does not fix the class of the vector system")
    gens = [list(map(list, h)) for h in G.point_group.elements] + F
    K = close_matrix_group(gens, max_order)
    check = list(G.point_group.elements) + F
    rng = random.Random(seed)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    base = average_form(K, ident)
    ts = [Fraction(k, 4) for k in range(5)]
    count = 0
    for _ in range(samples):
        B1 = average_form(K, _random_spd(n, rng))
        B2 = average_form(K, _random_spd(n, rng))
        for t in ts:
            C = mat_add(mat_scale(1 - t, B1), mat_scale(t, B2))
            if not _is_spd(C) or not _is_invariant(C, check):
                return ConvexityResult(len(K), _freeze(base), samples, count, False)
            count += 1
    return ConvexityResult(len(K), _freeze(base), samples, count, True)


def _freeze(M):
    return tuple(tuple(r) for r in M)


# ---------------------------------------------------------------------------
# Teichmueller space


def factor_dimension(M: int, K: str) -> int:
    return {"R": M * (M + 1) // 2, "C": M * M, "H": 2 * M * M - M}[K]


@dataclass(frozen=True)
class TeichDescriptor:
    factors: tuple[tuple[int, str, int], ...]  # (M, K, f)
    dimension: int
    text: str

    def to_dict(self) -> dict:
        return {
            "factors": [{"M": M, "K": K, "f": f} for M, K, f in self.factors],
            "dimension": self.dimension,
            "text": self.text,
        }


def _teich_factor_text(M: int, K: str, f: int) -> str:
    base = f"GL{_sub(M)}({FIELD[K]})/{_compact(M, K)}"
    return f"({base}){_sup(f)}" if f > 1 else base


def teichmuller_descriptor(G: CrystGroup, seed: int = 0) -> TeichDescriptor:
    from .decomposition import rational_isotypic_decomposition

    factors = tuple(real_isotypic_data(c) for c in rational_isotypic_decomposition(G, seed))
    dim = sum(f * factor_dimension(M, K) for M, K, f in factors)
    text = " × ".join(_teich_factor_text(*t) for t in factors) or "point"
    return TeichDescriptor(factors, dim, text)


# ---------------------------------------------------------------------------
# orders and fields


def _power_coords(ca: ComponentAlgebra, k: int) -> list[list[Fraction]]:
    E = ca.algebra
    z = ca.center.primitive
    x = E.identity_coords
    out = []
    for _ in range(k):
        out.append(list(x))
        x = E.mul(x, z)
    return out


def monogenic_index(ca: ComponentAlgebra) -> int | None:
    """[Z(O) : Z[theta]] for the chosen primitive theta of the center."""
    c = ca.center.degree
    Z = transpose([list(v) for v in ca.center.basis])
    coords = []
    for p in _power_coords(ca, c):
        x = solve(Z, p)
        if x is None:
            return None
        coords.append(x)
    d = det(coords)
    return abs(int(d)) if Fraction(d).denominator == 1 else None


def _quadratic_field(p: IntPoly) -> str | None:
    if p.degree != 2:
        return None
    c, b, a = p.coeffs
    D = squarefree_part(b * b - 4 * a * c)
    return "ℚ(i)" if D == -1 else f"ℚ(√{D})"


def _cyclotomic_index(p: IntPoly) -> int | None:
    """k with p = Phi_k (smallest odd k when Phi_k(x) = Phi_{2k}(-x) would also do)."""
    for k in range(3, 8 * p.degree * p.degree + 3):
        if totient(k) == p.degree and cyclotomic(k) == p:
            return k // 2 if k % 4 == 2 else k
    return None


def ring_name(p: IntPoly, index: int | None) -> str:
    """Short name of the ring generated by a root of p (with its index)."""
    s = str(p)
    if s == "x - 1":
        base = "ℤ"
    elif s == "x^2 + 1":
        base = "ℤ[i]"
    elif s in ("x^2 + x + 1", "x^2 - x + 1"):
        base = "ℤ[ω]"
    else:
        k = _cyclotomic_index(p)
        base = f"ℤ[ζ{_sub(k)}]" if k else "ℤ[θ]"
    if index and index != 1:
        return f"{base}-order of index {index}"
    return base


def field_name(p: IntPoly) -> str:
    if p.degree == 1:
        return "ℚ"
    return _quadratic_field(p) or f"ℚ(θ), θ root of {p}"


@dataclass(frozen=True)
class ComponentReport:
    data: dict


def component_report(ca: ComponentAlgebra) -> dict:
    comp = ca.component
    M, K, f = real_isotypic_data(comp)
    D = ca.division
    idx = monogenic_index(ca)
    out = {
        "character_degree": comp.degree,
        "galois_orbit_size": len(comp.orbit),
        "multiplicity": comp.multiplicity,
        "rational_multiplicity": comp.rational_multiplicity,
        "indicator": comp.indicator,
        "real_type": K,
        "real_multiplicity": M,
        "field_degree": f,
        "real_field_polynomial": str(comp.field_polynomial),
        "real_field": field_name(comp.field_polynomial),
        "rank": comp.rank,
        "schur_flag": comp.schur_flag,
        "algebra": {
            "dim": ca.algebra.dim,
            "center_degree": ca.center.degree,
            "center_polynomial": str(ca.center.polynomial),
            "center_ring": ring_name(ca.center.polynomial, idx),
            "center_index_over_monogenic": idx,
            "kind": D.kind,
        },
    }
    if D.quaternion is not None:
        q = D.quaternion
        out["algebra"]["quaternion"] = {
            "a": _fmt(q.a_rational) if q.a_rational is not None else None,
            "b": _fmt(q.b_rational) if q.b_rational is not None else None,
        }
    if D.note:
        out["algebra"]["note"] = D.note
    return out


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _order_name(ca: ComponentAlgebra, i: int, simple: bool) -> str:
    comp = ca.component
    D = ca.division
    if comp.real_type == "H":
        q = D.quaternion
        if q is not None and q.a_rational is not None:
            return f"𝔬{_sub(i)} ⊂ ({_fmt(q.a_rational)},{_fmt(q.b_rational)})_ℚ"
        return f"𝔬{_sub(i)}"
    if simple:
        return ring_name(ca.center.polynomial, monogenic_index(ca))
    return f"𝔬{_sub(i)}"


def shape_text(cas: Sequence[ComponentAlgebra]) -> tuple[str, str, list[str]]:
    """(form, text, notes); form is "simple" exactly when every f = 1."""
    simple = all(ca.component.field_degree == 1 for ca in cas)
    parts = []
    notes = []
    for i, ca in enumerate(cas, 1):
        M, K, f = real_isotypic_data(ca.component)
        compact = _compact(M, K)
        gl = f"GL{_sub(M)}({FIELD[K]})"
        ring = _order_name(ca, i, simple)
        if simple:
            if K == "H":
                parts.append(f"{compact}\\{gl}/GL{_sub(M)}(𝔬{_sub(i)})")
                notes.append(f"{ring}")
            else:
                parts.append(f"{compact}\\{gl}/GL{_sub(M)}({ring})")
        else:
            pair = f"{compact}\\{gl}"
            left = f"({pair}){_sup(f)}" if f > 1 else pair
            parts.append(f"{left}/GL{_sub(M)}(𝔬{_sub(i)})")
            kfield = field_name(ca.component.field_polynomial)
            notes.append(
                f"𝔬{_sub(i)}: End_H(Λ∩W{_sub(i)}), center {ring_name(ca.center.polynomial, monogenic_index(ca))}"
                f" (θ root of {ca.center.polynomial}), K{_sub(i)} = {kfield}, f = {f}"
            )
    text = " × ".join(parts) if parts else "point"
    return ("simple" if simple else "general"), text, notes


VERY_GOOD_NOTE = (
    "The moduli space of flat metrics is a very good orbifold; up to commensurability "
    "it is the displayed double coset space, orders being defined up to finite index."
)


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class ModuliReport:
    group: dict
    teich: TeichDescriptor
    h1: dict
    mcg: McgReport
    components: tuple
    shape_form: str
    shape: str
    shape_notes: tuple[str, ...]
    flags: tuple[str, ...]
    note: str = VERY_GOOD_NOTE
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "teichmuller": self.teich.to_dict(),
            "h1": self.h1,
            "mcg": self.mcg.to_dict(),
            "components": list(self.components),
            "moduli": {
                "form": self.shape_form,
                "shape": self.shape,
                "notes": list(self.shape_notes),
                "flags": list(self.flags),
                "statement": self.note,
            },
        }

    def to_text(self) -> str:
        g = self.group
        lines = [
            f"group: {g['name'] or '(unnamed)'}  dim {g['dim']}  |H| = {g['holonomy_order']}"
            f"  bieberbach: {'yes' if g['bieberbach'] else 'no'}",
            f"Teichmüller space: {self.teich.text}  (dimension {self.teich.dimension})",
            f"H¹(H; ℝⁿ/ℤⁿ) = {self.h1['group']}  class {self.h1['class']}"
            f"  ({'symmorphic' if self.h1['symmorphic'] else 'non-symmorphic'})",
            f"finite kernel G: order {self.mcg.finite_kernel_order}",
            f"mapping class group: {self.mcg.statement}; N_Γ = {self.mcg.n_gamma}",
            "components:",
        ]
        for i, c in enumerate(self.components, 1):
            a = c["algebra"]
            desc = f"  W{_sub(i)}: {c['real_type']} M={c['real_multiplicity']} f={c['field_degree']}"
            desc += f" rank {c['rank']} center {a['center_polynomial']} ({a['kind']}) [{c['schur_flag']}]"
            if "quaternion" in a:
                desc += f" quaternion ({a['quaternion']['a']},{a['quaternion']['b']})"
            lines.append(desc)
        lines.append(f"moduli space ~ {self.shape}")
        lines += [f"  {n}" for n in self.shape_notes]
        lines.append(f"flags: {', '.join(self.flags) or 'none'}")
        lines.append(self.note)
        return "\n".join(lines) + "\n"


def _gl_name(n: int) -> str:
    return f"GL{_sub(n)}(ℤ)"


def moduli_shape(G: CrystGroup, config: AnalysisConfig = DEFAULT_CONFIG) -> ModuliReport:
    seed = config.seed
    cas = component_algebras(G, seed)
    teich = teichmuller_descriptor(G, seed)
    grp, _ = h1(G)
    cls = class_of(G)
    mcg = mcg_report(G, config)
    comps = tuple(component_report(ca) for ca in cas)
    form, text, notes = shape_text(cas)
    flags = tuple(sorted({f"schur:{ca.component.schur_flag}" for ca in cas}))
    doc = group_document(G)
    group = {
        "name": G.name,
        "dim": G.dim,
        "holonomy_order": G.point_group.order,
        "bieberbach": is_bieberbach(G),
        "generators": doc["generators"],
    }
    h1d = {
        "group": str(grp),
        "invariant_factors": list(grp.invariant_factors),
        "class": list(cls),
        "symmorphic": not any(cls),
    }
    return ModuliReport(group, teich, h1d, mcg, comps, form, text, tuple(notes), flags)


def analyze(G: CrystGroup | str, config: AnalysisConfig = DEFAULT_CONFIG) -> ModuliReport:
    if isinstance(G, str):
        G = load_any(G, config.max_order)
    return moduli_shape(G, config)
