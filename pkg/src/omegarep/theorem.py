"""Run the chain: ideal M, radical membership of the determinant, morphism space, obstruction."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraSpec, validate
from .arith import format_scalar
from .determinant import build_det_data, check_sE
from .ideal import (
    evaluate,
    homomorphism_points,
    ideal_M_generators,
    is_homomorphism,
    reduce_mod,
    variable_names,
    variety_points,
)
from .loday import TruncatedMorphism
from .multilinear import ShapeError
from .naturality import is_natural, s1_forced_zero, solve_hom_space
from .polys import buchberger, format_polynomial, min_power, radical_member

SCOPE = (
    "The ground field of the theorem is algebraically closed; verdicts here concern "
    "points over the algebraic closure of Q and are derived from Groebner bases over Q. "
    "F_p points are evidence only. No claim is made that the algebras are isomorphic."
)
VERDICT_NONE = "no invertible homomorphism over Q̄"
VERDICT_MAYBE = "invertible homomorphism may exist over Q̄"

WITNESS_ENTRIES = (0, 1, -1)
WITNESS_BUDGET = 20_000


def _matrix_str(u) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in u]


def find_invertible_homomorphism(a: AlgebraSpec, b: AlgebraSpec, hbar) -> list | None:
    """Search small integer matrices (entries 0, 1, -1) for a homomorphism with det != 0."""
    d_a, d_b = a.dim, b.dim
    if len(WITNESS_ENTRIES) ** (d_a * d_b) > WITNESS_BUDGET:
        return None
    for vec in itertools.product(WITNESS_ENTRIES, repeat=d_a * d_b):
        u = [[Fraction(vec[i * d_b + j]) for i in range(d_a)] for j in range(d_b)]
        if evaluate(hbar, u) != 0 and is_homomorphism(a, b, u):
            return u
    return None


def theorem_report(a: AlgebraSpec, b: AlgebraSpec, N: int, r_max: int = 10,
                   primes: Sequence[int] = (3, 5, 7),
                   morphism: TruncatedMorphism | None = None) -> dict:
    if a.dim != b.dim:
        raise ShapeError(f"dimensions differ: {a.dim} vs {b.dim}")
    for alg in (a, b):
        if not validate(alg).ok:
            raise ValueError(f"algebra {alg.name} fails validation")
    m = a.dim
    names = variable_names(a.dim, b.dim)
    data = build_det_data(a, b)
    gens = ideal_M_generators(a, b)
    gb = buchberger(gens, "grevlex", m * m)
    radical = radical_member(data.Hbar, gens, m * m)
    r = min_power(data.Hbar, gb, r_max) if radical else None
    space = solve_hom_space(a, b, N)

    report: dict = {
        "pair": [a.name, b.name],
        "dim": m,
        "scope": SCOPE,
        "generators": [format_polynomial(g, names) for g in gens],
        "groebner_basis": [format_polynomial(g, names) for g in gb.polys],
        "determinant": format_polynomial(data.Hbar, names),
        "radical_member": radical,
        "verdict": VERDICT_NONE if radical else VERDICT_MAYBE,
        "min_power": r,
        "r_max": r_max,
        "hom_space": {
            "N": N,
            "dimension": space.dimension,
            "level1_forced_zero": s1_forced_zero(space),
        },
    }

    points = []
    for p in primes:
        zm = variety_points(a, b, p)
        direct = homomorphism_points(a, b, p)
        hbar_p = reduce_mod(data.Hbar, p)
        dets = [evaluate(hbar_p, u) for u in zm]
        invertible = [u for u, det in zip(zm, dets) if det != 0]
        points.append({
            "p": p,
            "zeros_of_M": len(zm),
            "homomorphisms": len(direct),
            "agree": zm == direct,
            "invertible": len(invertible),
            "example_invertible": _matrix_str(invertible[0]) if invertible else None,
        })
    report["fp_points"] = points

    witness = None if radical else find_invertible_homomorphism(a, b, data.Hbar)
    report["witness_invertible_homomorphism"] = (
        {"u": _matrix_str(witness), "det": format_scalar(evaluate(data.Hbar, witness))}
        if witness is not None else None
    )

    if morphism is not None:
        report["obstruction"] = _obstruction(a, b, data, morphism, radical, r)

    # over F_p an invertible zero of M would contradict det ∈ √M
    report["consistent"] = (
        (not radical or r is not None)
        and all(pt["agree"] for pt in points)
        and not (radical and any(pt["invertible"] for pt in points))
    )
    return report


def _obstruction(a, b, data, s: TruncatedMorphism, radical: bool, r: int | None) -> dict:
    nat = is_natural(a, b, s)
    inv = s.invertible_levels()
    out: dict = {
        "N": s.N,
        "natural": nat.ok,
        "levels_invertible": inv,
    }
    if not radical or r is None:
        out["conclusion"] = "determinant is not in the radical of M; no obstruction applies"
        return out
    level = data.m * r
    if s.N < level:
        out["conclusion"] = f"level {level} = m·r is beyond the supplied truncation"
        return out
    chk = check_sE(data, s, r)
    image_zero = chk.left.is_zero()
    out.update({
        "r": r,
        "level": level,
        "sE_holds": chk.ok,
        "pairing_value": format_scalar(
            next(iter(chk.right.coords.values()), 0) if not chk.right.is_zero() else 0
        ),
        "image_of_E_power_is_zero": image_zero,
        "E_power_is_zero": data.E_power(r).is_zero(),
    })
    if nat.ok and image_zero and inv[level]:
        out["conclusion"] = (
            f"contradiction: s_{level} is invertible yet kills the nonzero tensor E^(⊗{r})"
        )
    elif image_zero:
        out["conclusion"] = f"s_{level}(E^(⊗{r})) = 0, so s_{level} is not invertible"
    else:
        out["conclusion"] = (
            f"s_{level}(E^(⊗{r})) != 0; the truncated morphism does not see the obstruction"
        )
    return out


def summary_lines(report: dict) -> list[str]:
    lines = [
        f"pair: {report['pair'][0]} -> {report['pair'][1]} (dim {report['dim']})",
        "generators of M: " + ("; ".join(report["generators"]) or "none (zero ideal)"),
        "Groebner basis: " + ("; ".join(report["groebner_basis"]) or "empty"),
        f"determinant: {report['determinant']}",
        f"determinant in radical of M: {report['radical_member']}",
        f"verdict: {report['verdict']}",
    ]
    if report["radical_member"]:
        r = report["min_power"]
        lines.append(f"min power r with det^r in M: {r if r is not None else 'none up to ' + str(report['r_max'])}")
    hs = report["hom_space"]
    lines.append(f"truncated morphism space at N = {hs['N']}: dimension {hs['dimension']}"
                 + ("; level 1 forced to zero" if hs["level1_forced_zero"] else ""))
    for pt in report["fp_points"]:
        lines.append(
            f"F_{pt['p']}: {pt['zeros_of_M']} zeros of M, {pt['homomorphisms']} homomorphisms"
            f" ({'equal' if pt['agree'] else 'DIFFERENT'}), {pt['invertible']} invertible"
        )
    w = report.get("witness_invertible_homomorphism")
    if w:
        lines.append(f"witness invertible homomorphism: {w['u']} with det {w['det']}")
    ob = report.get("obstruction")
    if ob:
        lines.append(f"supplied morphism: natural={ob['natural']}, "
                     f"invertible levels={ob['levels_invertible']}")
        lines.append(f"obstruction: {ob['conclusion']}")
    lines.append(report["scope"])
    return lines
