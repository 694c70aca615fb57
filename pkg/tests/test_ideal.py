import itertools
from fractions import Fraction

import pytest

from omegarep.arith import FpElement
from omegarep.determinant import build_det_data
from omegarep import linalg
from omegarep.ideal import (
    evaluate,
    homomorphism_points,
    ideal_M_generators,
    is_homomorphism,
    monomials_up_to,
    truncated_span,
    variety_points,
)
from omegarep.multilinear import BudgetError
from omegarep.polys import Polynomial, buchberger, grevlex_key, normal_form, mono_divides

from conftest import FIXTURES, cofactor_det, random_matrix

PAIRS = list(itertools.product(["idem1", "nil1", "ax", "by"], repeat=2))


def l1(c=1, e=1):
    return Polynomial(1, {(e,): Fraction(c)})


def test_generator_examples(alg):
    assert ideal_M_generators(alg["idem1"], alg["idem1"]) == [l1(1, 2) - l1()]
    assert ideal_M_generators(alg["idem1"], alg["nil1"]) == [l1(-1)]
    assert ideal_M_generators(alg["nil1"], alg["nil1"]) == []
    assert ideal_M_generators(alg["nil1"], alg["idem1"]) == [l1(1, 2)]


@pytest.mark.parametrize("pair", PAIRS)
def test_generators_evaluate_defect(alg, pair, rng):
    a, b = alg[pair[0]], alg[pair[1]]
    gens = {}
    from omegarep.ideal import multiplicativity_polynomial
    for _ in range(3):
        u = random_matrix(rng, b.dim, a.dim)
        for i in range(a.dim):
            for j in range(a.dim):
                ui = [u[r][i] for r in range(b.dim)]
                uj = [u[r][j] for r in range(b.dim)]
                prod = a.basis_product(i, j)
                uxy = [sum(u[r][t] * prod[t] for t in range(a.dim)) for r in range(b.dim)]
                defect = [p - q for p, q in zip(b.multiply(ui, uj), uxy)]
                for k in range(b.dim):
                    assert evaluate(multiplicativity_polynomial(a, b, i, j, k), u) == defect[k]


def test_truncated_span_examples(alg):
    span = truncated_span(alg["idem1"], alg["nil1"], 3)
    assert span == [l1(-1), l1(-1, 2)]
    assert truncated_span(alg["nil1"], alg["idem1"], 1) == []
    assert truncated_span(alg["ax"], alg["by"], 2) == ideal_M_generators(alg["ax"], alg["by"])


@pytest.mark.parametrize("pair", PAIRS)
@pytest.mark.parametrize("N", [2, 3, 4])
def test_span_versus_normal_forms(alg, pair, N):
    a, b = alg[pair[0]], alg[pair[1]]
    gens = ideal_M_generators(a, b)
    nv = a.dim * b.dim
    gb = buchberger(gens, "grevlex", nv)
    monos = monomials_up_to(nv, N)
    index = {m: k for k, m in enumerate(monos)}

    def span_rank(polys):
        return linalg.rank(({index[m]: c for m, c in G.terms.items()} for G in polys), len(monos))

    # dimension of M in degrees <= N: monomials that are not standard for the GB
    lms = gb.leading_monomials()
    members = sum(1 for m in monos if any(mono_divides(lm, m) for lm in lms))

    span = truncated_span(a, b, N)
    assert all(normal_form(G, gb).is_zero() for G in span)
    if all(g.degree() == 2 for g in gens):
        assert span_rank(span) == members
    else:
        assert span_rank(span) < members

    by_degree = [g.mul_term(m, 1) for g in gens for m in monomials_up_to(nv, N)
                 if g.degree() + sum(m) <= N]
    assert span_rank(by_degree) == members


def test_variety_examples(alg):
    pts = variety_points(alg["idem1"], alg["idem1"], 5)
    assert [int(u[0][0]) for u in pts] == [0, 1]
    assert len(variety_points(alg["nil1"], alg["nil1"], 3)) == 3
    assert [int(u[0][0]) for u in variety_points(alg["idem1"], alg["nil1"], 7)] == [0]


@pytest.mark.parametrize("pair", [("ax", "by"), ("by", "ax"), ("ax", "idem1"), ("nil1", "by")])
def test_variety_points_are_homomorphisms(alg, pair):
    a, b = alg[pair[0]], alg[pair[1]]
    for p in (3, 5):
        pts = variety_points(a, b, p)
        assert all(is_homomorphism(a, b, u, p) for u in pts)
        assert pts == homomorphism_points(a, b, p)


def test_gb_vanishes_on_points(alg):
    a, b = alg["ax"], alg["by"]
    gb = buchberger(ideal_M_generators(a, b))
    from omegarep.ideal import reduce_mod
    for u in variety_points(a, b, 5):
        for g in gb.polys:
            assert evaluate(reduce_mod(g, 5), u) == 0


def test_budget_guard(alg):
    from omegarep import ideal
    old = ideal.MAX_POINTS
    ideal.MAX_POINTS = 100
    try:
        with pytest.raises(BudgetError):
            variety_points(alg["ax"], alg["by"], 5)
    finally:
        ideal.MAX_POINTS = old


def test_evaluate_examples(rng):
    assert evaluate(Polynomial.variable(1, 0), [[3]]) == 3
    hbar = build_det_data(FIXTURES["ax"], FIXTURES["ax"]).Hbar
    assert evaluate(hbar, [[1, 2], [3, 4]]) == -2 == cofactor_det([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        evaluate(hbar, [[1, 2, 3]])
    f = Polynomial(4, {(1, 0, 2, 0): Fraction(3), (0, 1, 0, 0): Fraction(-1, 2)})
    g = Polynomial(4, {(0, 0, 1, 1): Fraction(2), (0, 0, 0, 0): Fraction(1)})
    for _ in range(5):
        u = random_matrix(rng, 2, 2)
        assert evaluate(f * g, u) == evaluate(f, u) * evaluate(g, u)


def test_evaluate_variable_convention():
    # l_i^j reads entry (j, i): the coefficient of u(e_i) on f_j
    from omegarep.multilinear import u_index
    u = [[1, 2, 3], [4, 5, 6]]  # 2x3: A 3-dim, B 2-dim
    for i in range(3):
        for j in range(2):
            assert evaluate(Polynomial.variable(6, u_index(i, j, 2)), u) == u[j][i]
