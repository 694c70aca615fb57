"""The multiplicativity ideal M ⊆ k[Hom(A, B)] and its zero set."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraSpec
from .arith import FpElement, to_field
from .multilinear import BudgetError, u_index
from .polys import Polynomial

MAX_POINTS = 10**7


def variable_names(d_a: int, d_b: int) -> list[str]:
    """``l[i][j]`` (1-based) is the coefficient of u(e_i) on f_j."""
    return [f"l[{i + 1}][{j + 1}]" for i in range(d_a) for j in range(d_b)]


def linear_form(d_a: int, d_b: int, x: Sequence, q: Sequence) -> Polynomial:
    """l_x^q: u ↦ ⟨q, u(x)⟩ for x ∈ A, q ∈ B* given in coordinates."""
    nv = d_a * d_b
    terms = {}
    for i, xi in enumerate(x):
        for j, qj in enumerate(q):
            c = xi * qj
            if c:
                m = [0] * nv
                m[u_index(i, j, d_b)] = 1
                terms[tuple(m)] = Fraction(c)
    return Polynomial(nv, terms)


def multiplicativity_polynomial(a: AlgebraSpec, b: AlgebraSpec, i: int, j: int, k: int) -> Polynomial:
    """g(u) = ⟨f̌^k, u(e_i)u(e_j) − u(e_i e_j)⟩ (0-based basis indices)."""
    d_a, d_b = a.dim, b.dim
    nv = d_a * d_b
    quad: dict = {}
    # u(e_i)u(e_j) = Σ_{p,q} l_i^p l_j^q f_p f_q; pick the f_k coefficient
    for p in range(d_b):
        for q in range(d_b):
            c = b.constants[p][q][k]
            if c:
                m = [0] * nv
                m[u_index(i, p, d_b)] += 1
                m[u_index(j, q, d_b)] += 1
                quad[tuple(m)] = quad.get(tuple(m), 0) + c
    lin = linear_form(d_a, d_b, a.constants[i][j], [int(t == k) for t in range(d_b)])
    return Polynomial(nv, quad) - lin


def ideal_M_generators(a: AlgebraSpec, b: AlgebraSpec) -> list[Polynomial]:
    """Nonzero generators indexed by basis triples (i <= j, k); empty for the zero ideal."""
    out = []
    for i in range(a.dim):
        for j in range(i, a.dim):
            for k in range(b.dim):
                g = multiplicativity_polynomial(a, b, i, j, k)
                if not g.is_zero():
                    out.append(g)
    return out


def monomials_up_to(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree <= ``degree``, by degree then lexicographically descending."""
    out = []
    for n in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), n):
            exps = [0] * nvars
            for v in combo:
                exps[v] += 1
            out.append(tuple(exps))
    return out


def truncated_span(a: AlgebraSpec, b: AlgebraSpec, N: int) -> list[Polynomial]:
    """Products g·l_{z1}^{q1}⋯l_{zn}^{qn} with basis choices and n <= N - 2.

    The bound counts each generator as degree 2 regardless of cancellation, so
    these are exactly the polynomials paired against the discrepancies r_n
    with n + 2 <= N.
    """
    gens = ideal_M_generators(a, b)
    if N < 2 or not gens:
        return []
    nv = a.dim * b.dim
    out = []
    for g in gens:
        for m in monomials_up_to(nv, N - 2):
            out.append(g.mul_term(m, Fraction(1)))
    return out


def evaluate(f: Polynomial, u: Sequence[Sequence]):
    """f(u) with l_i^j ↦ u[j][i]; u is a (dim B × dim A) matrix."""
    d_b = len(u)
    d_a = len(u[0]) if d_b else 0
    if d_a * d_b != f.nvars:
        raise ValueError(f"matrix {d_b}x{d_a} does not match {f.nvars} variables")
    point = [u[j][i] for i in range(d_a) for j in range(d_b)]
    return f.evaluate(point)


def _apply(u: Sequence[Sequence], x: Sequence) -> list:
    return [sum((u[j][i] * x[i] for i in range(len(x))), 0) for j in range(len(u))]


def is_homomorphism(a: AlgebraSpec, b: AlgebraSpec, u: Sequence[Sequence], p: int | None = None) -> bool:
    """Direct check u(e_i e_j) = u(e_i) u(e_j) on all basis pairs."""
    conv = (lambda x: to_field(x, p))
    for i in range(a.dim):
        for j in range(a.dim):
            ui = [conv(0) + v for v in _apply(u, [int(t == i) for t in range(a.dim)])]
            uj = [conv(0) + v for v in _apply(u, [int(t == j) for t in range(a.dim)])]
            left = [conv(0)] * b.dim
            for p_, x in enumerate(ui):
                for q, y in enumerate(uj):
                    for k in range(b.dim):
                        c = b.constants[p_][q][k]
                        if c:
                            left[k] = left[k] + x * y * conv(c)
            prod = [conv(c) for c in a.constants[i][j]]
            right = _apply(u, prod)
            if any(l_ != r for l_, r in zip(left, right)):
                return False
    return True


def _points(d_a: int, d_b: int, p: int):
    total = p ** (d_a * d_b)
    if total > MAX_POINTS:
        raise BudgetError(f"{p}^{d_a * d_b} = {total} points exceeds {MAX_POINTS}")
    elems = [FpElement(v, p) for v in range(p)]
    for vec in itertools.product(elems, repeat=d_a * d_b):
        yield tuple(tuple(vec[u_index(i, j, d_b)] for i in range(d_a)) for j in range(d_b))


def variety_points(a: AlgebraSpec, b: AlgebraSpec, p: int) -> list[tuple[tuple[FpElement, ...], ...]]:
    """All u over F_p on which every generator of M vanishes (deterministic order)."""
    gens = [reduce_mod(g, p) for g in ideal_M_generators(a, b)]
    return [u for u in _points(a.dim, b.dim, p) if all(evaluate(g, u) == 0 for g in gens)]


def homomorphism_points(a: AlgebraSpec, b: AlgebraSpec, p: int) -> list:
    """All algebra homomorphisms A -> B over F_p by the direct test (independent of M)."""
    return [u for u in _points(a.dim, b.dim, p) if is_homomorphism(a, b, u, p)]


def reduce_mod(f: Polynomial, p: int) -> Polynomial:
    """Coefficients mapped into F_p (kept as FpElement)."""
    return Polynomial(f.nvars, {m: to_field(c, p) for m, c in f.terms.items()})
