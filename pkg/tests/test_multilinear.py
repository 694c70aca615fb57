import itertools
import random
from fractions import Fraction
from math import comb, factorial

import pytest
import sympy

from omegarep import linalg
from omegarep.multilinear import (
    EquivarianceError,
    PolyFunctional,
    ShapeError,
    SymTensor,
    TensorMap,
    TensorVector,
    alt,
    kappa,
    kappa_inv,
    kron,
    matrix_to_u,
    multi_indices,
    pair_asym,
    pair_sym,
    permute,
    polynomial_preimage,
    sym_basis,
    theta,
    xi,
)
from omegarep.omega import Surjection, compose, permutations
from omegarep.polys import Polynomial

from conftest import cofactor_det, random_matrix, random_rational


def random_tensor(rng, d, n, density=0.6):
    return TensorVector(d, n, {idx: random_rational(rng) for idx in multi_indices(d, n)
                               if rng.random() < density})


def random_sym(rng, d, n):
    return SymTensor(d, n, {mu: random_rational(rng) for mu in sym_basis(d, n)})


def P(images):
    return Surjection.from_images(images)


def test_permute_examples():
    t = TensorVector.basis(3, (0, 2))
    assert permute(P([2, 1]), t) == TensorVector.basis(3, (2, 0))
    assert permute(Surjection.identity(2), t) == t
    with pytest.raises(ShapeError):
        permute(P([1, 2, 3]), t)


def test_permute_rule_on_elementary():
    v = [(1, 2), (3, 0), (0, 5)]
    g = P([2, 3, 1])
    # slot k of g·(v1⊗v2⊗v3) holds v_{g⁻¹(k)}
    ginv = {g(i): i for i in range(1, 4)}
    expected = TensorVector.elementary([v[ginv[k] - 1] for k in (1, 2, 3)])
    assert permute(g, TensorVector.elementary(v)) == expected


def test_left_action_law(rng):
    t = random_tensor(rng, 2, 3)
    for g in permutations(3):
        for h in permutations(3):
            assert permute(g, permute(h, t)) == permute(compose(g, h), t)


def test_alt():
    e12 = TensorVector.basis(2, (0, 1))
    assert alt(2, e12) == TensorVector(2, 2, {(0, 1): 1, (1, 0): -1})
    v = TensorVector.elementary([(1, 2), (1, 2)])
    assert alt(2, v).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_alt_idempotent_up_to_factorial(rng, n):
    t = random_tensor(rng, 2, n)
    assert alt(n, alt(n, t)) == alt(n, t).scale(factorial(n))


def test_kron_examples(rng):
    u = random_matrix(rng, 2, 2)
    w = TensorVector(4, 1, {(k,): x for k, x in enumerate(matrix_to_u(u)) if x != 0})
    assert kron(w, 2, 2) == TensorMap.from_matrix(u)
    ident = TensorVector(4, 1, {(k,): x for k, x in enumerate(matrix_to_u([[1, 0], [0, 1]]))})
    assert kron(ident.tensor(ident), 2, 2) == TensorMap.identity(2, 2)


def test_kron_elementary_rule(rng):
    u1, u2 = random_matrix(rng, 2, 3), random_matrix(rng, 2, 3)
    w = TensorVector.elementary([matrix_to_u(u1), matrix_to_u(u2)])
    m = kron(w, 3, 2)
    for x1, x2 in itertools.product(range(3), repeat=2):
        img = m.apply(TensorVector.basis(3, (x1, x2)))
        col1 = [u1[j][x1] for j in range(2)]
        col2 = [u2[j][x2] for j in range(2)]
        assert img == TensorVector.elementary([col1, col2])


def test_kron_preserves_action(rng):
    w = random_tensor(rng, 4, 2)
    for g in permutations(2):
        assert kron(permute(g, w), 2, 2) == kron(w, 2, 2).conjugate(g)


def test_pair_asym():
    assert pair_asym(TensorVector.basis(2, (0, 1)), TensorVector.basis(2, (0, 1))) == 1
    assert pair_asym(TensorVector.basis(2, (0, 1)), TensorVector.basis(2, (1, 0))) == 0


def test_pair_asym_gram_is_identity():
    basis = list(multi_indices(2, 2))
    for a in basis:
        for b in basis:
            assert pair_asym(TensorVector.basis(2, a), TensorVector.basis(2, b)) == int(a == b)


def test_pair_asym_bilinear_and_invariant(rng):
    z1, z2, w = (random_tensor(rng, 3, 2) for _ in range(3))
    c = Fraction(3, 7)
    assert pair_asym(z1 + z2.scale(c), w) == pair_asym(z1, w) + c * pair_asym(z2, w)
    for g in permutations(2):
        assert pair_asym(permute(g, z1), permute(g, w)) == pair_asym(z1, w)


def test_pair_sym_matches_preimages(rng):
    d, n = 3, 3
    W = random_sym(rng, d, n)
    f = Polynomial(d, {(2, 1, 0): Fraction(2), (0, 1, 2): Fraction(-1, 3), (1, 1, 1): Fraction(5)})
    z = polynomial_preimage(f)
    assert pair_sym(f, W) == pair_asym(z, W.to_tensor())
    for g in permutations(n):
        assert pair_sym(f, W) == pair_asym(permute(g, z), W.to_tensor())
    # a genuinely different preimage: spread each coefficient over two arrangements
    other = TensorVector(d, n, {})
    for idx, c in z.coords.items():
        other = other + TensorVector(d, n, {idx: c / 2}) + TensorVector(d, n, {idx[::-1]: c / 2})
    assert pair_sym(f, W) == pair_asym(other, W.to_tensor())


def test_pair_sym_degree_one(rng):
    W = SymTensor(4, 1, {(k,): random_rational(rng) for k in range(4)})
    f = Polynomial.variable(4, 2)
    assert pair_sym(f, W) == W[(2,)]
    with pytest.raises(ShapeError):
        pair_sym(f * f, W)


def test_pair_sym_determinant(rng):
    from omegarep.determinant import build_det_data
    from conftest import FIXTURES
    hbar = build_det_data(FIXTURES["ax"], FIXTURES["by"]).Hbar
    for _ in range(5):
        u = random_matrix(rng, 2, 2)
        W = SymTensor.power_of(matrix_to_u(u), 2)
        assert pair_sym(hbar, W) == cofactor_det(u)


@pytest.mark.parametrize("d,n,count", [(2, 2, 3), (4, 2, 10), (1, 5, 1), (3, 4, 15)])
def test_sym_basis(d, n, count):
    basis = sym_basis(d, n)
    assert len(basis) == count == comb(d + n - 1, n)
    assert len(set(basis)) == count
    assert sym_basis(2, 2) == [(0, 0), (0, 1), (1, 1)]


def test_theta_examples(rng):
    W0 = SymTensor(4, 0, {(): Fraction(7)})
    f = theta([W0], 0)
    assert f(Polynomial.constant(4, 1)) == 7
    u = random_matrix(rng, 2, 2)
    vec = matrix_to_u(u)
    W = [SymTensor.power_of(vec, n) for n in range(4)]
    func = theta(W, 3)
    for exps in [(1, 0, 0, 0), (0, 2, 1, 0), (1, 1, 0, 1), (0, 0, 0, 3)]:
        mono = Polynomial.monomial(exps)
        assert func(mono) == mono.evaluate(vec)
    with pytest.raises(ShapeError):
        theta(W[:2], 3)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_theta_full_rank(d, n):
    basis = sym_basis(d, n)
    monos = [tuple(sum(1 for x in mu if x == v) for v in range(d)) for mu in basis]
    rows = []
    for mono in monos:
        f = Polynomial.monomial(mono)
        rows.append({k: pair_sym(f, SymTensor(d, n, {mu: 1})) for k, mu in enumerate(basis)})
    assert linalg.rank(rows, len(basis)) == comb(d + n - 1, n)


def test_kappa_examples(rng):
    k0 = kappa(SymTensor(4, 0, {(): Fraction(3)}), 2, 2)
    assert k0 == TensorMap(2, 0, 2, 0, {((), ()): 3})
    u = random_matrix(rng, 2, 2)
    k1 = kappa(SymTensor(4, 1, {(k,): x for k, x in enumerate(matrix_to_u(u))}), 2, 2)
    assert k1 == TensorMap.from_matrix(u)
    for mu in sym_basis(4, 2):
        assert kappa(SymTensor(4, 2, {mu: 1}), 2, 2).is_equivariant()


@pytest.mark.parametrize("da,db", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 4), (4, 1)])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_kappa_round_trip(rng, da, db, n):
    W = random_sym(rng, da * db, n)
    s = kappa(W, da, db)
    assert kappa_inv(s) == W
    assert kappa(kappa_inv(s), da, db) == s


def test_kappa_inv_of_power(rng):
    u = random_matrix(rng, 2, 2)
    s2 = TensorMap.from_matrix(u).power(2)
    assert kappa_inv(s2) == SymTensor.power_of(matrix_to_u(u), 2)
    assert kappa_inv(TensorMap.from_matrix(u)) == SymTensor(4, 1, dict(((k,), x) for k, x in enumerate(matrix_to_u(u))))


def test_kappa_inv_rejects_non_equivariant():
    s = TensorMap(2, 2, 2, 2, {((0, 1), (0, 1)): 1})
    with pytest.raises(EquivarianceError):
        kappa_inv(s)


def test_equivariant_hom_dimension():
    # dim Hom_{Σ_2}(A^{⊗2}, B^{⊗2}) for 2-dim A, B: commutant of the swap, dense oracle
    swap = sympy.zeros(4, 4)
    for i, j in itertools.product(range(2), repeat=2):
        swap[2 * j + i, 2 * i + j] = 1
    x = sympy.symbols("x0:16")
    X = sympy.Matrix(4, 4, x)
    eqs = list(X * swap - swap * X)
    A, _ = sympy.linear_eq_to_matrix(eqs, x)
    assert 16 - A.rank() == 10 == comb(4 + 2 - 1, 2)


def test_xi_examples(rng):
    from omegarep.loday import induced_morphism, zero_morphism
    u = random_matrix(rng, 2, 2)
    s = induced_morphism(u, 3)
    f = xi(s.levels, 3)
    vec = matrix_to_u(u)
    for mono in itertools.product(range(3), repeat=4):
        if sum(mono) <= 3:
            assert f(Polynomial.monomial(mono)) == Polynomial.monomial(mono).evaluate(vec)
    assert xi(zero_morphism(2, 2, 3).levels, 3).is_zero()


def test_polyfunctional_truncation():
    f = PolyFunctional(2, 2, {(1, 1): 3})
    with pytest.raises(ShapeError):
        f(Polynomial.monomial((3, 0)))
    with pytest.raises(ShapeError):
        PolyFunctional(1, 2, {(1, 1): 3})


def test_tensor_map_json_round_trip(rng):
    s = kappa(random_sym(rng, 4, 2), 2, 2)
    assert TensorMap.from_json(s.to_json()) == s


def test_size_guard():
    from omegarep.multilinear import BudgetError
    with pytest.raises(BudgetError):
        TensorMap.identity(10, 6)
