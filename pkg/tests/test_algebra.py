from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from omegarep.algebra import AlgebraFormatError, AlgebraSpec, load_algebra, save_algebra, validate

from conftest import FIXTURES, rationals


def test_fixtures_validate(alg):
    for a in alg.values():
        assert validate(a).ok


def test_commutativity_witness():
    c = [[["0", "0"], ["1", "0"]], [["0", "0"], ["0", "0"]]]
    rep = validate(AlgebraSpec("bad", 2, c))
    assert not rep.commutative and rep.commutativity_witness == (1, 2)


def test_associativity_witness():
    # e1e1 = e2, e1e2 = e1, e2e2 = 0: (e1e1)e2 = 0 but e1(e1e2) = e2
    c = [[["0", "1"], ["1", "0"]], [["1", "0"], ["0", "0"]]]
    rep = validate(AlgebraSpec("nonassoc", 2, c))
    assert rep.commutative and not rep.associative


def test_dimension_zero_rejected():
    with pytest.raises(AlgebraFormatError):
        AlgebraSpec("empty", 0, [])


def test_multiply_examples(alg):
    X = (0, 1)
    assert alg["ax"].multiply(X, X) == (1, 0)
    assert alg["by"].multiply(X, X) == (-1, 0)
    assert alg["nil1"].multiply((1,), (1,)) == (0,)
    ax = alg["ax"]
    assert ax.multiply(ax.multiply(X, X), X) == ax.multiply(X, ax.multiply(X, X)) == (0, 1)
    with pytest.raises(ValueError):
        ax.multiply((1,), (1, 0))


vec2 = st.tuples(rationals, rationals)


@given(vec2, vec2, vec2, st.sampled_from(["ax", "by"]), rationals)
def test_symmetric_bilinear(x, y, z, name, c):
    a = FIXTURES[name]
    assert a.multiply(x, y) == a.multiply(y, x)
    xz = tuple(p + c * q for p, q in zip(x, z))
    lhs = a.multiply(xz, y)
    rhs = tuple(p + c * q for p, q in zip(a.multiply(x, y), a.multiply(z, y)))
    assert lhs == rhs


def test_roundtrip(tmp_path, alg):
    for a in alg.values():
        path = tmp_path / f"{a.name}.json"
        save_algebra(a, path)
        assert load_algebra(path) == a
    assert load_algebra("ax") == alg["ax"]


def test_malformed(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"name": "x", "dim": 2, "constants": [[["1"]]]}')
    with pytest.raises(AlgebraFormatError):
        load_algebra(p)
    p.write_text("{not json")
    with pytest.raises(AlgebraFormatError):
        load_algebra(p)
    p.write_text('{"name": "x", "dim": 1, "constants": [[["0.5"]]]}')
    with pytest.raises(AlgebraFormatError):
        load_algebra(p)


def test_rational_constants():
    a = AlgebraSpec("half", 1, [[["1/2"]]])
    assert a.multiply((Fraction(2),), (Fraction(2),)) == (Fraction(2),)
