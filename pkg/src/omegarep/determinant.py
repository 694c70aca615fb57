"""Antisymmetrized basis tensors, the determinant polynomial, and the identities relating them."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraSpec
from .loday import TruncatedMorphism
from .multilinear import (
    ShapeError,
    SymTensor,
    TensorVector,
    alt,
    kron,
    multiset_to_monomial,
    pair_asym,
    pair_sym,
    u_index,
    xi,
)
from .omega import inverse, permutations, sign
from .polys import Polynomial


def project(t: TensorVector) -> Polynomial:
    """The class of a covector tensor in the symmetric algebra, as a polynomial."""
    terms: dict = {}
    for idx, c in t.coords.items():
        m = multiset_to_monomial(sorted(idx), t.d)
        terms[m] = terms.get(m, 0) + c
    return Polynomial(t.d, terms)


@dataclass(frozen=True)
class DetData:
    m: int
    E: TensorVector
    F: TensorVector
    H: TensorVector
    Hbar: Polynomial
    bases: tuple[str, str]

    def check_pair(self, a: AlgebraSpec, b: AlgebraSpec) -> None:
        if (a.name, b.name) != self.bases or a.dim != self.m or b.dim != self.m:
            raise ShapeError(f"data built for {self.bases}, used with {(a.name, b.name)}")

    def E_power(self, r: int) -> TensorVector:
        return self.E.power(r)

    def F_power(self, r: int) -> TensorVector:
        return self.F.power(r)

    def dual_basis_power(self, r: int) -> TensorVector:
        """(f̌¹⊗…⊗f̌^m)^{⊗r} in dual coordinates."""
        return TensorVector.basis(self.m, tuple(range(self.m)) * r)


def determinant_tensor(m: int) -> TensorVector:
    """H = Σ_g sgn g · l^1_{g⁻¹(1)}⊗…⊗l^m_{g⁻¹(m)} in (U*)^{⊗m}."""
    coords = {}
    for g in permutations(m):
        gi = inverse(g)
        idx = tuple(u_index(gi(k) - 1, k - 1, m) for k in range(1, m + 1))
        coords[idx] = Fraction(sign(g))
    return TensorVector(m * m, m, coords)


def build_det_data(a: AlgebraSpec, b: AlgebraSpec) -> DetData:
    if a.dim != b.dim:
        raise ShapeError(f"dimensions differ: {a.dim} vs {b.dim}")
    m = a.dim
    base = TensorVector.basis(m, tuple(range(m)))
    E = alt(m, base)
    F = alt(m, base)
    H = determinant_tensor(m)
    return DetData(m, E, F, H, project(H), (a.name, b.name))


@dataclass
class IdentityCheck:
    ok: bool
    left: object
    right: object


def check_wE_asym(data: DetData, w: TensorVector, r: int) -> IdentityCheck:
    """⟦(f̌¹⊗…⊗f̌^m)^{⊗r}, [w](E^{⊗r})⟧ against ⟦H^{⊗r}, w⟧."""
    m = data.m
    if w.d != m * m or w.n != m * r:
        raise ShapeError(f"need a degree {m * r} tensor over dimension {m * m}")
    image = kron(w, m, m).apply(data.E_power(r))
    left = pair_asym(data.dual_basis_power(r), image)
    right = pair_asym(data.H.power(r), w)
    return IdentityCheck(left == right, left, right)


def check_wE_sym(data: DetData, w: SymTensor, r: int) -> IdentityCheck:
    """[w](E^{⊗r}) against ⦅H̄^r, w⦆·F^{⊗r}."""
    m = data.m
    if w.d != m * m or w.n != m * r:
        raise ShapeError(f"need a degree {m * r} symmetric tensor over dimension {m * m}")
    left = kron(w.to_tensor(), m, m).apply(data.E_power(r))
    right = data.F_power(r).scale(pair_sym(data.Hbar**r, w))
    return IdentityCheck(left == right, left, right)


def check_sE(data: DetData, s: TruncatedMorphism, r: int) -> IdentityCheck:
    """s_{mr}(E^{⊗r}) against ⟨ξ(s), H̄^r⟩·F^{⊗r}."""
    m = data.m
    if s.N < m * r:
        raise ShapeError(f"level {m * r} missing (morphism stops at {s.N})")
    if (s.d_a, s.d_b) != (m, m):
        raise ShapeError("morphism dimensions do not match the determinant data")
    left = s[m * r].apply(data.E_power(r))
    value = xi(s.levels, m * r)(data.Hbar**r)
    right = data.F_power(r).scale(value)
    return IdentityCheck(left == right, left, right)


def sE_scalar(data: DetData, s: TruncatedMorphism, r: int):
    return xi(s.levels, data.m * r)(data.Hbar**r)
