"""Tensor powers, the symmetric-group action, pairings and the maps κ, θ, ξ.

Multi-indices are 0-based tuples, first tensor factor most significant. A
linear map u: A -> B is a (dim B x dim A) matrix; its coordinate vector in
U = Hom(A, B) puts entry ``u[j][i]`` (coefficient of u(e_i) on f_j) at index
``i * dim_B + j``, which is also the index of the variable l_i^j of k[U].
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .arith import FpElement, format_scalar, to_rational
from .omega import Surjection, permutations, sign, transposition

MAX_TENSOR_SIZE = 100_000

MultiIndex = tuple


class BudgetError(RuntimeError):
    """A requested object exceeds the desk-scale size guards."""


class ShapeError(ValueError):
    pass


def check_size(d: int, n: int) -> int:
    size = d**n
    if size > MAX_TENSOR_SIZE:
        raise BudgetError(f"tensor space of dimension {d}^{n} = {size} exceeds {MAX_TENSOR_SIZE}")
    return size


def multi_indices(d: int, n: int) -> Iterable[MultiIndex]:
    check_size(d, n)
    return itertools.product(range(d), repeat=n)


def _clean(coords: Mapping) -> dict:
    return {k: v for k, v in coords.items() if v != 0}


def _permute_index(g: Surjection, idx: MultiIndex) -> MultiIndex:
    # g(v_1⊗…⊗v_n) = v_{g⁻¹(1)}⊗…⊗v_{g⁻¹(n)}: factor i moves to slot g(i)
    out = [0] * len(idx)
    for i, x in enumerate(idx):
        out[g.images[i] - 1] = x
    return tuple(out)


@dataclass(frozen=True)
class TensorVector:
    """Sparse element of V^{⊗n}, dim V = d."""

    d: int
    n: int
    coords: Mapping = field(default_factory=dict)

    def __post_init__(self):
        coords = _clean(self.coords)
        for idx in coords:
            if len(idx) != self.n or any(not 0 <= x < self.d for x in idx):
                raise ShapeError(f"index {idx} invalid for degree {self.n}, dimension {self.d}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def basis(cls, d: int, idx: Sequence[int]) -> TensorVector:
        return cls(d, len(idx), {tuple(idx): Fraction(1)})

    @classmethod
    def elementary(cls, vectors: Sequence[Sequence]) -> TensorVector:
        """v_1⊗…⊗v_n from coordinate vectors of equal length."""
        if not vectors:
            raise ShapeError("use TensorVector.scalar for degree 0")
        d = len(vectors[0])
        coords: dict = {}
        nz = [[(i, x) for i, x in enumerate(v) if x != 0] for v in vectors]
        for combo in itertools.product(*nz):
            c = 1
            for _, x in combo:
                c = c * x
            coords[tuple(i for i, _ in combo)] = c
        return cls(d, len(vectors), coords)

    @classmethod
    def scalar(cls, d: int, c) -> TensorVector:
        return cls(d, 0, {(): c})

    def __getitem__(self, idx) -> object:
        return self.coords.get(tuple(idx), 0)

    def _check(self, other: TensorVector):
        if (self.d, self.n) != (other.d, other.n):
            raise ShapeError(f"shape ({self.d},{self.n}) vs ({other.d},{other.n})")

    def __add__(self, other: TensorVector) -> TensorVector:
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
        return TensorVector(self.d, self.n, out)

    def __neg__(self) -> TensorVector:
        return TensorVector(self.d, self.n, {k: -v for k, v in self.coords.items()})

    def __sub__(self, other: TensorVector) -> TensorVector:
        return self + (-other)

    def scale(self, c) -> TensorVector:
        return TensorVector(self.d, self.n, {k: c * v for k, v in self.coords.items()})

    def tensor(self, other: TensorVector) -> TensorVector:
        if self.d != other.d:
            raise ShapeError("tensor factors over different spaces")
        coords = {
            a + b: x * y for a, x in self.coords.items() for b, y in other.coords.items()
        }
        return TensorVector(self.d, self.n + other.n, coords)

    def power(self, r: int) -> TensorVector:
        out = TensorVector.scalar(self.d, Fraction(1))
        for _ in range(r):
            out = out.tensor(self)
        return out

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return (self.d, self.n, self.coords) == (other.d, other.n, other.coords)

    __hash__ = None


def permute(g: Surjection, t: TensorVector) -> TensorVector:
    if not g.is_bijective or g.domain_size != t.n:
        raise ShapeError(f"permutation of size {g.domain_size} acting on degree {t.n}")
    return TensorVector(t.d, t.n, {_permute_index(g, k): v for k, v in t.coords.items()})


def alt(n: int, t: TensorVector) -> TensorVector:
    """Signed orbit sum Σ_g sgn(g)·g t."""
    if t.n != n:
        raise ShapeError(f"alt_{n} applied to degree {t.n}")
    out: dict = {}
    for g in permutations(n):
        s = sign(g)
        for k, v in t.coords.items():
            k2 = _permute_index(g, k)
            out[k2] = out.get(k2, 0) + s * v
    return TensorVector(t.d, n, out)


def pair_asym(z: TensorVector, w: TensorVector) -> object:
    """Full contraction of a covector tensor (dual-basis coordinates) with a tensor."""
    z._check(w)
    small, big = (z, w) if len(z.coords) <= len(w.coords) else (w, z)
    total = 0
    for k, v in small.coords.items():
        x = big.coords.get(k)
        if x:
            total += v * x
    return total


class TensorMap:
    """Sparse linear map V^{⊗m} -> W^{⊗n} stored by source columns."""

    __slots__ = ("src_dim", "src_deg", "dst_dim", "dst_deg", "cols")

    def __init__(self, src_dim: int, src_deg: int, dst_dim: int, dst_deg: int,
                 entries: Mapping | None = None, *, cols: Mapping | None = None):
        self.src_dim, self.src_deg = src_dim, src_deg
        self.dst_dim, self.dst_deg = dst_dim, dst_deg
        built: dict = {}
        if cols is not None:
            for src, col in cols.items():
                col = {k: v for k, v in col.items() if v != 0}
                if col:
                    built[tuple(src)] = col
        for (dst, src), v in (entries or {}).items():
            if v != 0:
                built.setdefault(tuple(src), {})
                col = built[tuple(src)]
                col[tuple(dst)] = col.get(tuple(dst), 0) + v
                if col[tuple(dst)] == 0:
                    del col[tuple(dst)]
                    if not col:
                        del built[tuple(src)]
        for src, col in built.items():
            self._check_idx(src, src_dim, src_deg)
            for dst in col:
                self._check_idx(dst, dst_dim, dst_deg)
        self.cols = built

    @staticmethod
    def _check_idx(idx, d, n):
        if len(idx) != n or any(not 0 <= x < d for x in idx):
            raise ShapeError(f"index {idx} invalid for degree {n}, dimension {d}")

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return (self.src_dim, self.src_deg, self.dst_dim, self.dst_deg)

    @classmethod
    def identity(cls, d: int, n: int, one=Fraction(1)) -> TensorMap:
        return cls(d, n, d, n, cols={i: {i: one} for i in multi_indices(d, n)})

    @classmethod
    def zero(cls, src_dim: int, src_deg: int, dst_dim: int, dst_deg: int) -> TensorMap:
        return cls(src_dim, src_deg, dst_dim, dst_deg)

    @classmethod
    def from_matrix(cls, u: Sequence[Sequence]) -> TensorMap:
        """Degree-1 map from a (rows = target, cols = source) matrix."""
        rows = len(u)
        ncols = len(u[0]) if rows else 0
        ent = {((j,), (i,)): to_rational(u[j][i]) if not isinstance(u[j][i], FpElement) else u[j][i]
               for j in range(rows) for i in range(ncols) if u[j][i] != 0}
        return cls(ncols, 1, rows, 1, ent)

    def entries(self) -> Iterable[tuple[MultiIndex, MultiIndex, object]]:
        for src, col in self.cols.items():
            for dst, v in col.items():
                yield dst, src, v

    def entry_dict(self) -> dict:
        return {(dst, src): v for dst, src, v in self.entries()}

    def __getitem__(self, key) -> object:
        dst, src = key
        return self.cols.get(tuple(src), {}).get(tuple(dst), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorMap):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    __hash__ = None

    def __repr__(self) -> str:
        return f"TensorMap{self.shape}[{sum(len(c) for c in self.cols.values())} nonzeros]"

    def is_zero(self) -> bool:
        return not self.cols

    def __add__(self, other: TensorMap) -> TensorMap:
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} vs {other.shape}")
        cols = {s: dict(c) for s, c in self.cols.items()}
        for src, col in other.cols.items():
            target = cols.setdefault(src, {})
            for dst, v in col.items():
                target[dst] = target.get(dst, 0) + v
        return TensorMap(*self.shape, cols=cols)

    def scale(self, c) -> TensorMap:
        return TensorMap(*self.shape, cols={s: {d: c * v for d, v in col.items()}
                                            for s, col in self.cols.items()})

    def __neg__(self) -> TensorMap:
        return self.scale(-1)

    def __sub__(self, other: TensorMap) -> TensorMap:
        return self + (-other)

    def __matmul__(self, other: TensorMap) -> TensorMap:
        """Composition self∘other."""
        if (other.dst_dim, other.dst_deg) != (self.src_dim, self.src_deg):
            raise ShapeError(f"cannot compose {self.shape} after {other.shape}")
        cols = {}
        for src, col in other.cols.items():
            acc: dict = {}
            for mid, v in col.items():
                for dst, x in self.cols.get(mid, {}).items():
                    acc[dst] = acc.get(dst, 0) + x * v
            cols[src] = acc
        return TensorMap(other.src_dim, other.src_deg, self.dst_dim, self.dst_deg, cols=cols)

    def apply(self, t: TensorVector) -> TensorVector:
        if (t.d, t.n) != (self.src_dim, self.src_deg):
            raise ShapeError(f"map source ({self.src_dim},{self.src_deg}) vs tensor ({t.d},{t.n})")
        acc: dict = {}
        for src, v in t.coords.items():
            for dst, x in self.cols.get(src, {}).items():
                acc[dst] = acc.get(dst, 0) + x * v
        return TensorVector(self.dst_dim, self.dst_deg, acc)

    def tensor(self, other: TensorMap) -> TensorMap:
        """f⊗g acting on the concatenated factors."""
        if (self.src_dim, self.dst_dim) != (other.src_dim, other.dst_dim):
            raise ShapeError("tensor product of maps between different spaces")
        cols = {}
        for s1, c1 in self.cols.items():
            for s2, c2 in other.cols.items():
                cols[s1 + s2] = {d1 + d2: x * y for d1, x in c1.items() for d2, y in c2.items()}
        return TensorMap(self.src_dim, self.src_deg + other.src_deg,
                         self.dst_dim, self.dst_deg + other.dst_deg, cols=cols)

    def power(self, n: int, one=Fraction(1)) -> TensorMap:
        out = TensorMap(self.src_dim, 0, self.dst_dim, 0, cols={(): {(): one}})
        for _ in range(n):
            out = out.tensor(self)
        return out

    def conjugate(self, g: Surjection) -> TensorMap:
        """The action (g·t)(x) = g t(g⁻¹ x); needs equal source and target degree."""
        if not (self.src_deg == self.dst_deg == g.domain_size):
            raise ShapeError("conjugation needs degree-preserving map of matching size")
        cols = {}
        for src, col in self.cols.items():
            cols[_permute_index(g, src)] = {_permute_index(g, d): v for d, v in col.items()}
        return TensorMap(*self.shape, cols=cols)

    def is_equivariant(self) -> bool:
        """Commutes with Σ_n (checked on adjacent transpositions, which generate it)."""
        if self.src_deg != self.dst_deg:
            raise ShapeError("equivariance needs equal degrees")
        n = self.src_deg
        for k in range(1, n):
            g = transposition(n, k)
            for dst, src, v in self.entries():
                if self[_permute_index(g, dst), _permute_index(g, src)] != v:
                    return False
        return True

    def dense(self) -> list[list]:
        rows = list(multi_indices(self.dst_dim, self.dst_deg))
        cols = list(multi_indices(self.src_dim, self.src_deg))
        return [[self[r, c] for c in cols] for r in rows]

    def is_invertible(self) -> bool:
        n_src = check_size(self.src_dim, self.src_deg)
        n_dst = check_size(self.dst_dim, self.dst_deg)
        if n_src != n_dst:
            return False
        index = {idx: k for k, idx in enumerate(multi_indices(self.src_dim, self.src_deg))}
        modulus = None
        for _, _, v in self.entries():
            if isinstance(v, FpElement):
                modulus = v.p
            break
        rows = ({index[d]: v for d, v in col.items()} for _, col in sorted(self.cols.items()))
        # rank of the column set; missing columns are zero
        return len(self.cols) == n_src and linalg.rank(rows, n_dst, modulus) == n_src

    def to_json(self) -> dict:
        return {
            "src_dim": self.src_dim,
            "src_deg": self.src_deg,
            "dst_dim": self.dst_dim,
            "dst_deg": self.dst_deg,
            "entries": [
                [[x + 1 for x in dst], [x + 1 for x in src], format_scalar(v)]
                for dst, src, v in sorted(self.entries(), key=lambda e: (e[0], e[1]))
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> TensorMap:
        try:
            ent = {}
            for dst, src, v in data["entries"]:
                key = (tuple(int(x) - 1 for x in dst), tuple(int(x) - 1 for x in src))
                if key in ent:
                    raise ShapeError(f"duplicate entry {dst}, {src}")
                ent[key] = to_rational(v)
            return cls(int(data["src_dim"]), int(data["src_deg"]),
                       int(data["dst_dim"]), int(data["dst_deg"]), ent)
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed tensor map: {exc}") from exc


def u_dim(d_a: int, d_b: int) -> int:
    return d_a * d_b


def u_index(i: int, j: int, d_b: int) -> int:
    """Coordinate index of the matrix unit e_i ↦ f_j (0-based)."""
    return i * d_b + j


def u_pair(v: int, d_b: int) -> tuple[int, int]:
    return divmod(v, d_b)


def matrix_to_u(u: Sequence[Sequence]) -> list:
    d_b = len(u)
    d_a = len(u[0])
    return [u[j][i] for i in range(d_a) for j in range(d_b)]


def u_to_matrix(vec: Sequence, d_a: int, d_b: int) -> list[list]:
    return [[vec[u_index(i, j, d_b)] for i in range(d_a)] for j in range(d_b)]


def kron(w: TensorVector, d_a: int, d_b: int) -> TensorMap:
    """The Kronecker product [w]: A^{⊗n} -> B^{⊗n} of w ∈ Hom(A,B)^{⊗n}."""
    if w.d != d_a * d_b:
        raise ShapeError(f"U has dimension {w.d}, expected {d_a}·{d_b}")
    ent = {}
    for idx, v in w.coords.items():
        pairs = [u_pair(x, d_b) for x in idx]
        ent[(tuple(j for _, j in pairs), tuple(i for i, _ in pairs))] = v
    return TensorMap(d_a, w.n, d_b, w.n, ent)


def sym_basis(d: int, n: int) -> list[tuple[int, ...]]:
    """Multisets of size n over range(d), as sorted tuples, in lexicographic order."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return list(itertools.combinations_with_replacement(range(d), n))


def arrangements(mu: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(itertools.permutations(mu)))


def orbit_size(mu: Sequence[int]) -> int:
    out = math.factorial(len(mu))
    for c in Counter(mu).values():
        out //= math.factorial(c)
    return out


@dataclass(frozen=True)
class SymTensor:
    """Element of D^n(U) in the orbit-sum basis b_μ (sum of distinct arrangements of μ)."""

    d: int
    n: int
    coords: Mapping = field(default_factory=dict)

    def __post_init__(self):
        coords = {}
        for mu, v in self.coords.items():
            key = tuple(sorted(mu))
            if len(key) != self.n or any(not 0 <= x < self.d for x in key):
                raise ShapeError(f"multiset {mu} invalid for degree {self.n}, dimension {self.d}")
            if key in coords:
                raise ShapeError(f"multiset {key} given twice")
            if v != 0:
                coords[key] = v
        object.__setattr__(self, "coords", coords)

    def __getitem__(self, mu) -> object:
        return self.coords.get(tuple(sorted(mu)), 0)

    def to_tensor(self) -> TensorVector:
        check_size(self.d, self.n)
        out = {}
        for mu, v in self.coords.items():
            for idx in arrangements(mu):
                out[idx] = v
        return TensorVector(self.d, self.n, out)

    @classmethod
    def from_tensor(cls, t: TensorVector) -> SymTensor:
        out = {}
        for idx, v in t.coords.items():
            key = tuple(sorted(idx))
            if key in out and out[key] != v:
                raise ShapeError("tensor is not symmetric")
            out[key] = v
        for key, v in out.items():
            for idx in arrangements(key):
                if t[idx] != v:
                    raise ShapeError("tensor is not symmetric")
        return cls(t.d, t.n, out)

    @classmethod
    def power_of(cls, u_vec: Sequence, n: int) -> SymTensor:
        """u^{⊗n} as a symmetric tensor: coefficient of b_μ is Π u_v over μ."""
        d = len(u_vec)
        coords = {}
        for mu in sym_basis(d, n):
            c = Fraction(1)
            for v in mu:
                c = c * u_vec[v]
                if c == 0:
                    break
            coords[mu] = c
        return cls(d, n, coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.d, self.n, self.coords) == (other.d, other.n, other.coords)

    __hash__ = None


def monomial_to_multiset(exps: Sequence[int]) -> tuple[int, ...]:
    return tuple(v for v, e in enumerate(exps) for _ in range(e))


def multiset_to_monomial(mu: Sequence[int], d: int) -> tuple[int, ...]:
    exps = [0] * d
    for v in mu:
        exps[v] += 1
    return tuple(exps)


def monomial_preimage(exps: Sequence[int]) -> TensorVector:
    """The elementary covector tensor l_{v1}⊗…⊗l_{vn} (v sorted) projecting to the monomial."""
    d = len(exps)
    return TensorVector(d, sum(exps), {monomial_to_multiset(exps): Fraction(1)})


def polynomial_preimage(f) -> TensorVector:
    """A tensor in (U*)^{⊗n} whose projection is the homogeneous polynomial ``f``."""
    degs = {sum(m) for m in f.terms}
    if len(degs) > 1:
        raise ShapeError("polynomial is not homogeneous")
    n = degs.pop() if degs else 0
    coords = {monomial_to_multiset(m): c for m, c in f.terms.items()}
    return TensorVector(f.nvars, n, coords)


def pair_sym(f, w: SymTensor) -> object:
    """The pairing of a homogeneous polynomial with a symmetric tensor.

    For a monomial, any arrangement of its variables is a preimage and its
    contraction with w reads the orbit coordinate of that multiset.
    """
    if f.nvars != w.d:
        raise ShapeError(f"polynomial in {f.nvars} variables vs tensor over dimension {w.d}")
    total = 0
    for exps, c in f.terms.items():
        if sum(exps) != w.n:
            raise ShapeError(f"degree {sum(exps)} term paired with degree {w.n} tensor")
        x = w.coords.get(monomial_to_multiset(exps))
        if x:
            total += c * x
    return total


@dataclass(frozen=True)
class PolyFunctional:
    """Linear functional on polynomials of degree <= N, by its values on monomials."""

    N: int
    nvars: int
    values: Mapping = field(default_factory=dict)

    def __post_init__(self):
        vals = {}
        for m, v in self.values.items():
            m = tuple(m)
            if len(m) != self.nvars or sum(m) > self.N or min(m, default=0) < 0:
                raise ShapeError(f"monomial {m} outside truncation {self.N}")
            if v != 0:
                vals[m] = v
        object.__setattr__(self, "values", vals)

    def __call__(self, f) -> object:
        if f.nvars != self.nvars:
            raise ShapeError("variable count mismatch")
        total = 0
        for m, c in f.terms.items():
            if sum(m) > self.N:
                raise ShapeError(f"term of degree {sum(m)} beyond truncation {self.N}")
            x = self.values.get(m)
            if x:
                total += c * x
        return total

    def is_zero(self) -> bool:
        return not self.values


def theta(W: Sequence[SymTensor], N: int) -> PolyFunctional:
    """⟨θ(W), f⟩ = ⦅f, W⦆, truncated to monomials of degree <= N."""
    if len(W) < N + 1:
        raise ShapeError(f"need symmetric tensors for degrees 0..{N}, got {len(W)}")
    d = W[0].d
    values = {}
    for n in range(N + 1):
        w = W[n]
        if w.n != n or w.d != d:
            raise ShapeError(f"entry {n} has degree {w.n}, dimension {w.d}")
        for mu, v in w.coords.items():
            values[multiset_to_monomial(mu, d)] = v
    return PolyFunctional(N, d, values)


def kappa(w: SymTensor, d_a: int, d_b: int) -> TensorMap:
    """κ on one degree: the Kronecker product of w viewed inside U^{⊗n}."""
    return kron(w.to_tensor(), d_a, d_b)


class EquivarianceError(ValueError):
    pass


def kappa_inv(s: TensorMap) -> SymTensor:
    """The unique W with κ(W) = s, found by an exact solve over the orbit-sum basis."""
    if s.src_deg != s.dst_deg:
        raise ShapeError("κ⁻¹ needs a degree-preserving map")
    if not s.is_equivariant():
        raise EquivarianceError("map does not commute with the symmetric group action")
    d_a, d_b, n = s.src_dim, s.dst_dim, s.src_deg
    d = d_a * d_b
    modulus = None
    for _, _, v in s.entries():
        if isinstance(v, FpElement):
            modulus = v.p
            if n >= modulus:
                raise ArithmeticError(f"degree {n} not supported in characteristic {modulus}")
        break
    basis = sym_basis(d, n)
    check_size(d, n)
    # κ(b_μ) has entry 1 at each arrangement of μ read as (dst, src) pairs
    positions = {}
    for col, mu in enumerate(basis):
        for idx in arrangements(mu):
            positions[idx] = col
    rows, rhs = [], []
    for idx in itertools.product(range(d), repeat=n):
        pairs = [u_pair(x, d_b) for x in idx]
        dst = tuple(j for _, j in pairs)
        src = tuple(i for i, _ in pairs)
        rows.append({positions[idx]: 1})
        rhs.append(s[dst, src])
    try:
        sol = linalg.solve(rows, rhs, len(basis), modulus)
    except linalg.InconsistentSystemError as exc:
        raise ArithmeticError("κ⁻¹ system inconsistent for an equivariant map") from exc
    return SymTensor(d, n, {basis[c]: v for c, v in sol.items()})


def xi(levels: Sequence[TensorMap], N: int) -> PolyFunctional:
    """ξ = θ∘κ⁻¹ applied level by level."""
    if len(levels) < N + 1:
        raise ShapeError(f"need levels 0..{N}")
    W = [kappa_inv(levels[n]) for n in range(N + 1)]
    return theta(W, N)
