"""Naturality of truncated morphisms L_A -> L_B: discrepancies, solving, and the dual test."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import linalg
from .algebra import AlgebraSpec, fixture
from .ideal import truncated_span
from .loday import TruncatedMorphism, loday_map
from .multilinear import (
    MAX_TENSOR_SIZE,
    BudgetError,
    ShapeError,
    TensorMap,
    multi_indices,
    xi,
)
from .omega import enumerate_surjections, tau
from .polys import Polynomial

MAX_UNKNOWNS = MAX_TENSOR_SIZE


def discrepancy(a: AlgebraSpec, b: AlgebraSpec, s: TruncatedMorphism, n: int) -> TensorMap:
    """r_n = L_B(τ_n)∘s_{n+2} − s_{n+1}∘L_A(τ_n)."""
    if n < 0 or n + 2 > s.N:
        raise ShapeError(f"r_{n} needs level {n + 2}, morphism stops at {s.N}")
    t = tau(n)
    return loday_map(b, t) @ s[n + 2] - s[n + 1] @ loday_map(a, t)


@dataclass
class NaturalityReport:
    ok: bool
    non_equivariant_levels: list = field(default_factory=list)
    nonzero_discrepancies: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        if self.ok:
            return ["PASS: equivariant at every level, all τ-discrepancies vanish"]
        out = []
        for n in self.non_equivariant_levels:
            out.append(f"FAIL: level {n} is not Σ_{n}-equivariant")
        for n in self.nonzero_discrepancies:
            dst, src, v = self.witnesses[n]
            out.append(f"FAIL: r_{n} != 0, entry {_fmt_idx(dst)} <- {_fmt_idx(src)} is {v}")
        return out


def _fmt_idx(idx) -> str:
    return "(" + ",".join(str(x + 1) for x in idx) + ")"


def is_natural(a: AlgebraSpec, b: AlgebraSpec, s: TruncatedMorphism) -> NaturalityReport:
    """Σ_n-equivariance at each level plus r_n = 0 for n <= N - 2."""
    _check_dims(a, b, s)
    rep = NaturalityReport(True)
    rep.non_equivariant_levels = s.equivariance_failures()
    for n in range(s.N - 1):
        r = discrepancy(a, b, s, n)
        if not r.is_zero():
            rep.nonzero_discrepancies.append(n)
            rep.witnesses[n] = min(r.entries(), key=lambda e: (e[1], e[0]))
    rep.ok = not rep.non_equivariant_levels and not rep.nonzero_discrepancies
    return rep


def _check_dims(a: AlgebraSpec, b: AlgebraSpec, s: TruncatedMorphism):
    if (s.d_a, s.d_b) != (a.dim, b.dim):
        raise ShapeError(f"morphism is {s.d_a}->{s.d_b}, algebras are {a.dim}->{b.dim}")


@dataclass
class SquareCheck:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def check_all_squares(a: AlgebraSpec, b: AlgebraSpec, s: TruncatedMorphism,
                      max_domain: int | None = None) -> SquareCheck:
    """L_B(h)∘s_m = s_n∘L_A(h) for every surjection h: m -> n with 1 <= n <= m <= max_domain."""
    _check_dims(a, b, s)
    top = s.N if max_domain is None else max_domain
    if top > s.N:
        raise ShapeError(f"domain {top} beyond level {s.N}")
    checked, failures = 0, []
    for m in range(1, top + 1):
        for n in range(1, m + 1):
            for h in enumerate_surjections(m, n):
                checked += 1
                if loday_map(b, h) @ s[m] != s[n] @ loday_map(a, h):
                    failures.append(h)
    return SquareCheck(checked, failures)


class Layout:
    """Coordinates of a truncated morphism: all entries of s_0..s_N, level by level.

    Within a level the entry (dst, src) sits at ``rank(dst) * d_a^n + rank(src)``.
    """

    def __init__(self, d_a: int, d_b: int, N: int):
        self.d_a, self.d_b, self.N = d_a, d_b, N
        self.offsets = []
        total = 0
        for n in range(N + 1):
            if (d_a * d_b) ** n > MAX_UNKNOWNS:
                raise BudgetError(f"level {n} has {(d_a * d_b) ** n} unknowns")
            self.offsets.append(total)
            total += (d_a * d_b) ** n
        if total > MAX_UNKNOWNS:
            raise BudgetError(f"{total} unknowns exceeds {MAX_UNKNOWNS}")
        self.size = total

    @staticmethod
    def _rank(idx, d) -> int:
        r = 0
        for x in idx:
            r = r * d + x
        return r

    def col(self, n: int, dst, src) -> int:
        return self.offsets[n] + self._rank(dst, self.d_b) * self.d_a**n + self._rank(src, self.d_a)

    def level_of(self, c: int) -> int:
        for n in range(self.N, -1, -1):
            if c >= self.offsets[n]:
                return n
        raise IndexError(c)

    def unrank(self, c: int):
        n = self.level_of(c)
        r = c - self.offsets[n]
        dr, sr = divmod(r, self.d_a**n)

        def digits(x, d):
            out = []
            for _ in range(n):
                x, k = divmod(x, d)
                out.append(k)
            return tuple(reversed(out))

        return n, digits(dr, self.d_b), digits(sr, self.d_a)

    def to_morphism(self, vec: Mapping[int, object]) -> TruncatedMorphism:
        ent = [dict() for _ in range(self.N + 1)]
        for c, v in vec.items():
            n, dst, src = self.unrank(c)
            ent[n][(dst, src)] = v
        return TruncatedMorphism(
            [TensorMap(self.d_a, n, self.d_b, n, ent[n]) for n in range(self.N + 1)]
        )

    def to_vector(self, s: TruncatedMorphism) -> dict[int, object]:
        if (s.d_a, s.d_b) != (self.d_a, self.d_b) or s.N < self.N:
            raise ShapeError("morphism does not fit this layout")
        return {self.col(n, dst, src): v
                for n in range(self.N + 1) for dst, src, v in s[n].entries()}


def equivariance_rows(layout: Layout) -> list[dict[int, int]]:
    rows = []
    for n in range(2, layout.N + 1):
        for k in range(1, n):
            for dst in multi_indices(layout.d_b, n):
                for src in multi_indices(layout.d_a, n):
                    gd = _swap(dst, k)
                    gs = _swap(src, k)
                    a, b = layout.col(n, dst, src), layout.col(n, gd, gs)
                    if a < b:
                        rows.append({a: 1, b: -1})
    return rows


def _swap(idx, k):
    out = list(idx)
    out[k - 1], out[k] = out[k], out[k - 1]
    return tuple(out)


def discrepancy_rows(a: AlgebraSpec, b: AlgebraSpec, layout: Layout) -> list[dict[int, object]]:
    """Entries of r_n, n + 2 <= N, as linear forms in the layout coordinates."""
    rows = []
    for n in range(layout.N - 1):
        lb = loday_map(b, tau(n))
        la = loday_map(a, tau(n))
        for src in multi_indices(a.dim, n + 2):
            acc: dict = {}
            for mid, col in lb.cols.items():
                for out, c in col.items():
                    row = acc.setdefault(out, {})
                    k = layout.col(n + 2, mid, src)
                    row[k] = row.get(k, 0) + c
            for mid, c in la.cols.get(src, {}).items():
                for out in multi_indices(b.dim, n + 1):
                    row = acc.setdefault(out, {})
                    k = layout.col(n + 1, out, mid)
                    row[k] = row.get(k, 0) - c
            for out in sorted(acc):
                row = {k: v for k, v in acc[out].items() if v != 0}
                if row:
                    rows.append(row)
    return rows


@dataclass
class HomSpace:
    layout: Layout
    vectors: list

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def morphisms(self) -> list[TruncatedMorphism]:
        return [self.layout.to_morphism(v) for v in self.vectors]


def solve_hom_space(a: AlgebraSpec, b: AlgebraSpec, N: int) -> HomSpace:
    """Echelon basis of {s : equivariant at levels <= N, r_n = 0 for n + 2 <= N}."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    layout = Layout(a.dim, b.dim, N)
    ech = linalg.Echelon(layout.size)
    ech.extend(equivariance_rows(layout))
    ech.extend(discrepancy_rows(a, b, layout))
    return HomSpace(layout, ech.nullspace())


def equivariant_space(d_a: int, d_b: int, N: int) -> HomSpace:
    layout = Layout(d_a, d_b, N)
    return HomSpace(layout, linalg.nullspace(equivariance_rows(layout), layout.size))


def perp_space(a: AlgebraSpec, b: AlgebraSpec, N: int) -> HomSpace:
    """Equivariant s with ⟨ξ(s), G⟩ = 0 for every G in the truncated span of M."""
    eq = equivariant_space(a.dim, b.dim, N)
    span = truncated_span(a, b, N)
    functionals = [xi(m.levels, N) for m in eq.morphisms()]
    # unknowns are coefficients on the equivariant basis
    rows = []
    for G in span:
        row = {k: f(G) for k, f in enumerate(functionals)}
        row = {k: v for k, v in row.items() if v != 0}
        if row:
            rows.append(row)
    coeffs = linalg.nullspace(rows, eq.dimension)
    vectors = []
    for c in coeffs:
        vec: dict = {}
        for k, x in c.items():
            for col, v in eq.vectors[k].items():
                vec[col] = vec.get(col, 0) + x * v
        vectors.append({k: v for k, v in sorted(vec.items()) if v != 0})
    return HomSpace(eq.layout, vectors)


def same_space(u: Sequence[Mapping], v: Sequence[Mapping], ncols: int) -> bool:
    """Equal spans: equal ranks and each basis lies in the other's span."""
    eu = linalg.Echelon(ncols).extend(u)
    ev = linalg.Echelon(ncols).extend(v)
    return (eu.rank == ev.rank == len(u) == len(v)
            and all(eu.contains(x) for x in v) and all(ev.contains(x) for x in u))


@dataclass
class PerpReport:
    ok: bool
    checked: int
    violations: list

    def lines(self, names=None) -> list[str]:
        if self.ok:
            return [f"PASS: ξ(s) annihilates all {self.checked} spanning polynomials of M"]
        return [f"FAIL: ⟨ξ(s), G⟩ = {v} for G = {g!r}" for g, v in self.violations[:5]]


def perp_test(a: AlgebraSpec, b: AlgebraSpec, s: TruncatedMorphism, N: int | None = None) -> PerpReport:
    _check_dims(a, b, s)
    N = s.N if N is None else N
    functional = xi(s.levels, N)
    span = truncated_span(a, b, N)
    violations = []
    for G in span:
        v = functional(G)
        if v != 0:
            violations.append((G, v))
    return PerpReport(not violations, len(span), violations)


def counterexample_morphism(N: int) -> TruncatedMorphism:
    """X^{e1}⊗…⊗X^{en} ↦ k_{e1+…+en} Y^{e1}⊗…⊗Y^{en}, k_m = (−1)^{⌊m/2⌋}, for AX -> BY."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    levels = []
    for n in range(N + 1):
        ent = {(e, e): Fraction((-1) ** (sum(e) // 2)) for e in multi_indices(2, n)}
        levels.append(TensorMap(2, n, 2, n, ent))
    return TruncatedMorphism(levels)


@lru_cache(maxsize=None)
def counterexample_algebras() -> tuple[AlgebraSpec, AlgebraSpec]:
    return fixture("ax"), fixture("by")


def s1_forced_zero(space: HomSpace) -> bool:
    """Level 1 vanishes on the whole solution space."""
    return all(m[1].is_zero() for m in space.morphisms()) if space.layout.N >= 1 else False


def polynomial_value(s: TruncatedMorphism, f: Polynomial, N: int | None = None):
    """⟨ξ(s), f⟩."""
    return xi(s.levels, s.N if N is None else N)(f)
