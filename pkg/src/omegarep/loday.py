"""The functor L_A on surjections, its restriction T_A to bijections, and induced morphisms."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .algebra import AlgebraSpec
from .multilinear import ShapeError, TensorMap, multi_indices
from .omega import Surjection, compose, enumerate_surjections


def loday_map(a: AlgebraSpec, h: Surjection) -> TensorMap:
    """L_A(h): A^{⊗m} -> A^{⊗n}, multiplying the factors in each fiber h⁻¹(j)."""
    d = a.dim
    fibers = h.fibers()
    cols = {}
    for src in multi_indices(d, h.domain_size):
        outs = [a.product([a.basis_vector(src[i - 1]) for i in fiber]) for fiber in fibers]
        nz = [[(k, x) for k, x in enumerate(v) if x != 0] for v in outs]
        col = {}
        for combo in itertools.product(*nz):
            c = Fraction(1)
            for _, x in combo:
                c *= x
            col[tuple(k for k, _ in combo)] = c
        cols[src] = col
    return TensorMap(d, h.domain_size, d, h.codomain_size, cols=cols)


@dataclass
class FunctorCheck:
    ok: bool
    h: Surjection
    g: Surjection
    witness: tuple | None = None


def functor_check(a: AlgebraSpec, h: Surjection, g: Surjection) -> FunctorCheck:
    """L(h∘g) = L(h)∘L(g), exactly; the witness is a differing (dst, src) entry."""
    hg = compose(h, g)
    left = loday_map(a, hg)
    right = loday_map(a, h) @ loday_map(a, g)
    if left == right:
        return FunctorCheck(True, h, g)
    diff = (left - right).entry_dict()
    key = min(diff)
    return FunctorCheck(False, h, g, key)


class TruncatedMorphism:
    """Maps s_n: A^{⊗n} -> B^{⊗n} for n = 0..N."""

    def __init__(self, levels: Sequence[TensorMap]):
        levels = list(levels)
        if not levels:
            raise ShapeError("a truncated morphism needs at least level 0")
        d_a, d_b = levels[0].src_dim, levels[0].dst_dim
        for n, s in enumerate(levels):
            if s.shape != (d_a, n, d_b, n):
                raise ShapeError(f"level {n} has shape {s.shape}, expected {(d_a, n, d_b, n)}")
        self.levels = levels
        self.d_a, self.d_b = d_a, d_b

    @property
    def N(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, n: int) -> TensorMap:
        return self.levels[n]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedMorphism):
            return NotImplemented
        return self.levels == other.levels

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncatedMorphism(N={self.N}, {self.d_a}->{self.d_b})"

    def truncate(self, N: int) -> TruncatedMorphism:
        if N > self.N:
            raise ShapeError(f"cannot extend level bound {self.N} to {N}")
        return TruncatedMorphism(self.levels[: N + 1])

    def equivariance_failures(self) -> list[int]:
        return [n for n, s in enumerate(self.levels) if not s.is_equivariant()]

    def invertible_levels(self) -> list[bool]:
        return [s.is_invertible() for s in self.levels]

    def to_json(self) -> dict:
        return {"N": self.N, "levels": [s.to_json() for s in self.levels]}

    @classmethod
    def from_json(cls, data) -> TruncatedMorphism:
        try:
            levels = [TensorMap.from_json(x) for x in data["levels"]]
            N = int(data["N"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ShapeError(f"malformed morphism: {exc}") from exc
        if N != len(levels) - 1:
            raise ShapeError(f"N = {N} but {len(levels)} levels given")
        return cls(levels)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> TruncatedMorphism:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ShapeError(f"{path}: {exc}") from exc
        return cls.from_json(data)


def induced_morphism(u: Sequence[Sequence], N: int) -> TruncatedMorphism:
    """T_u with (T_u)_n = u^{⊗n}; ``u`` is a (dim B × dim A) matrix."""
    if not u or not u[0] or any(len(row) != len(u[0]) for row in u):
        raise ShapeError("u must be a nonempty rectangular matrix")
    base = TensorMap.from_matrix(u)
    level = TensorMap(base.src_dim, 0, base.dst_dim, 0, cols={(): {(): Fraction(1)}})
    levels = [level]
    for _ in range(N):
        level = level.tensor(base)
        levels.append(level)
    return TruncatedMorphism(levels)


def zero_morphism(d_a: int, d_b: int, N: int) -> TruncatedMorphism:
    return TruncatedMorphism([TensorMap.zero(d_a, n, d_b, n) for n in range(N + 1)])


def check_functoriality(a: AlgebraSpec, max_domain: int) -> tuple[int, list[FunctorCheck]]:
    """Identities and every composable pair h∘g with dom(g) <= max_domain."""
    checked, failures = 0, []
    for m in range(0, max_domain + 1):
        ident = Surjection.identity(m)
        checked += 1
        if loday_map(a, ident) != TensorMap.identity(a.dim, m):
            failures.append(FunctorCheck(False, ident, ident))
        for n in range(0, m + 1):
            for g in enumerate_surjections(m, n):
                for p in range(0, n + 1):
                    for h in enumerate_surjections(n, p):
                        checked += 1
                        res = functor_check(a, h, g)
                        if not res.ok:
                            failures.append(res)
    return checked, failures
