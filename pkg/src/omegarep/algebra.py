"""Finite-dimensional commutative algebras (no unity required) given by structure constants."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .arith import format_scalar, to_rational

FIXTURE_NAMES = ("idem1", "nil1", "ax", "by")


class AlgebraFormatError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    """``constants[i][j][k]`` is the coefficient of e_k in e_i·e_j (0-based)."""

    name: str
    dim: int
    constants: tuple = field(repr=False)

    def __post_init__(self):
        if self.dim < 1:
            raise AlgebraFormatError("algebra dimension must be at least 1")
        m = self.dim
        try:
            c = tuple(
                tuple(tuple(to_rational(x) for x in self.constants[i][j]) for j in range(m))
                for i in range(m)
            )
        except (IndexError, TypeError) as exc:
            raise AlgebraFormatError(f"constants are not an {m}x{m}x{m} array") from exc
        if len(self.constants) != m or any(
            len(row) != m or any(len(v) != m for v in row) for row in self.constants
        ):
            raise AlgebraFormatError(f"constants are not an {m}x{m}x{m} array")
        object.__setattr__(self, "constants", c)

    def basis_product(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.constants[i][j]

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        m = self.dim
        if len(x) != m or len(y) != m:
            raise ValueError(f"vectors must have length {m}")
        out = [Fraction(0)] * m
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = xi * yj
                for k, ck in enumerate(self.constants[i][j]):
                    if ck:
                        out[k] += c * ck
        return tuple(out)

    def product(self, vectors: Sequence[Sequence]) -> tuple:
        """Left-fold product of one or more vectors."""
        if not vectors:
            raise ValueError("empty product: algebras here have no unity")
        acc = tuple(vectors[0])
        for v in vectors[1:]:
            acc = self.multiply(acc, v)
        return acc

    def basis_vector(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "constants": [
                [[format_scalar(x) for x in v] for v in row] for row in self.constants
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> AlgebraSpec:
        try:
            return cls(str(data["name"]), int(data["dim"]), data["constants"])
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraFormatError(f"malformed algebra: {exc}") from exc


def multiply(a: AlgebraSpec, x: Sequence, y: Sequence) -> tuple:
    return a.multiply(x, y)


@dataclass
class ValidationReport:
    commutative: bool = True
    associative: bool = True
    commutativity_witness: tuple | None = None
    associativity_witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.commutative and self.associative

    def lines(self) -> list[str]:
        out = []
        if self.commutative:
            out.append("PASS commutativity")
        else:
            i, j = self.commutativity_witness
            out.append(f"FAIL commutativity: e{i}·e{j} != e{j}·e{i}")
        if self.associative:
            out.append("PASS associativity")
        else:
            i, j, l = self.associativity_witness
            out.append(f"FAIL associativity: (e{i}·e{j})·e{l} != e{i}·(e{j}·e{l})")
        return out


def validate(a: AlgebraSpec) -> ValidationReport:
    """Check both axioms on basis elements; witnesses are 1-based."""
    rep = ValidationReport()
    m = a.dim
    for i in range(m):
        for j in range(m):
            if a.constants[i][j] != a.constants[j][i]:
                rep.commutative = False
                rep.commutativity_witness = (i + 1, j + 1)
                break
        if not rep.commutative:
            break
    for i in range(m):
        for j in range(m):
            for l in range(m):
                e = a.basis_vector
                left = a.multiply(a.multiply(e(i), e(j)), e(l))
                right = a.multiply(e(i), a.multiply(e(j), e(l)))
                if left != right:
                    rep.associative = False
                    rep.associativity_witness = (i + 1, j + 1, l + 1)
                    return rep
    return rep


def load_algebra(path: str | Path) -> AlgebraSpec:
    """Read an algebra file; bare fixture names (``ax``, ``nil1`` ...) resolve to built-ins."""
    p = Path(path)
    if not p.exists() and str(path) in FIXTURE_NAMES:
        return fixture(str(path))
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"{path}: {exc}") from exc
    return AlgebraSpec.from_json(data)


def save_algebra(a: AlgebraSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(a.to_json(), indent=1) + "\n", encoding="utf-8")


def fixture(name: str) -> AlgebraSpec:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
    text = resources.files("omegarep.fixtures").joinpath(f"{name}.json").read_text("utf-8")
    return AlgebraSpec.from_json(json.loads(text))
