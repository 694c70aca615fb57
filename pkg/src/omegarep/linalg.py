"""Sparse exact row reduction.

Rows are mappings ``column -> scalar``. Over the rationals elimination is
fraction-free: rows are scaled to primitive integer vectors and combined by
cross-multiplication. Over F_p residues are reduced directly.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping

from .arith import FpElement


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_row(row: Mapping[int, object]) -> dict[int, int]:
    fr = {c: Fraction(v) for c, v in row.items() if v != 0}
    if not fr:
        return {}
    den = lcm(*(v.denominator for v in fr.values()))
    return _primitive({c: int(v * den) for c, v in fr.items()})


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Each stored row has pivot column equal to its smallest column and no other
    row has a nonzero entry in that column. Rows are added in order; the result
    is the (unique) RREF of the row space.
    """

    def __init__(self, ncols: int, modulus: int | None = None):
        self.ncols = ncols
        self.modulus = modulus
        self._rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def _convert(self, row: Mapping[int, object]) -> dict[int, int]:
        for c in row:
            if not 0 <= c < self.ncols:
                raise IndexError(f"column {c} out of range {self.ncols}")
        if self.modulus is None:
            return _integer_row(row)
        p = self.modulus
        out = {}
        for c, v in row.items():
            if isinstance(v, FpElement):
                if v.p != p:
                    raise TypeError(f"F_{v.p} entry in F_{p} system")
                v = v.value
            elif isinstance(v, Fraction):
                v = v.numerator * pow(v.denominator, -1, p)
            v %= p
            if v:
                out[c] = v
        return out

    def _eliminate(self, row: dict[int, int], col: int, piv: dict[int, int]) -> dict[int, int]:
        a = row[col]
        if self.modulus is None:
            b = piv[col]
            out = {c: b * v for c, v in row.items()}
            for c, v in piv.items():
                nv = out.get(c, 0) - a * v
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
            return _primitive(out) if out else out
        p = self.modulus
        out = dict(row)
        for c, v in piv.items():
            nv = (out.get(c, 0) - a * v) % p
            if nv:
                out[c] = nv
            else:
                out.pop(c, None)
        return out

    def reduce(self, row: Mapping[int, object]) -> dict[int, int]:
        """Reduce a row against the stored pivots (returns the integer/residue form)."""
        r = self._convert(row)
        for col in sorted(c for c in r if c in self._rows):
            if col in r:
                r = self._eliminate(r, col, self._rows[col])
        return r

    def add(self, row: Mapping[int, object]) -> bool:
        """Insert a row; return True when it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        col = min(r)
        if self.modulus is not None:
            inv = pow(r[col], -1, self.modulus)
            r = {c: v * inv % self.modulus for c, v in r.items()}
        for pc in list(self._rows):
            other = self._rows[pc]
            if col in other:
                self._rows[pc] = self._eliminate(other, col, r)
        self._rows[col] = r
        return True

    def extend(self, rows: Iterable[Mapping[int, object]]) -> Echelon:
        for row in rows:
            self.add(row)
        return self

    def contains(self, row: Mapping[int, object]) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[dict[int, object]]:
        """RREF rows with pivot entry 1, ordered by pivot column."""
        out = []
        for col in self.pivots:
            r = self._rows[col]
            if self.modulus is None:
                d = r[col]
                out.append({c: Fraction(v, d) for c, v in sorted(r.items())})
            else:
                out.append({c: FpElement(v, self.modulus) for c, v in sorted(r.items())})
        return out

    def nullspace(self) -> list[dict[int, object]]:
        """Basis of {x : row·x = 0 for all rows}, one vector per free column, in order."""
        rows = self.rows()
        one = Fraction(1) if self.modulus is None else FpElement(1, self.modulus)
        pivset = set(self._rows)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            v = {free: one}
            for r in rows:
                coeff = r.get(free)
                if coeff:
                    v[min(r)] = -coeff
            basis.append(dict(sorted(v.items())))
        return basis


def rank(rows: Iterable[Mapping[int, object]], ncols: int, modulus: int | None = None) -> int:
    return Echelon(ncols, modulus).extend(rows).rank


def nullspace(rows: Iterable[Mapping[int, object]], ncols: int, modulus: int | None = None):
    return Echelon(ncols, modulus).extend(rows).nullspace()


class InconsistentSystemError(ArithmeticError):
    pass


def solve(rows: Iterable[Mapping[int, object]], rhs: Iterable, ncols: int,
          modulus: int | None = None) -> dict[int, object]:
    """One solution of ``rows · x = rhs`` (free variables set to zero)."""
    ech = Echelon(ncols + 1, modulus)
    for row, b in zip(rows, rhs):
        aug = dict(row)
        if b != 0:
            aug[ncols] = -b
        ech.add(aug)
    if ncols in ech.pivots:
        raise InconsistentSystemError("linear system has no solution")
    sol = {}
    for r in ech.rows():
        piv = min(r)
        val = r.get(ncols, 0)
        if val != 0:
            sol[piv] = -val
    return sol


def dense_rows(matrix) -> list[dict[int, object]]:
    return [{c: v for c, v in enumerate(row) if v != 0} for row in matrix]
