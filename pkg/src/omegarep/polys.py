"""Multivariate rational polynomials, Buchberger's algorithm and ideal membership."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .arith import format_scalar, to_rational

Monomial = tuple


def grevlex_key(m: Monomial) -> tuple:
    """Sort key: larger key means larger monomial (x_0 > x_1 > …)."""
    return (sum(m), tuple(-e for e in reversed(m)))


def elimination_key(m: Monomial) -> tuple:
    """Block order: the last variable forms its own, larger block; grevlex on the rest."""
    return (m[-1], grevlex_key(m[:-1]))


ORDERS: dict[str, Callable[[Monomial], tuple]] = {
    "grevlex": grevlex_key,
    "elim-last": elimination_key,
}


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Polynomial in ``nvars`` variables: a mapping exponent-tuple -> Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != nvars or any(e < 0 for e in m):
                raise ValueError(f"bad monomial {m} for {nvars} variables")
            if c != 0:
                clean[m] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c) -> Polynomial:
        return cls(nvars, {(0,) * nvars: to_rational(c)})

    @classmethod
    def variable(cls, nvars: int, v: int) -> Polynomial:
        m = [0] * nvars
        m[v] = 1
        return cls(nvars, {tuple(m): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Polynomial:
        return cls(len(exps), {tuple(exps): to_rational(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def _check(self, other: Polynomial):
        if self.nvars != other.nvars:
            raise ValueError(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other) -> Polynomial:
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Polynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            return Polynomial(self.nvars, {m: c * v for m, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, r: int) -> Polynomial:
        if r < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while r:
            if r & 1:
                out = out * base
            base = base * base
            r >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    __hash__ = None

    def mul_term(self, m: Monomial, c) -> Polynomial:
        return Polynomial(self.nvars, {mono_mul(k, m): c * v for k, v in self.terms.items()})

    def homogeneous_part(self, n: int) -> Polynomial:
        return Polynomial(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == n})

    def leading_term(self, key=grevlex_key) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def monic(self, key=grevlex_key) -> Polynomial:
        if not self.terms:
            return self
        _, c = self.leading_term(key)
        return self * (1 / c)

    def extend(self, extra: int) -> Polynomial:
        """Same polynomial in ``nvars + extra`` variables (new ones last)."""
        pad = (0,) * extra
        return Polynomial(self.nvars + extra, {m + pad: c for m, c in self.terms.items()})

    def evaluate(self, point: Sequence):
        """Substitute x_v ↦ point[v]; works for rationals and prime-field elements."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, need {self.nvars}")
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in enumerate(m):
                if e:
                    t = t * point[v] ** e
            total = total + t
        return total

    def sorted_terms(self, key=grevlex_key) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {format_polynomial(self, default_names(self.nvars))!r})"


def default_names(nvars: int) -> list[str]:
    return [f"x[{v + 1}]" for v in range(nvars)]


def format_polynomial(f: Polynomial, names: Sequence[str], key=grevlex_key) -> str:
    """Terms ``c * name^e * …`` joined by `` + ``; the zero polynomial prints as ``0``."""
    if f.is_zero():
        return "0"
    parts = []
    for m, c in f.sorted_terms(key):
        factors = [format_scalar(c)]
        for v, e in enumerate(m):
            if e == 1:
                factors.append(names[v])
            elif e > 1:
                factors.append(f"{names[v]}^{e}")
        parts.append(" * ".join(factors))
    return " + ".join(parts)


_TERM_SPLIT = re.compile(r"\s+\+\s+")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Inverse of ``format_polynomial`` (also accepts a missing leading coefficient)."""
    index = {n: v for v, n in enumerate(names)}
    nvars = len(names)
    text = text.strip()
    if text == "0":
        return Polynomial(nvars)
    out = Polynomial(nvars)
    for term in _TERM_SPLIT.split(text):
        coeff = Fraction(1)
        exps = [0] * nvars
        for factor in (s.strip() for s in term.split("*")):
            if not factor:
                raise ValueError(f"empty factor in {term!r}")
            base, _, power = factor.partition("^")
            base = base.strip()
            if base in index:
                exps[index[base]] += int(power) if power else 1
            else:
                if power:
                    raise ValueError(f"unknown variable {base!r}")
                coeff *= to_rational(base)
        out = out + Polynomial(nvars, {tuple(exps): coeff})
    return out


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis with monic elements, sorted by leading monomial (descending)."""

    order: str
    nvars: int
    polys: list

    @property
    def key(self):
        return ORDERS[self.order]

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_term(self.key)[0] for g in self.polys]

    def contains_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.polys)

    def __len__(self) -> int:
        return len(self.polys)


def _reduce(f: Polynomial, basis: Sequence[Polynomial], lms: Sequence[Monomial], key,
            ) -> Polynomial:
    """Full reduction of ``f`` by monic ``basis`` with leading monomials ``lms``."""
    terms = dict(f.terms)
    rem: dict = {}
    while terms:
        m = max(terms, key=key)
        c = terms.pop(m)
        for g, lm in zip(basis, lms):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = mono_mul(gm, q)
                    nv = terms.get(t, 0) - c * gc
                    if nv:
                        terms[t] = nv
                    else:
                        terms.pop(t, None)
                break
        else:
            rem[m] = c
    return Polynomial(f.nvars, rem)


def _spoly(f: Polynomial, g: Polynomial, lf: Monomial, lg: Monomial) -> Polynomial:
    lcm = mono_lcm(lf, lg)
    return f.mul_term(mono_div(lcm, lf), 1) - g.mul_term(mono_div(lcm, lg), 1)


def buchberger(gens: Iterable[Polynomial], order: str = "grevlex",
               nvars: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Pairs are pruned by the coprime-leading-monomial and chain criteria and
    chosen by the normal strategy (smallest lcm in the order, then index).
    """
    key = ORDERS[order]
    gens = [g for g in gens if not g.is_zero()]
    if nvars is None:
        if not gens:
            raise ValueError("cannot infer the variable count of an empty ideal")
        nvars = gens[0].nvars
    G: list[Polynomial] = []
    lms: list[Monomial] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: Polynomial):
        h = h.monic(key)
        lm = h.leading_term(key)[0]
        idx = len(G)
        G.append(h)
        lms.append(lm)
        for i in range(idx):
            pairs.add((i, idx))

    for g in sorted(gens, key=lambda p: key(p.leading_term(key)[0])):
        h = _reduce(g, G, lms, key)
        if not h.is_zero():
            add(h)

    done: set[tuple[int, int]] = set()
    while pairs:
        i, j = min(pairs, key=lambda p: (key(mono_lcm(lms[p[0]], lms[p[1]])), p))
        pairs.discard((i, j))
        done.add((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if lcm == mono_mul(lms[i], lms[j]):
            continue
        if any(
            k not in (i, j)
            and mono_divides(lms[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        h = _reduce(_spoly(G[i], G[j], lms[i], lms[j]), G, lms, key)
        if not h.is_zero():
            add(h)
    return GroebnerBasis(order, nvars, _interreduce(G, key))


def _interreduce(G: list[Polynomial], key) -> list[Polynomial]:
    G = sorted(G, key=lambda g: key(g.leading_term(key)[0]))
    minimal: list[Polynomial] = []
    for g in G:
        lm = g.leading_term(key)[0]
        if not any(mono_divides(h.leading_term(key)[0], lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        olms = [h.leading_term(key)[0] for h in others]
        lm, lc = g.leading_term(key)
        tail = Polynomial(g.nvars, {m: c for m, c in g.terms.items() if m != lm})
        r = _reduce(tail, others, olms, key)
        reduced.append((r + Polynomial(g.nvars, {lm: lc})).monic(key))
    return sorted(reduced, key=lambda g: key(g.leading_term(key)[0]), reverse=True)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if f.nvars != gb.nvars:
        raise ValueError(f"{f.nvars} variables vs basis in {gb.nvars}")
    return _reduce(f, gb.polys, gb.leading_monomials(), gb.key)


def ideal_contains(gb: GroebnerBasis, f: Polynomial) -> bool:
    return normal_form(f, gb).is_zero()


def is_groebner(gb: GroebnerBasis) -> bool:
    """Every S-polynomial reduces to zero."""
    key = gb.key
    lms = gb.leading_monomials()
    for i in range(len(gb.polys)):
        for j in range(i + 1, len(gb.polys)):
            s = _spoly(gb.polys[i], gb.polys[j], lms[i], lms[j])
            if not _reduce(s, gb.polys, lms, key).is_zero():
                return False
    return True


def radical_member(f: Polynomial, gens: Sequence[Polynomial], nvars: int | None = None) -> bool:
    """f ∈ √I, decided by whether 1 ∈ ⟨I, 1 − t·f⟩ with a fresh last variable t."""
    if f.is_zero():
        return True
    n = f.nvars if nvars is None else nvars
    t = Polynomial.variable(n + 1, n)
    extended = [g.extend(1) for g in gens if not g.is_zero()]
    extended.append(Polynomial.constant(n + 1, 1) - t * f.extend(1))
    return buchberger(extended, "elim-last", n + 1).contains_unit()


def min_power(f: Polynomial, gb: GroebnerBasis, r_max: int = 10) -> int | None:
    """Smallest r in 1..r_max with f^r in the ideal, or None."""
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    p = Polynomial.constant(f.nvars, 1)
    for r in range(1, r_max + 1):
        p = normal_form(p * f, gb)
        if p.is_zero():
            return r
    return None
