"""The category of finite sets {1..n} and surjections, and its bijections."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Surjection:
    """A surjective map {1..m} -> {1..n}; ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]
    codomain_size: int

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        n = self.codomain_size
        if n < 0:
            raise ValueError("codomain size must be nonnegative")
        if any(not 1 <= x <= n for x in images):
            raise ValueError(f"images {images} out of range 1..{n}")
        if set(images) != set(range(1, n + 1)):
            raise ValueError(f"{images} is not surjective onto 1..{n}")

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Surjection:
        images = tuple(images)
        return cls(images, max(images, default=0))

    @classmethod
    def parse(cls, text: str) -> Surjection:
        text = text.strip()
        if not text:
            return cls((), 0)
        return cls.from_images(int(t) for t in text.split(","))

    @classmethod
    def identity(cls, n: int) -> Surjection:
        return cls(tuple(range(1, n + 1)), n)

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def fiber(self, j: int) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.images, 1) if x == j)

    def fibers(self) -> list[tuple[int, ...]]:
        return [self.fiber(j) for j in range(1, self.codomain_size + 1)]

    @property
    def is_bijective(self) -> bool:
        return self.domain_size == self.codomain_size

    def __str__(self) -> str:
        return ",".join(map(str, self.images))


Permutation = Surjection


def is_permutation(h: Surjection) -> bool:
    return h.is_bijective


def inverse(g: Surjection) -> Surjection:
    if not g.is_bijective:
        raise ValueError(f"{g} is not a permutation")
    inv = [0] * g.domain_size
    for i, x in enumerate(g.images, 1):
        inv[x - 1] = i
    return Surjection(tuple(inv), g.domain_size)


def sign(g: Surjection) -> int:
    if not g.is_bijective:
        raise ValueError(f"{g} is not a permutation")
    seen = [False] * g.domain_size
    s = 1
    for start in range(g.domain_size):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = g.images[i] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def compose(h: Surjection, g: Surjection) -> Surjection:
    """h∘g: apply g first."""
    if g.codomain_size != h.domain_size:
        raise ValueError(
            f"cannot compose: codomain {g.codomain_size} != domain {h.domain_size}"
        )
    return Surjection(tuple(h(x) for x in g.images), h.codomain_size)


def enumerate_surjections(m: int, n: int) -> list[Surjection]:
    """All surjections m -> n in lexicographic order of image lists."""
    if m < 0 or n < 0:
        raise ValueError("sizes must be nonnegative")
    if m < n or (n == 0 and m > 0):
        return []
    out = []
    full = set(range(1, n + 1))
    for images in itertools.product(range(1, n + 1), repeat=m):
        if set(images) == full:
            out.append(Surjection(images, n))
    return out


def permutations(n: int) -> list[Surjection]:
    return [Surjection(p, n) for p in itertools.permutations(range(1, n + 1))]


def transposition(n: int, k: int) -> Surjection:
    """The adjacent transposition swapping k and k+1 in {1..n}."""
    images = list(range(1, n + 1))
    images[k - 1], images[k] = images[k], images[k - 1]
    return Surjection(tuple(images), n)


def tau(n: int) -> Surjection:
    """The merge n+2 -> n+1 sending 1 to 1 and i to i-1 for i > 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Surjection((1,) + tuple(range(1, n + 2)), n + 1)


@dataclass(frozen=True)
class Merge:
    """The generator g2∘τ_k∘g1 with permutations g1, g2."""

    k: int
    before: Surjection
    after: Surjection

    @property
    def surjection(self) -> Surjection:
        return compose(self.after, compose(tau(self.k), self.before))

    def __str__(self) -> str:
        parts = []
        if self.after != Surjection.identity(self.k + 1):
            parts.append(f"[{self.after}]")
        parts.append(f"tau_{self.k}")
        if self.before != Surjection.identity(self.k + 2):
            parts.append(f"[{self.before}]")
        return "∘".join(parts)


def _as_map(factor) -> Surjection:
    return factor.surjection if isinstance(factor, Merge) else factor


def decompose(h: Surjection) -> list:
    """Factor ``h`` into merges and a final permutation, listed in application order.

    Fibers are scanned by their minimal element; the two smallest points of the
    first non-singleton fiber are moved to positions 1, 2 and merged by τ. A
    trailing identity permutation is dropped unless it is the only factor.
    """
    factors: list = []
    current = h
    while not current.is_bijective:
        m = current.domain_size
        fibers = sorted(current.fibers(), key=min)
        fiber = next(f for f in fibers if len(f) >= 2)
        a, b = fiber[0], fiber[1]
        rest = [i for i in range(1, m + 1) if i not in (a, b)]
        before = [0] * m
        before[a - 1], before[b - 1] = 1, 2
        for pos, i in enumerate(rest, 3):
            before[i - 1] = pos
        factors.append(Merge(m - 2, Surjection(tuple(before), m), Surjection.identity(m - 1)))
        current = Surjection(
            (current(a),) + tuple(current(i) for i in rest), current.codomain_size
        )
    if not factors or current != Surjection.identity(current.domain_size):
        factors.append(current)
    return factors


def recompose(factors: Iterable, domain_size: int | None = None) -> Surjection:
    factors = list(factors)
    if not factors:
        if domain_size is None:
            raise ValueError("empty factorization needs a domain size")
        return Surjection.identity(domain_size)
    result = _as_map(factors[0])
    for f in factors[1:]:
        result = compose(_as_map(f), result)
    return result
