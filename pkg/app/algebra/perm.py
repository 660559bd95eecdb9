"""Exact arithmetic on permutations of {1..n}.

Points are 1-based in every external format and 0-based in `images`.
Products follow one convention everywhere: ``compose(p, q)`` applies
``q`` first, then ``p``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Sequence

from app.core.errors import DegreeMismatchError, InputParseError, RangeError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Parity(str, enum.Enum):
    even = "even"
    odd = "odd"

    def __xor__(self, other: "Parity") -> "Parity":
        return Parity.odd if self is not other else Parity.even


@dataclass(frozen=True, slots=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if not images:
            raise RangeError("permutation degree must be at least 1")
        if sorted(images) != list(range(len(images))):
            raise RangeError(f"not a bijection on 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Permutation":
        # skips validation; callers guarantee a bijection
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise RangeError("permutation degree must be at least 1")
        return cls._trusted(tuple(range(n)))

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "Permutation":
        return Transposition(i, j).as_permutation(n)

    @classmethod
    def from_one_line(cls, points: Sequence[int]) -> "Permutation":
        return cls(tuple(p - 1 for p in points))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def one_line(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.images)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * self.n
        result = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x + 1)
                x = self.images[x]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def support(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self.images) if i != x]

    def is_transposition(self) -> bool:
        return len(self.support()) == 2

    def __str__(self) -> str:
        return format_cycles(self)


@dataclass(frozen=True, slots=True, order=True)
class Transposition:
    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if a == b:
            raise RangeError(f"transposition needs two distinct points, got ({a},{b})")
        if min(a, b) < 1:
            raise RangeError(f"points are 1-based, got ({a},{b})")
        if a > b:
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    def as_permutation(self, n: int) -> Permutation:
        if self.b > n:
            raise RangeError(f"transposition ({self.a},{self.b}) exceeds degree {n}")
        images = list(range(n))
        images[self.a - 1], images[self.b - 1] = self.b - 1, self.a - 1
        return Permutation._trusted(tuple(images))

    def as_pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"({self.a} {self.b})"


def _check_degree(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise DegreeMismatchError(
            f"incompatible operands: degree {p.n} and degree {q.n}"
        )


def compose_images(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(map(p.__getitem__, q))


def inverse_images(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """x -> p(q(x))."""
    _check_degree(p, q)
    return Permutation._trusted(compose_images(p.images, q.images))


def inverse(p: Permutation) -> Permutation:
    return Permutation._trusted(inverse_images(p.images))


def conjugate(g: Permutation, x: Permutation) -> Permutation:
    """g x g^-1; sends the transposition (i j) to (g(i) g(j))."""
    _check_degree(g, x)
    # (g x g^-1)(g(i)) = g(x(i))
    images = [0] * g.n
    for i, xi in enumerate(x.images):
        images[g.images[i]] = g.images[xi]
    return Permutation._trusted(tuple(images))


def conjugate_transposition(g: Permutation, t: Transposition) -> Transposition:
    return Transposition(g(t.a), g(t.b))


def rank_images(images: Sequence[int]) -> int:
    """Lexicographic rank via the Lehmer code."""
    n = len(images)
    rank = 0
    for i in range(n):
        smaller = 0
        x = images[i]
        for j in range(i + 1, n):
            if images[j] < x:
                smaller += 1
        rank += smaller * factorial(n - 1 - i)
    return rank


def unrank_images(r: int, n: int) -> tuple[int, ...]:
    if n < 1:
        raise RangeError("permutation degree must be at least 1")
    total = factorial(n)
    if not 0 <= r < total:
        raise RangeError(f"rank {r} outside 0..{total - 1} for degree {n}")
    available = list(range(n))
    images = []
    for i in range(n):
        f = factorial(n - 1 - i)
        digit, r = divmod(r, f)
        images.append(available.pop(digit))
    return tuple(images)


def rank(p: Permutation) -> int:
    return rank_images(p.images)


def unrank(r: int, n: int) -> Permutation:
    return Permutation._trusted(unrank_images(r, n))


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in rank order."""
    for r in range(factorial(n)):
        yield unrank(r, n)


def parity(p: Permutation) -> Parity:
    cycles = 0
    seen = [False] * p.n
    for start in range(p.n):
        if seen[start]:
            continue
        cycles += 1
        x = start
        while not seen[x]:
            seen[x] = True
            x = p.images[x]
    return Parity.odd if (p.n - cycles) % 2 else Parity.even


def right_multiplication(g: Permutation) -> tuple[int, ...]:
    """The map x -> x g on S_n, as a table on ranks."""
    table = []
    for r in range(factorial(g.n)):
        x = unrank_images(r, g.n)
        table.append(rank_images(compose_images(x, g.images)))
    return tuple(table)


def format_one_line(p: Permutation) -> str:
    return " ".join(str(i) for i in p.one_line())


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)


def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> Permutation:
    images = list(range(n))
    touched: set[int] = set()
    for cycle in cycles:
        for point in cycle:
            if not 1 <= point <= n:
                raise RangeError(f"point {point} outside 1..{n}")
            if point in touched:
                raise RangeError(f"point {point} appears in two cycles")
            touched.add(point)
        for k, point in enumerate(cycle):
            images[point - 1] = cycle[(k + 1) % len(cycle)] - 1
    return Permutation(tuple(images))


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Accepts one-line "3 1 2" or cycle notation "(1 3 2)"."""
    text = text.strip()
    try:
        if text.startswith("("):
            cycles = []
            rest = _CYCLE_RE.sub("", text).strip()
            if rest:
                raise InputParseError(f"unexpected text {rest!r} in cycle notation")
            for body in _CYCLE_RE.findall(text):
                points = [int(tok) for tok in body.replace(",", " ").split()]
                if points:
                    cycles.append(points)
            if n is None:
                n = max((max(c) for c in cycles), default=1)
            return from_cycles(cycles, n)
        points = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as e:
        if isinstance(e, RangeError):
            raise InputParseError(e.detail) from e
        raise InputParseError(f"cannot read permutation {text!r}") from e
    if n is not None and len(points) != n:
        raise InputParseError(f"expected {n} images, got {len(points)}")
    try:
        return Permutation.from_one_line(points)
    except RangeError as e:
        raise InputParseError(e.detail) from e
