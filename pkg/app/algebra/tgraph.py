"""Transposition sets, their transposition graphs, named families and small-n enumeration."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from math import factorial
from typing import Iterable, Iterator, NamedTuple

from app.algebra.graph import SimpleGraph, find_isomorphism
from app.algebra.perm import Permutation, Transposition, compose_images
from app.core.config import settings
from app.core.errors import RangeError, get_capacity_error

logger = logging.getLogger(__name__)

Pair = tuple[int, int]


@dataclass(frozen=True)
class TranspositionSet:
    """A set of transpositions of {1..n}; also the edge set of T(S)."""

    n: int
    pairs: frozenset[Pair]

    def __post_init__(self):
        if self.n < 1:
            raise RangeError("degree must be at least 1")
        normalized = set()
        for pair in self.pairs:
            t = Transposition(*pair)
            if t.b > self.n:
                raise RangeError(f"transposition {t} exceeds degree {self.n}")
            normalized.add(t.as_pair())
        object.__setattr__(self, "pairs", frozenset(normalized))

    @classmethod
    def of(cls, n: int, pairs: Iterable[Pair]) -> "TranspositionSet":
        return cls(n, frozenset(tuple(p) for p in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.sorted_pairs())

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    def transpositions(self) -> list[Transposition]:
        return [Transposition(a, b) for a, b in self.sorted_pairs()]

    def permutations(self) -> list[Permutation]:
        return [t.as_permutation(self.n) for t in self.transpositions()]

    def key(self) -> tuple:
        return (self.n, len(self.pairs), tuple(self.sorted_pairs()))

    def relabel(self, f: Permutation) -> "TranspositionSet":
        """Image of the set under the point map f."""
        return TranspositionSet.of(self.n, ((f(a), f(b)) for a, b in self.pairs))

    def __str__(self) -> str:
        return "{" + ",".join(f"({a},{b})" for a, b in self.sorted_pairs()) + f"}} on n={self.n}"


class FamilyInfo(NamedTuple):
    name: str
    cayley_name: str
    aliases: tuple[str, ...]
    min_degree: int


FAMILIES: dict[str, FamilyInfo] = {
    "path": FamilyInfo("path", "bubble-sort graph", ("bubble-sort",), 2),
    "cycle": FamilyInfo("cycle", "modified bubble-sort graph", ("modified-bubble-sort",), 3),
    "star": FamilyInfo("star", "star graph", ("star-graph",), 2),
    "complete": FamilyInfo("complete", "complete transposition graph", ("complete-transposition",), 2),
}

_ALIASES = {alias: info.name for info in FAMILIES.values() for alias in (info.name, *info.aliases)}


def family_info(name: str) -> FamilyInfo:
    try:
        return FAMILIES[_ALIASES[name]]
    except KeyError:
        raise RangeError(
            f"unknown family {name!r}; expected one of {', '.join(sorted(_ALIASES))}"
        ) from None


def family(name: str, n: int) -> TranspositionSet:
    info = family_info(name)
    if n < info.min_degree:
        raise RangeError(f"family {info.name} needs n >= {info.min_degree}, got {n}")
    if info.name == "path":
        pairs = [(i, i + 1) for i in range(1, n)]
    elif info.name == "cycle":
        pairs = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    elif info.name == "star":
        pairs = [(1, j) for j in range(2, n + 1)]
    else:
        pairs = list(combinations(range(1, n + 1), 2))
    return TranspositionSet.of(n, pairs)


def to_graph(s: TranspositionSet) -> SimpleGraph:
    return SimpleGraph.from_edges(s.n, ((a - 1, b - 1) for a, b in s.pairs))


def to_set(g: SimpleGraph) -> TranspositionSet:
    return TranspositionSet.of(g.num_vertices, ((u + 1, v + 1) for u, v in g.edges))


def is_generating(s: TranspositionSet) -> bool:
    """S generates S_n iff T(S) is connected."""
    return to_graph(s).is_connected()


def closure_order(s: TranspositionSet) -> int:
    """Order of the group generated by S, by brute-force closure."""
    if factorial(s.n) > settings.MAX_VERTICES:
        raise get_capacity_error("symmetric group", factorial(s.n), settings.MAX_VERTICES)
    gens = [p.images for p in s.permutations()]
    identity = tuple(range(s.n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose_images(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def _invariant(g: SimpleGraph) -> tuple:
    degrees = g.degrees()
    profile = sorted(
        (degrees[v], tuple(sorted(degrees[u] for u in g.adjacency[v])))
        for v in range(g.num_vertices)
    )
    return (g.num_edges, tuple(profile))


def enumerate_connected(n: int, extended: bool = False) -> list[TranspositionSet]:
    """One transposition set per isomorphism class of connected graphs on n points.

    Each class is represented by its lexicographically smallest labeled
    edge set; the result is sorted by edge count, then edge set.
    """
    if not 2 <= n <= settings.MAX_ENUMERATION_DEGREE:
        raise RangeError(f"enumeration supports 2 <= n <= {settings.MAX_ENUMERATION_DEGREE}, got {n}")
    if n > settings.FAST_ENUMERATION_DEGREE and not extended:
        raise get_capacity_error(
            "enumeration degree", n, settings.FAST_ENUMERATION_DEGREE,
            hint="pass extended=True (CLI: --extended) for longer runs",
        )
    pairs = list(combinations(range(n), 2))
    buckets: dict[tuple, list[list]] = {}
    for mask in range(1 << len(pairs)):
        if mask.bit_count() < n - 1:
            continue
        edges = tuple(p for bit, p in enumerate(pairs) if mask >> bit & 1)
        g = SimpleGraph.from_edges(n, edges)
        if not g.is_connected():
            continue
        bucket = buckets.setdefault(_invariant(g), [])
        for entry in bucket:
            if find_isomorphism(entry[0], g) is not None:
                if edges < entry[1]:
                    entry[1] = edges
                break
        else:
            bucket.append([g, edges])
    classes = [entry[1] for bucket in buckets.values() for entry in bucket]
    classes.sort(key=lambda edges: (len(edges), edges))
    logger.debug("n=%d: %d connected classes", n, len(classes))
    return [TranspositionSet.of(n, ((a + 1, b + 1) for a, b in edges)) for edges in classes]
