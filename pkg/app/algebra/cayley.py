"""Cayley graphs Cay(S_n, S) of the symmetric group generated by transpositions.

Vertex ids are Lehmer ranks, so the identity permutation is vertex 0.
Adjacency is left multiplication: h ~ s h for s in S.  Right
multiplications x -> x g are then automorphisms.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial
from typing import Optional

from app.algebra.graph import (
    PermutationGroup,
    SimpleGraph,
    VertexMapping,
    automorphism_group,
    lift_line_isomorphism,
    line_graph,
    is_edge_transitive,
)
from app.algebra.perm import (
    Parity,
    Permutation,
    conjugate,
    conjugate_transposition,
    inverse,
    parity,
    rank,
    rank_images,
    right_multiplication,
    unrank,
    unrank_images,
)
from app.algebra.tgraph import TranspositionSet, is_generating, to_graph
from app.core.config import settings
from app.core.errors import (
    InconsistencyError,
    PreconditionError,
    RangeError,
    get_capacity_error,
)

logger = logging.getLogger(__name__)

THEOREM_MIN_DEGREE = 5


def within_theorem_range(n: int) -> bool:
    return n >= THEOREM_MIN_DEGREE


def _swap_values(x: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    # left multiplication by the transposition (a b), 0-based values
    return tuple(b if v == a else a if v == b else v for v in x)


class CayleyGraph:
    """Cay(S_n, S).  The graph is materialized on first access to `graph`."""

    identity_vertex = 0

    def __init__(self, gens: TranspositionSet):
        if len(gens) == 0:
            raise PreconditionError("generating set must be nonempty")
        self.n = gens.n
        self.gens = gens
        self._pairs = [(a - 1, b - 1) for a, b in gens.sorted_pairs()]
        self._graph: Optional[SimpleGraph] = None

    @property
    def num_vertices(self) -> int:
        return factorial(self.n)

    @property
    def num_edges(self) -> int:
        return self.num_vertices * len(self.gens) // 2

    @property
    def is_materialized(self) -> bool:
        return self._graph is not None

    @property
    def graph(self) -> SimpleGraph:
        if self._graph is None:
            self._graph = self._materialize()
        return self._graph

    def _materialize(self) -> SimpleGraph:
        if self.num_vertices > settings.MAX_VERTICES:
            raise get_capacity_error(
                "Cayley graph", self.num_vertices, settings.MAX_VERTICES,
                hint="use neighbors() for on-demand adjacency",
            )
        elements = [unrank_images(r, self.n) for r in range(self.num_vertices)]
        index = {x: r for r, x in enumerate(elements)}
        edges = []
        for v, x in enumerate(elements):
            for a, b in self._pairs:
                w = index[_swap_values(x, a, b)]
                if v < w:
                    edges.append((v, w))
        logger.debug("materialized Cay(S_%d, S) with |S|=%d: %d edges", self.n, len(self.gens), len(edges))
        return SimpleGraph.from_edges(self.num_vertices, edges)

    def element(self, v: int) -> Permutation:
        self._check_vertex(v)
        return unrank(v, self.n)

    def vertex(self, p: Permutation) -> int:
        if p.n != self.n:
            raise RangeError(f"permutation of degree {p.n} is not a vertex of Cay(S_{self.n}, S)")
        return rank(p)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.num_vertices:
            raise RangeError(f"vertex id {v} outside 0..{self.num_vertices - 1}")

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        if self._graph is not None:
            return list(self._graph.adjacency[v])
        x = unrank_images(v, self.n)
        return sorted(rank_images(_swap_values(x, a, b)) for a, b in self._pairs)

    def generator_vertices(self) -> dict[int, tuple[int, int]]:
        """Vertex id of each generator (the neighbors of the identity), keyed to its 1-based pair."""
        return {
            rank_images(_swap_values(tuple(range(self.n)), a, b)): (a + 1, b + 1)
            for a, b in self._pairs
        }

    def parity_classes(self) -> tuple[int, ...]:
        return tuple(
            0 if parity(unrank(v, self.n)) is Parity.even else 1
            for v in range(self.num_vertices)
        )

    def __repr__(self) -> str:
        return f"<CayleyGraph(n={self.n}, S={self.gens.sorted_pairs()})>"


def build(s: TranspositionSet) -> CayleyGraph:
    cg = CayleyGraph(s)
    cg.graph
    return cg


def neighbors(cg: CayleyGraph, v: int) -> list[int]:
    return cg.neighbors(v)


def right_regular_automorphism(cg: CayleyGraph, g: Permutation) -> VertexMapping:
    """r_g: x -> x g."""
    if g.n != cg.n:
        raise RangeError(f"permutation of degree {g.n} does not act on Cay(S_{cg.n}, S)")
    return VertexMapping(right_multiplication(g))


def is_right_regular_automorphism(cg: CayleyGraph, g: Permutation) -> bool:
    return right_regular_automorphism(cg, g).is_automorphism(cg.graph)


def conjugation_map(g: Permutation) -> VertexMapping:
    """x -> g x g^-1 on the ranks of S_n."""
    return VertexMapping(tuple(rank(conjugate(g, unrank(r, g.n))) for r in range(factorial(g.n))))


def conjugation_isomorphism(
    source: CayleyGraph,
    target: CayleyGraph,
    f: VertexMapping,
) -> VertexMapping:
    """sigma: x -> f x f^-1, an isomorphism Cay(S_n,S) -> Cay(S_n,S') built from T(S) -> T(S')."""
    if source.n != target.n:
        raise PreconditionError("Cayley graphs of different degrees")
    if not f.is_isomorphism(to_graph(source.gens), to_graph(target.gens)):
        raise PreconditionError("f is not an isomorphism of the transposition graphs")
    sigma = conjugation_map(Permutation(f.images))
    if sigma(source.identity_vertex) != target.identity_vertex:
        raise InconsistencyError("conjugation does not fix the identity vertex")
    if source.n <= settings.MAX_ORACLE_DEGREE:
        if not sigma.is_isomorphism(source.graph, target.graph):
            raise InconsistencyError("conjugation map failed the edge-preservation scan")
    return sigma


@dataclass(frozen=True)
class GroupAutomorphismOnS:
    """Conjugation c_g by an automorphism g of T(S); an element of Aut(S_n, S)."""

    conjugator: Permutation
    gens: TranspositionSet = field(repr=False)

    def apply(self, x: Permutation) -> Permutation:
        return conjugate(self.conjugator, x)

    def on_generators(self) -> dict[tuple[int, int], tuple[int, int]]:
        return {
            t.as_pair(): conjugate_transposition(self.conjugator, t).as_pair()
            for t in self.gens.transpositions()
        }

    def fixes_generators(self) -> bool:
        return set(self.on_generators().values()) == set(self.gens.pairs)

    @cached_property
    def action(self) -> VertexMapping:
        return conjugation_map(self.conjugator)


def aut_sns(s: TranspositionSet) -> list[GroupAutomorphismOnS]:
    """Aut(S_n, S) as conjugations by the automorphisms of T(S)."""
    if not is_generating(s):
        raise PreconditionError(f"{s} does not generate S_{s.n}")
    grp = automorphism_group(to_graph(s))
    result = []
    actions = set()
    for h in grp.elements:
        a = GroupAutomorphismOnS(Permutation(h.images), s)
        if not a.fixes_generators():
            raise InconsistencyError(f"conjugation by {a.conjugator} moves S")
        actions.add(tuple(sorted(a.on_generators().items())))
        result.append(a)
    if s.n >= 3 and len(actions) != len(result):
        raise InconsistencyError("two automorphisms of T(S) act identically on S")
    result.sort(key=lambda a: rank(a.conjugator))
    return result


def restrict_to_generators(cg: CayleyGraph, g: VertexMapping) -> Optional[VertexMapping]:
    """g|_S as a map on the vertices of L(T(S)), or None when g does not fix S setwise."""
    gen_vertices = cg.generator_vertices()
    _, edge_index = line_graph(to_graph(cg.gens))
    images = [0] * len(edge_index)
    for v, (a, b) in gen_vertices.items():
        w = g(v)
        if w not in gen_vertices:
            return None
        c, d = gen_vertices[w]
        images[edge_index[(a - 1, b - 1)]] = edge_index[(c - 1, d - 1)]
    return VertexMapping(tuple(images))


@dataclass
class StabilizerDecomposition:
    g_e: PermutationGroup
    l_e: PermutationGroup
    conjugations: list[GroupAutomorphismOnS]
    certified: bool
    checks: dict[str, bool] = field(default_factory=dict)


def stabilizer_decomposition(cg: CayleyGraph) -> StabilizerDecomposition:
    """G_e = L_e x| Aut(S_n, S), certified by exact group computations."""
    if cg.n > settings.MAX_STABILIZER_DEGREE:
        raise get_capacity_error("degree", cg.n, settings.MAX_STABILIZER_DEGREE)
    e = cg.identity_vertex
    aut = automorphism_group(cg.graph)
    g_e = aut.stabilizer(e)
    ball = [e, *cg.neighbors(e)]
    l_e = g_e.pointwise_stabilizer(ball)
    conjugations = aut_sns(cg.gens)
    actions = [a.action for a in conjugations]
    identity = VertexMapping.identity(cg.num_vertices)
    action_set = set(actions)

    restriction_of = {}
    for a in actions:
        restriction_of[tuple(a(v) for v in ball)] = a

    def factors(g: VertexMapping) -> bool:
        a = restriction_of.get(tuple(g(v) for v in ball))
        return a is not None and l_e.contains(g * a.inverse())

    checks = {
        "order": g_e.order == l_e.order * len(conjugations),
        "contained": all(g_e.contains(a) for a in actions),
        "trivial_intersection": {m for m in l_e.elements if m in action_set} == {identity},
        "normal": all(
            l_e.contains(g * m * g.inverse()) for g in g_e.generators for m in l_e.generators
        ),
        "factors": all(factors(g) for g in g_e.elements),
    }
    certified = all(checks.values())
    logger.debug(
        "n=%d |G_e|=%d |L_e|=%d |Aut(S_n,S)|=%d certified=%s",
        cg.n, g_e.order, l_e.order, len(conjugations), certified,
    )
    return StabilizerDecomposition(g_e, l_e, conjugations, certified, checks)


@dataclass(frozen=True)
class TheoremVerdict:
    value: bool
    in_theorem_range: bool

    def __bool__(self) -> bool:
        return self.value


def fast_is_edge_transitive(s: TranspositionSet) -> TheoremVerdict:
    """Edge-transitivity of Cay(S_n, S) read off T(S)."""
    if not is_generating(s):
        raise PreconditionError(f"{s} does not generate S_{s.n}")
    in_range = within_theorem_range(s.n)
    if not in_range:
        logger.info("n=%d is below the theorem's range n >= %d", s.n, THEOREM_MIN_DEGREE)
    return TheoremVerdict(is_edge_transitive(to_graph(s)), in_range)


def normalize_isomorphism(source: CayleyGraph, target: CayleyGraph, phi: VertexMapping) -> VertexMapping:
    """Compose phi with a right multiplication of the target so the identity is fixed."""
    h = unrank(phi(source.identity_vertex), target.n)
    return right_regular_automorphism(target, inverse(h)) * phi


def transposition_isomorphism(
    source: CayleyGraph,
    target: CayleyGraph,
    phi: VertexMapping,
) -> VertexMapping:
    """An isomorphism T(S) -> T(S') recovered from a Cayley-graph isomorphism.

    The normalized isomorphism carries S onto S' and restricts to an
    isomorphism of line graphs, which lifts uniquely once n >= 5.
    """
    if not within_theorem_range(source.n):
        raise PreconditionError(f"recovery needs n >= {THEOREM_MIN_DEGREE}, got {source.n}")
    psi = normalize_isomorphism(source, target, phi)
    src_vertices = source.generator_vertices()
    dst_vertices = target.generator_vertices()
    t_source, t_target = to_graph(source.gens), to_graph(target.gens)
    _, src_index = line_graph(t_source)
    _, dst_index = line_graph(t_target)
    images = [0] * len(src_index)
    for v, (a, b) in src_vertices.items():
        w = psi(v)
        if w not in dst_vertices:
            raise InconsistencyError("normalized isomorphism does not carry S onto S'")
        c, d = dst_vertices[w]
        images[src_index[(a - 1, b - 1)]] = dst_index[(c - 1, d - 1)]
    f = lift_line_isomorphism(t_source, t_target, VertexMapping(tuple(images)))
    if not f.is_isomorphism(t_source, t_target):
        raise InconsistencyError("recovered map is not an isomorphism of transposition graphs")
    return f
