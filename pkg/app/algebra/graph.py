"""Simple undirected graphs and the symmetry toolkit built on them."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx
from networkx.algorithms.flow import edmonds_karp
from networkx.utils import UnionFind

from app.algebra import search
from app.algebra.perm import compose_images, inverse_images
from app.core.config import settings
from app.core.errors import (
    DegreeMismatchError,
    InconsistencyError,
    PreconditionError,
    RangeError,
    get_capacity_error,
)

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    num_vertices: int
    edges: frozenset[Edge]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _neighbor_sets: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.num_vertices < 0:
            raise RangeError("vertex count must be non-negative")
        edges = set()
        neighbors: list[set[int]] = [set() for _ in range(self.num_vertices)]
        for u, v in self.edges:
            if u == v:
                raise RangeError(f"self-loop at vertex {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise RangeError(f"edge ({u},{v}) outside 0..{self.num_vertices - 1}")
            edges.add(normalize_edge(u, v))
            neighbors[u].add(v)
            neighbors[v].add(u)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(s)) for s in neighbors))
        object.__setattr__(self, "_neighbor_sets", tuple(frozenset(s) for s in neighbors))

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        return cls(num_vertices, frozenset(normalize_edge(u, v) for u, v in edges))

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def path(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def star(cls, leaves: int) -> "SimpleGraph":
        return cls.from_edges(leaves + 1, ((0, j) for j in range(1, leaves + 1)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._neighbor_sets[v]

    def relabel(self, mapping: "VertexMapping") -> "SimpleGraph":
        return SimpleGraph.from_edges(
            self.num_vertices, ((mapping(u), mapping(v)) for u, v in self.edges)
        )

    def to_networkx(self) -> nx.Graph:
        x = nx.Graph()
        x.add_nodes_from(range(self.num_vertices))
        x.add_edges_from(self.edges)
        return x

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return True
        return nx.is_connected(self.to_networkx())


@dataclass(frozen=True, slots=True)
class VertexMapping:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise RangeError(f"vertex mapping is not a bijection: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "VertexMapping":
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, n: int) -> "VertexMapping":
        return cls._trusted(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __mul__(self, other: "VertexMapping") -> "VertexMapping":
        return self.compose(other)

    def compose(self, other: "VertexMapping") -> "VertexMapping":
        """self after other."""
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"incompatible operands: degree {self.degree} and degree {other.degree}"
            )
        return VertexMapping._trusted(compose_images(self.images, other.images))

    def inverse(self) -> "VertexMapping":
        return VertexMapping._trusted(inverse_images(self.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def is_isomorphism(self, source: SimpleGraph, target: SimpleGraph) -> bool:
        if self.degree != source.num_vertices or source.num_vertices != target.num_vertices:
            return False
        if source.num_edges != target.num_edges:
            return False
        return all(target.has_edge(self.images[u], self.images[v]) for u, v in source.edges)

    def is_automorphism(self, g: SimpleGraph) -> bool:
        return self.is_isomorphism(g, g)


class PermutationGroup:
    """A permutation group given by generators, with lazy element enumeration."""

    def __init__(
        self,
        degree: int,
        generators: Iterable[VertexMapping],
        order: Optional[int] = None,
    ):
        self.degree = degree
        self.generators = tuple(g for g in generators if not g.is_identity())
        for g in self.generators:
            if g.degree != degree:
                raise DegreeMismatchError(f"generator of degree {g.degree} in a group of degree {degree}")
        self._order = order
        self._elements: Optional[tuple[VertexMapping, ...]] = None
        self._members: Optional[frozenset[VertexMapping]] = None

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[VertexMapping]) -> "PermutationGroup":
        """Group given by a complete element list; a small generating set is picked greedily."""
        elements = sorted(set(elements), key=lambda m: m.images)
        closure = {tuple(range(degree))}
        generators: list[VertexMapping] = []
        for m in elements:
            if m.images in closure:
                continue
            generators.append(m)
            closure = _closure(degree, [g.images for g in generators])
        group = cls(degree, generators, order=len(closure))
        if len(closure) != len(elements):
            raise InconsistencyError(
                f"element list of size {len(elements)} is not closed (generates {len(closure)})"
            )
        group._elements = tuple(elements)
        return group

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = len(self.elements)
        return self._order

    @property
    def elements(self) -> tuple[VertexMapping, ...]:
        if self._elements is None:
            if self._order is not None and self._order > settings.MAX_GROUP_ORDER:
                raise get_capacity_error("group", self._order, settings.MAX_GROUP_ORDER)
            closure = _closure(self.degree, [g.images for g in self.generators])
            if self._order is not None and len(closure) != self._order:
                raise InconsistencyError(
                    f"closure has {len(closure)} elements, expected order {self._order}"
                )
            self._elements = tuple(VertexMapping._trusted(e) for e in sorted(closure))
        return self._elements

    def identity(self) -> VertexMapping:
        return VertexMapping.identity(self.degree)

    def contains(self, m: VertexMapping) -> bool:
        return m in self._element_set()

    def _element_set(self) -> frozenset[VertexMapping]:
        if self._members is None:
            self._members = frozenset(self.elements)
        return self._members

    def stabilizer(self, v: int) -> "PermutationGroup":
        return PermutationGroup.from_elements(self.degree, (g for g in self.elements if g(v) == v))

    def pointwise_stabilizer(self, points: Iterable[int]) -> "PermutationGroup":
        points = list(points)
        return PermutationGroup.from_elements(
            self.degree, (g for g in self.elements if all(g(p) == p for p in points))
        )

    def is_closed(self) -> bool:
        """All pairwise products land in the element set; quadratic, meant for small groups."""
        members = {e.images for e in self.elements}
        return all(compose_images(a.images, b.images) in members for a in self.elements for b in self.elements)

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"<PermutationGroup(degree={self.degree}, order={self.order}, generators={len(self.generators)})>"


def _closure(degree: int, generators: Sequence[tuple[int, ...]]) -> set[tuple[int, ...]]:
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        if len(elements) > settings.MAX_GROUP_ORDER:
            raise get_capacity_error("group", len(elements), settings.MAX_GROUP_ORDER)
        nxt = []
        for e in frontier:
            for g in generators:
                h = compose_images(g, e)
                if h not in elements:
                    elements.add(h)
                    nxt.append(h)
        frontier = nxt
    return elements


def _check_capacity(g: SimpleGraph) -> None:
    if g.num_vertices > settings.MAX_SEARCH_VERTICES:
        raise get_capacity_error("graph", g.num_vertices, settings.MAX_SEARCH_VERTICES)


def line_graph(g: SimpleGraph) -> tuple[SimpleGraph, dict[Edge, int]]:
    edge_index = {e: i for i, e in enumerate(g.edge_list())}
    line_edges = []
    for v in range(g.num_vertices):
        incident = [edge_index[normalize_edge(v, u)] for u in g.adjacency[v]]
        for a in range(len(incident)):
            for b in range(a + 1, len(incident)):
                line_edges.append((incident[a], incident[b]))
    return SimpleGraph.from_edges(len(edge_index), line_edges), edge_index


def automorphism_group(g: SimpleGraph) -> PermutationGroup:
    _check_capacity(g)
    generators, order, base = search.automorphism_chain(g.adjacency)
    mappings = [VertexMapping._trusted(m) for m in generators]
    for m in mappings:
        if not m.is_automorphism(g):
            raise InconsistencyError(f"search produced a non-automorphism {m.images}")
    logger.debug("Aut of %d-vertex graph: order %d, base %s", g.num_vertices, order, base)
    return PermutationGroup(g.num_vertices, mappings, order=order)


def _orbits_on(items: Sequence, act, grp: PermutationGroup) -> list[list]:
    uf = UnionFind(items)
    for gen in grp.generators:
        for item in items:
            uf.union(item, act(gen, item))
    return sorted(sorted(orbit) for orbit in uf.to_sets())


def vertex_orbits(g: SimpleGraph, grp: Optional[PermutationGroup] = None) -> list[list[int]]:
    grp = grp or automorphism_group(g)
    return _orbits_on(range(g.num_vertices), lambda m, v: m(v), grp)


def edge_orbits(g: SimpleGraph, grp: Optional[PermutationGroup] = None) -> list[list[Edge]]:
    grp = grp or automorphism_group(g)
    return _orbits_on(g.edge_list(), lambda m, e: normalize_edge(m(e[0]), m(e[1])), grp)


def arc_orbits(g: SimpleGraph, grp: Optional[PermutationGroup] = None) -> list[list[Edge]]:
    grp = grp or automorphism_group(g)
    arcs = [(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges]
    return _orbits_on(arcs, lambda m, a: (m(a[0]), m(a[1])), grp)


def is_edge_transitive(g: SimpleGraph, grp: Optional[PermutationGroup] = None) -> bool:
    if g.num_edges == 0:
        return True
    return len(edge_orbits(g, grp)) == 1


def is_vertex_transitive(g: SimpleGraph, grp: Optional[PermutationGroup] = None) -> bool:
    if g.num_vertices <= 1:
        return True
    return len(vertex_orbits(g, grp)) == 1


def is_arc_transitive(g: SimpleGraph, grp: Optional[PermutationGroup] = None) -> bool:
    if g.num_edges == 0:
        return True
    return len(arc_orbits(g, grp)) == 1


def find_isomorphism(g: SimpleGraph, h: SimpleGraph) -> Optional[VertexMapping]:
    _check_capacity(g)
    _check_capacity(h)
    if g.num_vertices != h.num_vertices or g.num_edges != h.num_edges:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    if g.num_vertices == 0:
        return VertexMapping(())
    left = search.refine(g.adjacency, [list(range(g.num_vertices))])
    right = search.refine(h.adjacency, [list(range(h.num_vertices))])
    mapping = search.find_mapping(g.adjacency, h.adjacency, left, right)
    if mapping is None:
        return None
    result = VertexMapping._trusted(mapping)
    if not result.is_isomorphism(g, h):
        raise InconsistencyError("search produced a mapping that does not preserve edges")
    return result


def induced_edge_mapping(
    source: SimpleGraph,
    h: VertexMapping,
    target: Optional[SimpleGraph] = None,
) -> VertexMapping:
    """The map on line-graph vertices induced by a vertex map source -> target."""
    target = target or source
    _, src_index = line_graph(source)
    _, dst_index = line_graph(target)
    images = [0] * len(src_index)
    for (u, v), i in src_index.items():
        image = normalize_edge(h(u), h(v))
        if image not in dst_index:
            raise PreconditionError(f"vertex map does not carry edge {(u, v)} onto an edge")
        images[i] = dst_index[image]
    return VertexMapping(tuple(images))


def lift_line_isomorphism(
    source: SimpleGraph,
    target: SimpleGraph,
    a: VertexMapping,
) -> VertexMapping:
    """The unique isomorphism source -> target inducing the line-graph isomorphism `a`.

    Each vertex of degree >= 2 goes to the common endpoint of the images of
    its incident edges; a degree-1 vertex goes to the far endpoint of its
    edge's image.
    """
    for t in (source, target):
        if not t.is_connected() or t.num_vertices < 5:
            raise PreconditionError(
                "line-graph lifting needs connected graphs on 5 or more vertices"
            )
    if source.num_vertices != target.num_vertices:
        raise PreconditionError("graphs have different vertex counts")
    src_edges = source.edge_list()
    dst_edges = target.edge_list()
    if a.degree != len(src_edges) or len(src_edges) != len(dst_edges):
        raise PreconditionError("mapping does not act on the line-graph vertices")
    src_index = {e: i for i, e in enumerate(src_edges)}

    def image_edge(u: int, v: int) -> Edge:
        return dst_edges[a(src_index[normalize_edge(u, v)])]

    images: list[Optional[int]] = [None] * source.num_vertices
    for v in range(source.num_vertices):
        if source.degree(v) < 2:
            continue
        common = None
        for u in source.adjacency[v]:
            ends = set(image_edge(v, u))
            common = ends if common is None else common & ends
        if not common or len(common) != 1:
            raise InconsistencyError(
                f"edges at vertex {v} do not map onto a star; not a line-graph isomorphism"
            )
        images[v] = common.pop()
    for v in range(source.num_vertices):
        if images[v] is not None:
            continue
        (u,) = source.adjacency[v]
        x, y = image_edge(v, u)
        if images[u] == x:
            images[v] = y
        elif images[u] == y:
            images[v] = x
        else:
            raise InconsistencyError(f"pendant vertex {v} has no consistent image")
    if sorted(images) != list(range(source.num_vertices)):
        raise InconsistencyError("lifted vertex map is not a bijection")
    lifted = VertexMapping(tuple(images))
    if induced_edge_mapping(source, lifted, target) != a:
        raise InconsistencyError("lifted map does not induce the given line-graph map")
    return lifted


def whitney_lift(t: SimpleGraph, a: VertexMapping) -> VertexMapping:
    """The unique automorphism of `t` whose action on edges is `a`."""
    return lift_line_isomorphism(t, t, a)


def component_labels(g: SimpleGraph) -> list[int]:
    """Each vertex labelled by the smallest vertex of its component."""
    label = [0] * g.num_vertices
    for component in nx.connected_components(g.to_networkx()):
        root = min(component)
        for v in component:
            label[v] = root
    return label


def is_bipartite(g: SimpleGraph) -> Optional[tuple[int, ...]]:
    """A 0/1 coloring with the smallest vertex of each component on side 0, or None on an odd cycle."""
    try:
        color = nx.bipartite.color(g.to_networkx())
    except nx.NetworkXError:
        return None
    label = component_labels(g)
    return tuple(color[v] ^ color[label[v]] for v in range(g.num_vertices))


def contains_k4(g: SimpleGraph) -> bool:
    for u, v in g.edges:
        common = sorted(g.neighbor_set(u) & g.neighbor_set(v))
        for i, x in enumerate(common):
            for y in common[i + 1:]:
                if g.has_edge(x, y):
                    return True
    return False


def _split_digraph(g: SimpleGraph) -> nx.DiGraph:
    d = nx.DiGraph()
    for v in range(g.num_vertices):
        d.add_edge((v, "in"), (v, "out"), capacity=1)
    for u, v in g.edges:
        d.add_edge((u, "out"), (v, "in"))
        d.add_edge((v, "out"), (u, "in"))
    return d


def local_vertex_connectivity(g: SimpleGraph, s: int, t: int, cutoff: Optional[int] = None) -> int:
    """Maximum number of internally disjoint s-t paths for non-adjacent s, t."""
    if s == t or g.has_edge(s, t):
        raise PreconditionError("local connectivity needs distinct non-adjacent vertices")
    return _local_flow(_split_digraph(g), s, t, cutoff)


def _local_flow(d: nx.DiGraph, s: int, t: int, cutoff: Optional[int]) -> int:
    kwargs = {"cutoff": cutoff} if cutoff is not None else {}
    return int(nx.maximum_flow_value(d, (s, "out"), (t, "in"), flow_func=edmonds_karp, **kwargs))


def vertex_connectivity(g: SimpleGraph) -> int:
    """Vertex connectivity via unit vertex capacities on the split digraph.

    Only sources among the first best+1 vertices are needed: some vertex
    among any k+1 lies outside a minimum cut of size k.
    """
    n = g.num_vertices
    if n <= 1 or not g.is_connected():
        return 0
    if g.num_edges == n * (n - 1) // 2:
        return n - 1
    d = _split_digraph(g)
    best = g.min_degree()
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if g.has_edge(i, j):
                continue
            best = min(best, _local_flow(d, i, j, cutoff=best))
        i += 1
    return best
