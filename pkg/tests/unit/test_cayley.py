import random
from math import factorial

import pytest

from app.algebra import cayley
from app.algebra.cayley import CayleyGraph
from app.algebra.graph import (
    VertexMapping,
    automorphism_group,
    find_isomorphism,
    is_arc_transitive,
    is_bipartite,
    is_edge_transitive,
    line_graph,
)
from app.algebra.perm import (
    Parity,
    Permutation,
    all_permutations,
    compose,
    parity,
    rank,
    unrank,
)
from app.algebra.tgraph import TranspositionSet, family, to_graph
from app.core.config import settings
from app.core.errors import CapacityError, PreconditionError, RangeError


class TestCayleyGraph:
    def test_counts(self):
        x = cayley.build(family("star", 5))
        assert x.num_vertices == 120
        assert x.num_edges == 240
        assert x.graph.num_edges == 240
        assert x.graph.degrees() == [4] * 120

    def test_identity_is_vertex_zero(self):
        x = CayleyGraph(family("path", 4))
        assert x.element(x.identity_vertex).is_identity()
        assert x.vertex(Permutation.identity(4)) == 0

    def test_adjacency_is_left_multiplication(self):
        s = family("cycle", 4)
        x = cayley.build(s)
        for v in range(x.num_vertices):
            h = x.element(v)
            expected = sorted(rank(compose(t, h)) for t in s.permutations())
            assert list(x.graph.adjacency[v]) == expected

    def test_lazy_neighbors_match_materialized(self):
        s = family("path", 5)
        lazy = CayleyGraph(s)
        built = cayley.build(s)
        assert not lazy.is_materialized
        for v in range(0, 120, 7):
            assert lazy.neighbors(v) == cayley.neighbors(built, v)
        assert not lazy.is_materialized

    def test_generator_vertices(self):
        s = family("star", 4)
        x = CayleyGraph(s)
        gens = x.generator_vertices()
        assert sorted(gens.values()) == s.sorted_pairs()
        assert sorted(gens) == x.neighbors(x.identity_vertex)

    def test_materialization_guard_points_to_lazy_adjacency(self, monkeypatch):
        monkeypatch.setattr(settings, "MAX_VERTICES", 100)
        x = CayleyGraph(family("star", 5))
        with pytest.raises(CapacityError, match="neighbors"):
            x.graph
        assert len(x.neighbors(17)) == 4

    def test_empty_generating_set(self):
        with pytest.raises(PreconditionError):
            CayleyGraph(TranspositionSet.of(3, []))

    def test_vertex_out_of_range(self):
        with pytest.raises(RangeError):
            CayleyGraph(family("path", 3)).neighbors(6)

    def test_disconnected_set_gives_disconnected_graph(self):
        x = cayley.build(TranspositionSet.of(4, [(1, 2), (3, 4)]))
        assert not x.graph.is_connected()

    @pytest.mark.parametrize("name", ["path", "cycle", "star", "complete"])
    def test_bipartite_by_parity(self, name):
        for n in (3, 4, 5):
            x = cayley.build(family(name, n))
            coloring = is_bipartite(x.graph)
            assert coloring is not None
            parity_side = x.parity_classes()
            assert all(c ^ coloring[0] == p ^ parity_side[0] for c, p in zip(coloring, parity_side))
            assert parity_side[0] == 0
            assert parity(x.element(1)) is Parity.odd


class TestRightRegular:
    def test_every_right_multiplication_is_an_automorphism_at_n4(self, classes_n4):
        for s in classes_n4:
            x = cayley.build(s)
            for g in all_permutations(4):
                assert cayley.is_right_regular_automorphism(x, g)

    def test_random_right_multiplications_at_n5(self, classes_n5, seed):
        r = random.Random(seed)
        for s in classes_n5:
            x = cayley.build(s)
            for _ in range(20):
                g = unrank(r.randrange(120), 5)
                assert cayley.is_right_regular_automorphism(x, g)

    def test_right_transposition_swaps_the_arc(self, classes_n4, classes_n5):
        for s in classes_n4 + classes_n5:
            x = cayley.build(s)
            e = x.identity_vertex
            for v, (a, b) in x.generator_vertices().items():
                r_t = cayley.right_regular_automorphism(x, Permutation.transposition(a, b, s.n))
                assert r_t(e) == v and r_t(v) == e

    def test_degree_mismatch(self):
        with pytest.raises(RangeError):
            cayley.right_regular_automorphism(CayleyGraph(family("path", 4)), Permutation.identity(3))


class TestConjugationIsomorphism:
    def test_relabeled_path(self):
        s = family("path", 5)
        f = Permutation.from_one_line([3, 5, 1, 2, 4])
        s2 = s.relabel(f)
        x, x2 = cayley.build(s), cayley.build(s2)
        sigma = cayley.conjugation_isomorphism(x, x2, VertexMapping(f.images))
        assert sigma(x.identity_vertex) == x2.identity_vertex
        assert sigma.is_isomorphism(x.graph, x2.graph)

    def test_rejects_non_isomorphism(self):
        x, x2 = cayley.build(family("path", 4)), cayley.build(family("star", 4))
        with pytest.raises(PreconditionError):
            cayley.conjugation_isomorphism(x, x2, VertexMapping.identity(4))


class TestAutSnS:
    @pytest.mark.parametrize(
        "name, order",
        [("path", 2), ("cycle", 10), ("star", 24), ("complete", 120)],
    )
    def test_orders_at_n5(self, name, order):
        conjugations = cayley.aut_sns(family(name, 5))
        assert len(conjugations) == order
        assert all(a.fixes_generators() for a in conjugations)
        assert conjugations[0].conjugator.is_identity()

    def test_apply_is_conjugation(self):
        s = family("cycle", 5)
        a = cayley.aut_sns(s)[1]
        for t in s.permutations():
            image = a.apply(t)
            assert image.is_transposition()
            assert tuple(image.support()) in s.pairs

    def test_action_is_a_cayley_automorphism(self):
        s = family("star", 4)
        x = cayley.build(s)
        for a in cayley.aut_sns(s):
            assert a.action.is_automorphism(x.graph)
            assert a.action(x.identity_vertex) == x.identity_vertex

    def test_requires_generating_set(self):
        with pytest.raises(PreconditionError):
            cayley.aut_sns(TranspositionSet.of(4, [(1, 2), (3, 4)]))


class TestStabilizerDecomposition:
    def test_all_classes_at_n4(self, classes_n4):
        for s in classes_n4:
            d = cayley.stabilizer_decomposition(cayley.build(s))
            assert d.certified, (s, d.checks)
            assert d.g_e.order == d.l_e.order * automorphism_group(to_graph(s)).order

    @pytest.mark.slow
    def test_named_families_at_n5(self, families_n5):
        for s in families_n5.values():
            d = cayley.stabilizer_decomposition(cayley.build(s))
            assert d.certified, (s, d.checks)

    def test_full_group_order_at_n4(self, classes_n4):
        for s in classes_n4:
            x = cayley.build(s)
            d = cayley.stabilizer_decomposition(x)
            aut_t = automorphism_group(to_graph(s)).order
            assert automorphism_group(x.graph).order == factorial(4) * d.l_e.order * aut_t, s

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["path", "cycle", "star", "complete"])
    def test_full_group_order_at_n5(self, name):
        s = family(name, 5)
        x = cayley.build(s)
        d = cayley.stabilizer_decomposition(x)
        aut_t = automorphism_group(to_graph(s)).order
        assert automorphism_group(x.graph).order == factorial(5) * d.l_e.order * aut_t

    def test_complete_graph_has_nontrivial_l_e(self):
        # inversion fixes e and every transposition
        d = cayley.stabilizer_decomposition(cayley.build(family("complete", 4)))
        assert d.l_e.order > 1
        assert d.certified

    def test_star_at_n5_l_e_trivial(self):
        d = cayley.stabilizer_decomposition(cayley.build(family("star", 5)))
        assert d.l_e.order == 1
        assert d.g_e.order == 24

    def test_restriction_lands_in_line_graph_automorphisms(self):
        s = family("path", 4)
        x = cayley.build(s)
        lt, _ = line_graph(to_graph(s))
        g_e = automorphism_group(x.graph).stabilizer(x.identity_vertex)
        for g in g_e.elements:
            restriction = cayley.restrict_to_generators(x, g)
            assert restriction is not None and restriction.is_automorphism(lt)

    def test_degree_guard(self, monkeypatch):
        monkeypatch.setattr(settings, "MAX_STABILIZER_DEGREE", 3)
        with pytest.raises(CapacityError):
            cayley.stabilizer_decomposition(CayleyGraph(family("path", 4)))


class TestEdgeTransitivity:
    @pytest.mark.parametrize(
        "name, expected",
        [("path", False), ("cycle", True), ("star", True), ("complete", True)],
    )
    def test_named_families_at_n5(self, name, expected):
        s = family(name, 5)
        verdict = cayley.fast_is_edge_transitive(s)
        assert verdict.value is expected and bool(verdict) is expected
        assert verdict.in_theorem_range
        x = cayley.build(s)
        grp = automorphism_group(x.graph)
        assert is_edge_transitive(x.graph, grp) is expected
        assert is_arc_transitive(x.graph, grp) is expected

    def test_below_range_flagged(self):
        assert not cayley.fast_is_edge_transitive(family("star", 4)).in_theorem_range

    def test_requires_generating_set(self):
        with pytest.raises(PreconditionError):
            cayley.fast_is_edge_transitive(TranspositionSet.of(4, [(1, 2)]))


class TestTranspositionIsomorphism:
    def test_normalize_fixes_identity(self):
        s = family("cycle", 5)
        x = cayley.build(s)
        g = Permutation.from_one_line([2, 1, 4, 5, 3])
        phi = cayley.right_regular_automorphism(x, g)
        psi = cayley.normalize_isomorphism(x, x, phi)
        assert psi(x.identity_vertex) == x.identity_vertex
        assert psi.is_automorphism(x.graph)

    def test_recovers_relabeling(self):
        s = family("path", 5)
        f = Permutation.from_one_line([2, 4, 1, 5, 3])
        s2 = s.relabel(f)
        x, x2 = cayley.build(s), cayley.build(s2)
        phi = find_isomorphism(x.graph, x2.graph)
        assert phi is not None
        recovered = cayley.transposition_isomorphism(x, x2, phi)
        assert recovered.is_isomorphism(to_graph(s), to_graph(s2))

    def test_below_range_rejected(self):
        x = cayley.build(family("star", 4))
        with pytest.raises(PreconditionError):
            cayley.transposition_isomorphism(x, x, VertexMapping.identity(24))
