"""Automorphism search, canonical forms, and the cycle-type backtracker.

The brute-force oracles here iterate raw permutations against the adjacency
relation; they never touch the refinement machinery they are checking.
"""

import itertools
import random

import pytest

from bicirc.autgrp import (
    automorphism_group,
    canonical_form,
    are_isomorphic,
    find_automorphism_with_cycle_type,
    is_arc_transitive,
    is_edge_transitive,
    is_vertex_transitive,
    stabilizer_orbit_profile,
)
from bicirc.errors import SearchBudgetExceeded
from bicirc.graphs import Graph, complement, random_relabeling
from bicirc.families import build_spec


def cycle_graph(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def brute_aut_count(g):
    n, rows = g.n, g.rows
    count = 0
    for p in itertools.permutations(range(n)):
        ok = True
        for u in range(n):
            ru, rpu = rows[u], rows[p[u]]
            for v in range(u + 1, n):
                if ((ru >> v) & 1) != ((rpu >> p[v]) & 1):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


class TestAutomorphismGroup:
    def test_complete_graph(self):
        assert automorphism_group(complete_graph(4)).order() == 24

    def test_cycle(self):
        assert automorphism_group(cycle_graph(6)).order() == 12

    def test_petersen(self):
        g, _ = build_spec("Petersen")
        group = automorphism_group(g)
        assert group.order() == 120
        assert all(g.is_automorphism(x) for x in group.generators)

    def test_brute_force_small(self):
        rng = random.Random(42)
        for _ in range(50):
            n = rng.randint(1, 7)
            edges = [
                (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5
            ]
            g = Graph.from_edges(n, edges)
            assert automorphism_group(g).order() == brute_aut_count(g)

    def test_colors_respected(self):
        # C4 with one vertex singled out keeps only the reflection through it
        g = cycle_graph(4)
        group = automorphism_group(g, colors=[1, 0, 0, 0])
        assert group.order() == 2

    def test_budget_abort(self):
        g, _ = build_spec("Knn(6)")
        with pytest.raises(SearchBudgetExceeded):
            automorphism_group(g, node_budget=3)


class TestCanonicalForm:
    def test_relabel_invariance(self):
        rng = random.Random(7)
        for spec in ("Petersen", "GP(8,3)", "Knn(3)", "KnnMinus(4)"):
            g, _ = build_spec(spec)
            want = canonical_form(g).canonical_graph6
            for _ in range(100):
                h = random_relabeling(g, rng)
                assert canonical_form(h).canonical_graph6 == want

    def test_isomorphic_pairs(self):
        g, _ = build_spec("GP(10,3)")
        rng = random.Random(1)
        assert are_isomorphic(g, random_relabeling(g, rng))

    def test_non_isomorphic(self):
        assert not are_isomorphic(cycle_graph(6), build_spec("Knn(3)")[0])
        # same degree sequence, different graphs
        assert not are_isomorphic(cycle_graph(6), build_spec("Kmulti(2,3)")[0])

    def test_labeling_produces_canonical_graph(self):
        g, _ = build_spec("GP(5,2)")
        form = canonical_form(g)
        assert g.relabel(form.labeling) == Graph(
            *_decode_form(form.canonical_graph6)
        )


def _decode_form(text):
    from bicirc.graphs import graph6_decode

    h = graph6_decode(text)
    return h.n, h.rows


class TestTransitivity:
    def test_petersen_arc_transitive(self):
        g, _ = build_spec("Petersen")
        assert is_vertex_transitive(g)
        assert is_edge_transitive(g)
        assert is_arc_transitive(g)

    def test_path_not_transitive(self):
        p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert not is_vertex_transitive(p3)

    def test_multipartite_arc_transitive(self):
        for m, n in ((2, 3), (3, 2), (4, 2)):
            g, _ = build_spec(f"Kmulti({m},{n})")
            assert is_arc_transitive(g)

    def test_prism_vertex_but_not_arc_transitive(self):
        g, _ = build_spec("GP(6,1)")
        assert is_vertex_transitive(g)
        assert not is_arc_transitive(g)

    def test_arc_implies_vertex_and_edge(self):
        for spec in ("Petersen", "GP(8,3)", "Knn(4)", "Clebsch", "H(2,4)"):
            g, _ = build_spec(spec)
            if is_arc_transitive(g):
                assert is_vertex_transitive(g) and is_edge_transitive(g)


class TestKnownOrders:
    @pytest.mark.parametrize(
        "spec,order",
        [
            ("H(2,4)", 1152),
            ("Clebsch", 1920),
            ("BPG(3,2)", 336),
            ("GP(24,5)", 288),
            ("Kmulti(3,2)", 48),
        ],
    )
    def test_aut_orders(self, spec, order):
        g, _ = build_spec(spec)
        assert automorphism_group(g).order() == order


class TestOperatorEquivariance:
    def test_complement_commutes_with_relabeling(self):
        rng = random.Random(9)
        for spec in ("Petersen", "GP(8,3)", "Kmulti(3,2)"):
            g, _ = build_spec(spec)
            want = canonical_form(complement(g)).canonical_graph6
            for _ in range(5):
                h = random_relabeling(g, rng)
                assert canonical_form(complement(h)).canonical_graph6 == want

    def test_double_cover_commutes_with_relabeling(self):
        from bicirc.graphs import standard_double_cover

        rng = random.Random(10)
        for spec in ("Petersen", "K(5)", "Cycle(7)"):
            g, _ = build_spec(spec)
            want = canonical_form(standard_double_cover(g)).canonical_graph6
            for _ in range(5):
                h = random_relabeling(g, rng)
                got = canonical_form(standard_double_cover(h)).canonical_graph6
                assert got == want

    def test_double_cover_lifts_transitivity(self):
        # lifted generators plus the copy swap act transitively on the double
        from bicirc.graphs import standard_double_cover
        from bicirc.perm import PermGroup, Permutation

        for spec in ("Petersen", "K(5)", "GP(8,3)"):
            g, _ = build_spec(spec)
            double = standard_double_cover(g)
            lifted = []
            for gen in automorphism_group(g).generators:
                images = [gen(x) for x in range(g.n)]
                lifted.append(Permutation(images + [g.n + i for i in images]))
            swap = Permutation(
                [g.n + x for x in range(g.n)] + list(range(g.n))
            )
            lift_group = PermGroup(2 * g.n, lifted + [swap])
            assert all(double.is_automorphism(p) for p in lift_group.generators)
            assert lift_group.is_transitive()


class TestStabilizerProfile:
    def test_petersen_rank_three(self):
        g, _ = build_spec("Petersen")
        assert stabilizer_orbit_profile(g) == (1, 3, 6)

    def test_hamming_rank_three(self):
        g, _ = build_spec("H(2,4)")
        assert stabilizer_orbit_profile(g) == (1, 6, 9)

    def test_clebsch_rank_three(self):
        g, _ = build_spec("Clebsch")
        assert stabilizer_orbit_profile(g) == (1, 5, 10)


class TestCycleTypeSearch:
    def test_rotation_of_cycle(self):
        found = find_automorphism_with_cycle_type(cycle_graph(6), (6,))
        assert found is not None and found.cycle_type() == (6,)

    def test_petersen_two_fives(self):
        g, _ = build_spec("Petersen")
        found = find_automorphism_with_cycle_type(g, (5, 5))
        assert found is not None
        assert found.cycle_type() == (5, 5) and g.is_automorphism(found)

    def test_petersen_not_circulant(self):
        g, _ = build_spec("Petersen")
        assert find_automorphism_with_cycle_type(g, (10,)) is None
        assert find_automorphism_with_cycle_type(g, (10,), force_backtrack=True) is None

    def test_mixed_type_on_path(self):
        p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
        found = find_automorphism_with_cycle_type(p3, (2, 1))
        assert found is not None and found.cycle_type() == (2, 1)

    def test_backtracker_agrees_with_group_filter(self):
        def partitions(total, maximum):
            if total == 0:
                yield ()
                return
            for first in range(min(total, maximum), 0, -1):
                for rest in partitions(total - first, first):
                    yield (first,) + rest

        for spec in ("CayCyc(5;[1,4])", "Petersen", "K(4)", "Knn(3)", "GP(6,1)"):
            g, _ = build_spec(spec)
            types_in_group = {
                p.cycle_type() for p in automorphism_group(g).elements()
            }
            for ctype in partitions(g.n, g.n):
                found = find_automorphism_with_cycle_type(
                    g, ctype, force_backtrack=True
                )
                assert (found is not None) == (ctype in types_in_group), (spec, ctype)
                if found is not None:
                    assert found.cycle_type() == ctype
                    assert g.is_automorphism(found)

    def test_budget_abort_distinct_from_not_found(self):
        g, _ = build_spec("GP(8,3)")
        with pytest.raises(SearchBudgetExceeded):
            find_automorphism_with_cycle_type(
                g, (16,), node_budget=2, force_backtrack=True
            )

    def test_bad_type_rejected(self):
        with pytest.raises(ValueError):
            find_automorphism_with_cycle_type(cycle_graph(4), (3,))
