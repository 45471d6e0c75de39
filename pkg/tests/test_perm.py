"""Permutation and permutation-group core, checked against brute force."""

import itertools
import math
import random

import pytest

from bicirc.errors import OrderCapExceeded
from bicirc.perm import Partition, PermGroup, Permutation


def perm(text, degree):
    return Permutation.parse(text, degree)


def brute_elements(degree, gens):
    seen = {Permutation.identity(degree).images}
    frontier = [Permutation.identity(degree)]
    while frontier:
        x = frontier.pop()
        for h in gens:
            y = x * h
            if y.images not in seen:
                seen.add(y.images)
                frontier.append(y)
    return seen


class TestPermutation:
    def test_identity_cycle_type(self):
        p = Permutation.identity(5)
        assert p.cycle_type() == (1, 1, 1, 1, 1)
        assert p.cycle_string() == "()"

    def test_two_five_cycles(self):
        p = perm("(0 1 2 3 4)(5 6 7 8 9)", 10)
        assert p.cycle_type() == (5, 5)
        assert p.order() == 5

    def test_shift_on_two_orbits(self):
        # i -> i+1 on each of two blocks of five
        images = [(i + 1) % 5 for i in range(5)] + [5 + (i + 1) % 5 for i in range(5)]
        p = Permutation(images)
        assert p.cycle_type() == (5, 5)
        assert p.order() == 5

    def test_composition_order(self):
        p = perm("(0 1)", 3)
        q = perm("(1 2)", 3)
        assert (p * q)(0) == q(p(0))

    def test_parse_round_trip(self):
        p = perm("(0 1 2)(3 4)", 6)
        assert Permutation.parse(p.cycle_string(), 6) == p
        assert Permutation.parse("()", 4) == Permutation.identity(4)

    def test_inverse_and_power(self):
        p = perm("(0 1 2 3 4)", 5)
        assert p * p.inverse() == Permutation.identity(5)
        assert p**5 == Permutation.identity(5)
        assert p**-1 == p.inverse()

    def test_bad_permutation_rejected(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))


class TestBSGS:
    def test_s4(self):
        g = PermGroup(4, [perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
        assert g.order() == 24

    def test_cyclic_membership(self):
        g = PermGroup(7, [perm("(0 1 2 3 4 5 6)", 7)])
        assert g.order() == 7
        assert perm("(0 1)", 7) not in g
        assert perm("(0 2 4 6 1 3 5)", 7) in g

    def test_trivial_group(self):
        g = PermGroup(5, ())
        assert g.order() == 1
        assert len(g.orbits()) == 5

    def test_order_matches_brute_force_membership_count(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(2, 7)
            gens = [Permutation(rng.sample(range(n), n)) for _ in range(rng.randint(1, 3))]
            g = PermGroup(n, gens)
            want = brute_elements(n, gens)
            assert g.order() == len(want)
            accepted = sum(
                1 for im in itertools.permutations(range(n)) if Permutation(im) in g
            )
            assert accepted == len(want)

    def test_elements_enumeration(self):
        g = PermGroup(4, [perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
        elems = g.elements()
        assert len(elems) == 24
        assert len(set(elems)) == 24

    def test_element_cap(self):
        g = PermGroup(4, [perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
        with pytest.raises(OrderCapExceeded):
            g.elements(cap=10)


class TestOrbitsAndStabilizers:
    def test_orbits_of_trivial(self):
        g = PermGroup(3, ())
        assert g.orbits().blocks == ((0,), (1,), (2,))

    def test_semiregular_two_orbits(self):
        p = perm("(0 1 2 3 4)(5 6 7 8 9)", 10)
        g = PermGroup(10, [p])
        parts = g.orbits()
        assert sorted(len(b) for b in parts.blocks) == [5, 5]
        prof = g.transitivity_profile()
        assert not prof.transitive and prof.semiregular and not prof.regular

    def test_regular_cycle(self):
        g = PermGroup(6, [perm("(0 1 2 3 4 5)", 6)])
        prof = g.transitivity_profile()
        assert prof.transitive and prof.semiregular and prof.regular

    def test_point_stabilizer_s4(self):
        g = PermGroup(4, [perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
        assert g.point_stabilizer(0).order() == 6

    def test_orbit_stabilizer_identity(self):
        rng = random.Random(5)
        for _ in range(25):
            n = rng.randint(2, 7)
            gens = [Permutation(rng.sample(range(n), n)) for _ in range(2)]
            g = PermGroup(n, gens)
            for a in range(n):
                assert g.order() == g.point_stabilizer(a).order() * len(g.orbit(a))

    def test_stabilizer_of_regular_group_trivial(self):
        g = PermGroup(5, [perm("(0 1 2 3 4)", 5)])
        assert g.point_stabilizer(2).order() == 1


def invariant_partitions_brute(group):
    """All set partitions of the domain fixed blockwise by the group."""
    n = group.degree

    def set_partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in set_partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1 :]
            yield [[first]] + part

    out = []
    for part in set_partitions(list(range(n))):
        blocks = {frozenset(b) for b in part}
        if all(
            frozenset(g(x) for x in b) in blocks for b in blocks for g in group.generators
        ):
            out.append(Partition.from_blocks([sorted(b) for b in blocks], n))
    return out


def minimal_blocks_brute(group):
    """For each pair {0, b}: the finest invariant partition joining it,
    derived from the exhaustive partition list; nontrivial ones, deduplicated."""
    all_parts = invariant_partitions_brute(group)
    found = set()
    for b in range(1, group.degree):
        candidates = [p for p in all_parts if p.block_of[0] == p.block_of[b]]
        finest = min(candidates, key=lambda p: -len(p.blocks))
        # the finest is unique: invariant partitions joining a pair are
        # closed under common refinement
        assert sum(1 for p in candidates if len(p.blocks) == len(finest.blocks)) >= 1
        if not finest.is_trivial():
            found.add(finest.blocks)
    return found


class TestBlocks:
    def test_s4_primitive(self):
        g = PermGroup(4, [perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
        assert g.minimal_block_systems() == []

    def test_z4_blocks(self):
        g = PermGroup(4, [perm("(0 1 2 3)", 4)])
        systems = g.minimal_block_systems()
        assert [p.blocks for p in systems] == [((0, 2), (1, 3))]

    def test_octahedron_group_blocks(self):
        # Sym(2) wr Sym(3) acting on three antipodal pairs {0,1},{2,3},{4,5}
        gens = [
            perm("(0 1)", 6),
            perm("(0 2)(1 3)", 6),
            perm("(0 2 4)(1 3 5)", 6),
        ]
        g = PermGroup(6, gens)
        systems = g.minimal_block_systems()
        assert any(p.blocks == ((0, 1), (2, 3), (4, 5)) for p in systems)

    def test_against_exhaustive_enumeration(self):
        rng = random.Random(23)
        cases = [
            PermGroup(4, [perm("(0 1 2 3)", 4)]),
            PermGroup(6, [perm("(0 1 2 3 4 5)", 6)]),
            PermGroup(8, [perm("(0 1 2 3 4 5 6 7)", 8)]),
            PermGroup(6, [perm("(0 1)", 6), perm("(0 2)(1 3)", 6), perm("(0 2 4)(1 3 5)", 6)]),
        ]
        for _ in range(12):
            n = rng.choice([4, 6, 8])
            g = PermGroup(n, [Permutation(rng.sample(range(n), n)) for _ in range(2)])
            if g.is_transitive():
                cases.append(g)
        for g in cases:
            got = {p.blocks for p in g.minimal_block_systems()}
            assert got == minimal_blocks_brute(g)


class TestConjugacyAndNormal:
    def test_s3_classes(self):
        g = PermGroup(3, [perm("(0 1)", 3), perm("(0 1 2)", 3)])
        sizes = sorted(len(c) for c in g.conjugacy_classes())
        assert sizes == [1, 2, 3]

    def test_z5_classes(self):
        g = PermGroup(5, [perm("(0 1 2 3 4)", 5)])
        assert [len(c) for c in g.conjugacy_classes()] == [1] * 5

    def test_normal_closures_in_s4(self):
        s4 = PermGroup(4, [perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
        assert s4.normal_closure([Permutation.identity(4)]).order() == 1
        assert s4.normal_closure([perm("(0 1 2)", 4)]).order() == 12
        klein = s4.normal_closure([perm("(0 1)(2 3)", 4)])
        assert klein.order() == 4

    def test_closure_fixed_by_conjugation(self):
        s4 = PermGroup(4, [perm("(0 1)", 4), perm("(0 1 2 3)", 4)])
        sub = s4.normal_closure([perm("(0 1)(2 3)", 4)])
        for g in s4.generators:
            for x in sub.generators:
                assert x.conjugate(g) in sub

    def test_orbit_bound_z6(self):
        g = PermGroup(6, [perm("(0 1 2 3 4 5)", 6)])
        subs = g.normal_subgroups_with_orbit_bound(3)
        assert len(subs) == 1 and subs[0].order() == 2
        assert len(subs[0].orbits()) == 3

    def test_orbit_bound_primitive_empty(self):
        s5 = PermGroup(5, [perm("(0 1)", 5), perm("(0 1 2 3 4)", 5)])
        assert s5.normal_subgroups_with_orbit_bound(3) == []

    def test_orbit_bound_maximality_witness(self):
        # all subgroups of the regular Z12 are normal; those with >= 3 orbits
        # are the ones of order <= 4, and the maximal ones are Z4 and Z3
        g = PermGroup(12, [perm("(0 1 2 3 4 5 6 7 8 9 10 11)", 12)])
        every = g.normal_subgroups_with_orbit_bound(3, maximal_only=False)
        assert sorted(s.order() for s in every) == [2, 3, 4]
        maximal = g.normal_subgroups_with_orbit_bound(3)
        assert sorted(s.order() for s in maximal) == [3, 4]
        for sub in maximal:
            assert len(sub.orbits()) >= 3

    def test_quasiprimitive_s5(self):
        s5 = PermGroup(5, [perm("(0 1)", 5), perm("(0 1 2 3 4)", 5)])
        assert s5.is_quasiprimitive()
        assert not s5.is_biquasiprimitive()

    def test_not_quasiprimitive_with_small_normal(self):
        # A5 x S2 style action: the central involution has many orbits
        g = PermGroup(
            6,
            [perm("(0 1 2)(3 4 5)", 6), perm("(0 3)(1 4)(2 5)", 6)],
        )
        # the swap generates a normal subgroup with 3 orbits
        assert not g.is_quasiprimitive()


class TestPartition:
    def test_canonical_block_order(self):
        p = Partition.from_blocks([[3, 1], [2, 0]], 4)
        assert p.blocks == ((0, 2), (1, 3))
        assert p.block_of == (0, 1, 0, 1)

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            Partition.from_blocks([[0, 1], [1, 2]], 3)
