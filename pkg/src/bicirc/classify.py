"""Circulant/bicirculant predicates, the normal quotient reduction, the basic
graph catalog, and the small census of arc-transitive bicirculant frames.

The reduction takes the full automorphism group G of a connected
arc-transitive bicirculant, enumerates the normal subgroups of G with at
least three orbits (the trivial subgroup included), and quotients by each
orbit partition.  Candidates that are maximal with at least three orbits
are the ones the reduction statement speaks about: their quotients must be
multiplicity-r covers landing in the basic catalog.  Non-maximal candidates
are reported too, since published quotient tables routinely pick a smaller,
more recognizable normal subgroup.  The verdict quantifies over the maximal
candidates only, and is always relative to the full automorphism group.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .autgrp import (
    automorphism_group,
    canonical_form,
    find_automorphism_with_cycle_type,
    is_arc_transitive,
)
from .errors import OrderCapExceeded, ParameterError
from .families import (
    FamilySpec,
    build_spec,
    gen_bc,
)
from .gf import factor_prime_power, is_prime
from .graphs import Graph, basic_props, graph6_encode, quotient_graph
from .perm import DEFAULT_ELEMENT_CAP, PermGroup, Permutation


@dataclass(frozen=True)
class BicirculantWitness:
    perm: Permutation
    orbit0: tuple
    orbit1: tuple

    @classmethod
    def from_perm(cls, perm):
        cycles = perm.cycles(include_fixed=True)
        if len(cycles) != 2 or len(cycles[0]) != len(cycles[1]):
            raise ValueError(f"cycle type {perm.cycle_type()} is not two equal cycles")
        first = cycles[0] if 0 in cycles[0] else cycles[1]
        second = cycles[1] if first is cycles[0] else cycles[0]
        return cls(perm, tuple(sorted(first)), tuple(sorted(second)))


def is_circulant(g, node_budget=None):
    """A full-length cycle automorphism, or None after an exhaustive search."""
    if g.n == 0:
        return None
    return find_automorphism_with_cycle_type(g, (g.n,), node_budget)


def is_bicirculant(g, node_budget=None):
    """A half-order automorphism with two equal cycles, or None.

    Odd vertex counts are refused immediately: no permutation of odd degree
    has two equal cycles.
    """
    if g.n % 2 or g.n == 0:
        return None
    half = g.n // 2
    perm = find_automorphism_with_cycle_type(g, (half, half), node_budget)
    if perm is None:
        return None
    return BicirculantWitness.from_perm(perm)


# -- the basic catalog ---------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    spec: FamilySpec
    graph: Graph

    @property
    def text(self):
        return self.spec.text()


def _prime_powers_up_to(limit):
    out = []
    for q in range(2, limit + 1):
        try:
            factor_prime_power(q)
        except ParameterError:
            continue
        out.append(q)
    return out


def basic_catalog(order, valency, max_order=10**4):
    """Every parameterization of the basic families with this order and valency."""
    if order > max_order:
        raise ParameterError(f"catalog order {order} exceeds {max_order}")
    entries = []

    def add(kind, *args):
        spec = FamilySpec(kind, args)
        graph, _ = build_spec(spec)
        props = basic_props(graph)
        if graph.n == order and props.valency == valency:
            entries.append(CatalogEntry(spec, graph))

    # complete bipartite
    if order % 2 == 0 and valency == order // 2 and valency >= 2:
        add("Knn", order // 2)
    # complete
    if valency == order - 1 and order >= 3:
        add("K", order)
    # complete multipartite with parts of size two
    if order % 2 == 0 and order >= 6 and valency == order - 2:
        add("Kmulti", order // 2, 2)
    # complete bipartite minus a perfect matching
    if order % 2 == 0 and order >= 6 and valency == order // 2 - 1:
        add("KnnMinus", order // 2)
    # G(2p, e)
    if order % 2 == 0 and is_prime(order // 2):
        p = order // 2
        if valency > 1 and (p - 1) % valency == 0:
            add("G2p", p, valency)
    # point/hyperplane incidence and its bipartite complement
    if order % 2 == 0:
        m = order // 2
        for q in _prime_powers_up_to(order):
            d = 3
            while (q**d - 1) // (q - 1) <= m:
                if (q**d - 1) // (q - 1) == m:
                    if valency == (q ** (d - 1) - 1) // (q - 1):
                        add("BPG", d, q)
                    if valency == q ** (d - 1):
                        add("BPGprime", d, q)
                d += 1
    # Cay(p, e) on an odd prime number of vertices
    if is_prime(order) and order % 2 and valency % 2 == 0 and valency >= 2:
        if (order - 1) % valency == 0:
            add("CayPE", order, valency)
    # the sporadic bipartite graph on 22 vertices
    if order == 22 and valency == 6:
        add("BH11prime")
    # sporadics and their complements
    if order == 10 and valency == 3:
        add("Petersen")
    if order == 10 and valency == 6:
        add("Complement", FamilySpec("Petersen", ()))
    if order == 16 and valency == 6:
        add("H", 2, 4)
    if order == 16 and valency == 9:
        add("Complement", FamilySpec("H", (2, 4)))
    if order == 16 and valency == 5:
        add("Clebsch")
    if order == 16 and valency == 10:
        add("Complement", FamilySpec("Clebsch", ()))
    return entries


def identify_graph(g, catalog=None):
    """First catalog entry isomorphic to g, or None."""
    props = basic_props(g)
    if not props.regular:
        return None
    if catalog is None:
        catalog = basic_catalog(g.n, props.valency)
    cert = canonical_form(g).canonical_graph6
    for entry in catalog:
        if canonical_form(entry.graph).canonical_graph6 == cert:
            return entry
    return None


# -- shape of arc-transitive circulants ------------------------------------------------


@dataclass(frozen=True)
class CirculantShape:
    kind: str  # "normal" | "lex_product" | "lex_minus" | "none"
    m: int | None = None
    b: int | None = None


def kovacs_li_shape(g, witness_cycle, node_budget=None):
    """Classify a circulant: normal (the witness cycle group is normal in the
    automorphism group), a lexicographic product over an empty graph, that
    product minus the aligned copies (coprime orders), or none of those.

    The product shapes are tested along the witness: the candidate blocks are
    the orbits of the order-b subgroup of the witness cycle.
    """
    n = g.n
    cyclic = [witness_cycle**k for k in range(n)]
    aut = automorphism_group(g, node_budget=node_budget)
    if all(
        witness_cycle.conjugate(gen) in cyclic for gen in aut.generators
    ):
        return CirculantShape("normal")

    from .graphs import lexicographic_minus, lexicographic_product, empty_graph
    from .autgrp import are_isomorphic
    from .perm import Partition

    best = None
    for b in range(2, n):
        if n % b:
            continue
        m = n // b
        if m < 2:
            continue
        sub = witness_cycle**m
        blocks = Partition.from_blocks(sub.cycles(include_fixed=True), n)
        sigma, _cover = quotient_graph(g, blocks)
        if are_isomorphic(g, lexicographic_product(sigma, empty_graph(b))):
            if best is None or b > best.b:
                best = CirculantShape("lex_product", m, b)
    if best is not None:
        return best
    for b in range(2, n):
        if n % b:
            continue
        m = n // b
        if m < 2 or _gcd(m, b) != 1:
            continue
        sub = witness_cycle**m
        blocks = Partition.from_blocks(sub.cycles(include_fixed=True), n)
        sigma, _cover = quotient_graph(g, blocks)
        if are_isomorphic(g, lexicographic_minus(sigma, b)):
            if best is None or b > best.b:
                best = CirculantShape("lex_minus", m, b)
    if best is not None:
        return best
    return CirculantShape("none")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- the reduction -------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionCandidate:
    subgroup_gens: tuple  # cycle strings
    subgroup_order: int
    orbit_count: int
    maximal: bool
    r: int | None
    cover_ok: bool
    quotient: Graph
    identified: str | None
    quotient_quasiprimitive: bool | None = None
    quotient_biquasiprimitive: bool | None = None


@dataclass(frozen=True)
class ReductionReport:
    graph: Graph
    aut_order: int
    candidates: tuple
    verdict: bool
    partial: bool = False

    def maximal_candidates(self):
        return [c for c in self.candidates if c.maximal]

    def to_json(self, indent=None):
        payload = {
            "input": graph6_encode(self.graph),
            "aut_order": self.aut_order,
            "partial": self.partial,
            "candidates": [
                {
                    "N_generators": list(c.subgroup_gens),
                    "N_order": c.subgroup_order,
                    "N_orbits": c.orbit_count,
                    "maximal": c.maximal,
                    "r": c.r,
                    "cover_ok": c.cover_ok,
                    "quotient": graph6_encode(c.quotient),
                    "identified": c.identified,
                    "quotient_quasiprimitive": c.quotient_quasiprimitive,
                    "quotient_biquasiprimitive": c.quotient_biquasiprimitive,
                }
                for c in self.candidates
            ],
            "verdict": "pass" if self.verdict else "fail",
        }
        return json.dumps(payload, indent=indent)


def _induced_block_action(group, partition):
    """The permutation group induced on the blocks of an invariant partition."""
    t = len(partition.blocks)
    gens = []
    for g in group.generators:
        images = [partition.block_of[g(b[0])] for b in partition.blocks]
        gens.append(Permutation(images))
    return PermGroup(t, gens)


def _candidate_subgroups(group, cap):
    """Normal subgroups with >= 3 orbits, trivial included; (subgroup, maximal).

    The enumerated list is complete, so a member is maximal exactly when no
    strictly larger member exists.
    """
    subs = group.normal_subgroups_with_orbit_bound(3, cap=cap, maximal_only=False)
    out = [(PermGroup(group.degree, ()), not subs)]
    for s in subs:
        maximal = not any(
            other is not s and s.order() < other.order() and s.is_subgroup_of(other)
            for other in subs
        )
        out.append((s, maximal))
    return out


def _fallback_subgroups(group):
    """Cap fallback: closures of single strong generators and their powers,
    joined while at least three orbits survive.  Sound but not exhaustive."""
    degree = group.degree
    seeds = []
    for g in group.generators:
        order = g.order()
        for d in range(2, order + 1):
            if order % d == 0:
                seeds.append(g ** (order // d))
    seeds.sort(key=lambda p: sum(1 for i, x in enumerate(p.images) if i != x))
    closures = []
    seen = set()
    for s in seeds:
        if s.is_identity():
            continue
        sub = group.normal_closure([s])
        if sub.orbit_count() < 3:
            continue
        sig = sub._signature()
        if sig not in seen:
            seen.add(sig)
            closures.append(sub)
    found = {c._signature(): c for c in closures}
    frontier = list(closures)
    while frontier:
        sub = frontier.pop()
        for c in closures:
            if c.is_subgroup_of(sub):
                continue
            join = PermGroup(degree, sub.generators + c.generators)
            if join.orbit_count() < 3:
                continue
            sig = join._signature()
            if sig not in found:
                found[sig] = join
                frontier.append(join)
    subs = sorted(found.values(), key=lambda s: (s.order(), s.orbits().blocks))
    out = [(PermGroup(degree, ()), not subs)]
    for s in subs:
        maximal = all(
            PermGroup(degree, s.generators + c.generators).orbit_count() < 3
            for c in closures
            if not c.is_subgroup_of(s)
        )
        out.append((s, maximal))
    return out


def reduce_graph(
    g,
    witness=None,
    cap=DEFAULT_ELEMENT_CAP,
    node_budget=None,
    require_preconditions=True,
):
    """Quotient g by the orbit partitions of normal subgroups of Aut(g) with
    at least three orbits, identifying each quotient in the basic catalog."""
    if g.n < 3:
        raise ParameterError("reduction needs at least three vertices")
    props = basic_props(g)
    aut = automorphism_group(g, node_budget=node_budget)
    if require_preconditions:
        if not props.connected:
            raise ParameterError("reduction needs a connected graph")
        if not is_arc_transitive(g, aut):
            raise ParameterError("reduction needs an arc-transitive graph")
        if witness is None:
            witness = is_bicirculant(g, node_budget)
        if witness is None:
            raise ParameterError("graph is not a bicirculant")

    partial = False
    try:
        pairs = _candidate_subgroups(aut, cap)
    except OrderCapExceeded:
        pairs = _fallback_subgroups(aut)
        partial = True

    valency = props.valency
    candidates = []
    for sub, maximal in pairs:
        parts = sub.orbits()
        quotient, cover = quotient_graph(g, parts)
        entry = identify_graph(quotient)
        quasi = biquasi = None
        if maximal and cover.is_r_cover:
            # for the trivial subgroup the induced action is aut itself;
            # reusing the object keeps its conjugacy caches warm
            induced = aut if sub.order() == 1 else _induced_block_action(aut, parts)
            try:
                quasi = induced.is_quasiprimitive(cap)
                biquasi = induced.is_biquasiprimitive(cap)
            except OrderCapExceeded:
                pass
        candidates.append(
            ReductionCandidate(
                subgroup_gens=tuple(p.cycle_string() for p in sub.generators),
                subgroup_order=sub.order(),
                orbit_count=len(parts),
                maximal=maximal,
                r=cover.r,
                cover_ok=cover.is_r_cover,
                quotient=quotient,
                identified=entry.text if entry else None,
                quotient_quasiprimitive=quasi,
                quotient_biquasiprimitive=biquasi,
            )
        )
    verdict = all(
        c.cover_ok
        and c.identified is not None
        and (valency is None or c.r is None or valency % c.r == 0)
        for c in candidates
        if c.maximal
    )
    candidates.sort(key=lambda c: c.subgroup_order)
    return ReductionReport(g, aut.order(), tuple(candidates), verdict, partial)


def verify_reduction(g, witness=None, cap=DEFAULT_ELEMENT_CAP, node_budget=None):
    """Run the reduction and insist every maximal quotient is a basic graph."""
    return reduce_graph(g, witness, cap, node_budget)


# -- census of arc-transitive bicirculant frames ------------------------------------------


@dataclass(frozen=True)
class CensusEntry:
    canonical: str
    frame: str
    graph: Graph


def _symmetric_subsets(n, size):
    """Symmetric subsets of Z_n minus 0 with the given cardinality."""
    items = []
    for x in range(1, n // 2 + 1):
        if x == n - x or (2 * x) % n == 0:
            items.append((x,))
        else:
            items.append((x, n - x))
    out = []

    def rec(idx, chosen, remaining):
        if remaining == 0:
            out.append(tuple(sorted(chosen)))
            return
        if idx == len(items):
            return
        rec(idx + 1, chosen, remaining)
        item = items[idx]
        if len(item) <= remaining:
            rec(idx + 1, chosen + list(item), remaining - len(item))
    rec(0, [], size)
    return sorted(set(out))


def _bc_frames(n, valency):
    """Regular BC_n frames of the given valency with 0 in the spoke set.

    Arc-transitivity forces |L| = |R|, and connectivity forces spokes, so
    only those frames are generated.  The spoke set is translated to contain
    0; full isomorphism deduplication happens downstream.
    """
    frames = []
    for left_size in range(0, valency):
        mid_size = valency - left_size
        if mid_size < 1:
            continue
        lefts = _symmetric_subsets(n, left_size)
        if not lefts:
            continue
        mids = [
            (0,) + rest
            for rest in itertools.combinations(range(1, n), mid_size - 1)
        ]
        for left in lefts:
            for right in _symmetric_subsets(n, left_size):
                for mid in mids:
                    frames.append((n, left, mid, right))
    return frames


def _frame_normal_form(n, left, mid, right):
    """Representative under scaling by units, spoke translation, and the
    half swap; cuts the frame list before the expensive isomorphism work."""
    best = None
    units = [u for u in range(1, n) if _gcd(u, n) == 1]
    for u in units:
        ul = tuple(sorted(u * x % n for x in left))
        ur = tuple(sorted(u * x % n for x in right))
        um = [u * x % n for x in mid]
        for base in um:
            shifted = tuple(sorted((x - base) % n for x in um))
            for cand in (
                (ul, shifted, ur),
                (ur, tuple(sorted((-x) % n for x in shifted)), ul),
            ):
                if best is None or cand < best:
                    best = cand
    return best


def _census_check_frame(args):
    n, left, mid, right, node_budget = args
    g, _witness = gen_bc(n, left, mid, right)
    props = basic_props(g)
    if not props.connected:
        return None
    if not is_arc_transitive(g, node_budget=node_budget):
        return None
    cert = canonical_form(g, node_budget=node_budget).canonical_graph6
    frame = FamilySpec("BC", (n, left, mid, right)).text()
    return cert, frame, graph6_encode(g)


def census(max_n, max_valency, jobs=1, node_budget=None):
    """Connected arc-transitive bicirculants on up to 2*max_n vertices with
    valency at most max_valency, from BC frame enumeration."""
    if max_valency < 1:
        raise ParameterError("valency bound must be positive")
    tasks = []
    seen_frames = set()
    for n in range(2, max_n + 1):
        for valency in range(1, max_valency + 1):
            for frame in _bc_frames(n, valency):
                key = (n,) + _frame_normal_form(*frame)
                if key in seen_frames:
                    continue
                seen_frames.add(key)
                tasks.append(frame + (node_budget,))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_census_check_frame, tasks, chunksize=16))
    else:
        results = [_census_check_frame(t) for t in tasks]
    by_cert = {}
    for res in results:
        if res is None:
            continue
        cert, frame, g6 = res
        if cert not in by_cert or frame < by_cert[cert][0]:
            by_cert[cert] = (frame, g6)
    from .graphs import graph6_decode

    out = [
        CensusEntry(cert, frame, graph6_decode(g6))
        for cert, (frame, g6) in by_cert.items()
    ]
    out.sort(key=lambda e: (e.graph.n, e.frame))
    return out
