"""Permutations and permutation groups on the points {0..n-1}.

Groups are backed by a deterministic Schreier-Sims chain (base and strong
generating set), which supplies order, membership, stabilizers and element
enumeration.  Everything here is immutable after construction and safe to
share across threads; chain construction itself is single-threaded.

Composition convention: ``(p * q)(x) == q(p(x))``, i.e. apply left first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OrderCapExceeded, ParseError

DEFAULT_ELEMENT_CAP = 10**6

# Subgroups up to this order are deduplicated by exact element set; above it
# a cheaper (order, orbit partition) signature is used instead.
_EXACT_DEDUPE_LIMIT = 10**4


class Permutation:
    """A bijection of {0..n-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for x in images:
            if not isinstance(x, int) or not 0 <= x < n or seen[x]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {images!r}")
            seen[x] = True
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, cycles, degree):
        images = list(range(degree))
        touched = set()
        for cyc in cycles:
            for x in cyc:
                if x in touched:
                    raise ValueError(f"point {x} appears in two cycles")
                if not 0 <= x < degree:
                    raise ValueError(f"point {x} out of range for degree {degree}")
                touched.add(x)
            for a, b in zip(cyc, cyc[1:]):
                images[a] = b
            if cyc:
                images[cyc[-1]] = cyc[0]
        return cls(images)

    @classmethod
    def parse(cls, text, degree):
        """Parse cycle notation like "(0 1 2)(3 4)"; "()" is the identity."""
        s = text.replace(",", " ").strip()
        if s in ("()", ""):
            return cls.identity(degree)
        cycles = []
        pos = 0
        while pos < len(s):
            if s[pos].isspace():
                pos += 1
                continue
            if s[pos] != "(":
                raise ParseError(f"bad cycle notation: {text!r}")
            end = s.find(")", pos)
            if end < 0:
                raise ParseError(f"unclosed cycle in {text!r}")
            body = s[pos + 1 : end].split()
            try:
                cyc = [int(t) for t in body]
            except ValueError as exc:
                raise ParseError(f"bad cycle notation: {text!r}") from exc
            if cyc:
                cycles.append(cyc)
            pos = end + 1
        try:
            return cls.from_cycles(cycles, degree)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        q = other.images
        return Permutation(q[x] for x in self.images)

    def inverse(self):
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv)

    def __pow__(self, k):
        n = len(self.images)
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, by):
        """Return by^-1 * self * by."""
        return by.inverse() * self * by

    def cycles(self, include_fixed=False):
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self):
        """Multiset of cycle lengths (fixed points included), largest first."""
        return tuple(
            sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True)
        )

    def order(self):
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"


def cycle_type(p):
    return p.cycle_type()


@dataclass(frozen=True)
class Partition:
    """A partition of {0..n-1}: blocks sorted by their smallest element."""

    block_of: tuple
    blocks: tuple

    @classmethod
    def from_blocks(cls, blocks, n=None):
        blocks = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        if n is None:
            n = sum(len(b) for b in blocks)
        block_of = [-1] * n
        for i, b in enumerate(blocks):
            for v in b:
                if block_of[v] != -1:
                    raise ValueError(f"point {v} in two blocks")
                block_of[v] = i
        if any(i == -1 for i in block_of):
            raise ValueError("blocks do not cover all points")
        return cls(tuple(block_of), blocks)

    @property
    def n(self):
        return len(self.block_of)

    def __len__(self):
        return len(self.blocks)

    def is_trivial(self):
        return len(self.blocks) == 1 or len(self.blocks) == self.n


@dataclass(frozen=True)
class TransitivityProfile:
    transitive: bool
    semiregular: bool
    regular: bool


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point, degree):
        self.point = point
        self.gens = []
        self.transversal = {point: Permutation.identity(degree)}


class PermGroup:
    """Permutation group given by generators, with a lazy BSGS."""

    def __init__(self, degree, generators=()):
        self.degree = degree
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self._levels = None
        self._scan_memo = None

    # -- BSGS ---------------------------------------------------------------

    def _chain(self, base_prefix=()):
        if base_prefix:
            return _schreier_sims(self.degree, self.generators, tuple(base_prefix))
        if self._levels is None:
            self._levels = _schreier_sims(self.degree, self.generators, ())
        return self._levels

    def order(self):
        n = 1
        for level in self._chain():
            n *= len(level.transversal)
        return n

    def __contains__(self, p):
        if p.degree != self.degree:
            return False
        return _sift(self._chain(), p) is None

    def sifted_base(self):
        return tuple(level.point for level in self._chain())

    # -- orbits and transitivity ---------------------------------------------

    def orbit(self, point):
        seen = {point}
        queue = [point]
        while queue:
            x = queue.pop()
            for g in self.generators:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self):
        todo = set(range(self.degree))
        blocks = []
        while todo:
            orb = self.orbit(min(todo))
            todo.difference_update(orb)
            blocks.append(orb)
        return Partition.from_blocks(blocks, self.degree)

    def orbit_count(self):
        return len(self.orbits())

    def is_transitive(self):
        return self.orbit_count() == 1

    def transitivity_profile(self):
        order = self.order()
        parts = self.orbits()
        semiregular = all(len(b) == order for b in parts.blocks)
        transitive = len(parts) == 1
        return TransitivityProfile(transitive, semiregular, transitive and semiregular)

    # -- stabilizers ----------------------------------------------------------

    def point_stabilizer(self, alpha):
        """Subgroup fixing alpha, from a chain rebased to start at alpha."""
        if not 0 <= alpha < self.degree:
            raise ValueError(f"point {alpha} out of range")
        levels = self._chain(base_prefix=(alpha,))
        gens = []
        for level in levels[1:]:
            gens.extend(level.gens)
        return PermGroup(self.degree, gens)

    # -- element enumeration ---------------------------------------------------

    def elements(self, cap=DEFAULT_ELEMENT_CAP):
        """All elements as Permutation objects; raises above the cap."""
        return [Permutation(t) for t in self._element_tuples(cap)]

    def _element_tuples(self, cap=DEFAULT_ELEMENT_CAP):
        return list(self._iter_element_tuples(cap))

    def _iter_element_tuples(self, cap=DEFAULT_ELEMENT_CAP):
        order = self.order()
        if cap is not None and order > cap:
            raise OrderCapExceeded(order, cap)
        levels = self._chain()

        def rec(i):
            if i == len(levels):
                yield tuple(range(self.degree))
                return
            reps = [t.images for t in levels[i].transversal.values()]
            for h in rec(i + 1):
                for rep in reps:
                    yield tuple(rep[x] for x in h)

        return rec(0)

    # -- blocks -----------------------------------------------------------------

    def _finest_partition_merging(self, a, b):
        """Finest invariant partition putting a and b in one block (union-find)."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx == ry:
                return None
            if rx > ry:
                rx, ry = ry, rx
            parent[ry] = rx
            return ry

        queue = [b]
        union(a, b)
        while queue:
            gamma = queue.pop()
            delta = find(gamma)
            for g in self.generators:
                absorbed = union(g(gamma), g(delta))
                if absorbed is not None:
                    queue.append(absorbed)
        groups = {}
        for v in range(self.degree):
            groups.setdefault(find(v), []).append(v)
        return Partition.from_blocks(groups.values(), self.degree)

    def minimal_block_systems(self):
        """Invariant partitions generated by the minimal block over each pair {0, b}.

        Empty exactly when the (transitive) group is primitive.
        """
        if not self.is_transitive():
            raise ValueError("block systems are defined for transitive groups only")
        seen = set()
        out = []
        for b in range(1, self.degree):
            part = self._finest_partition_merging(0, b)
            if part.is_trivial():
                continue
            if part.blocks not in seen:
                seen.add(part.blocks)
                out.append(part)
        out.sort(key=lambda p: (-len(p.blocks), p.blocks))
        return out

    # -- conjugacy and normal structure -------------------------------------------

    def conjugacy_classes(self, cap=DEFAULT_ELEMENT_CAP):
        """All elements partitioned into conjugacy classes."""
        elems = self._element_tuples(cap)
        gen_pairs = [(g.images, g.inverse().images) for g in self.generators]
        visited = set()
        classes = []
        for e in elems:
            if e in visited:
                continue
            cls = []
            queue = [e]
            visited.add(e)
            while queue:
                x = queue.pop()
                cls.append(Permutation(x))
                for g, ginv in gen_pairs:
                    y = tuple(ginv[x[v]] for v in g)
                    if y not in visited:
                        visited.add(y)
                        queue.append(y)
            classes.append(cls)
        classes.sort(key=lambda c: (len(c), c[0].images))
        return classes

    def normal_closure(self, seeds):
        """Smallest normal subgroup of self containing the seed permutations.

        Conjugates are gathered in whole rounds before the subgroup chain is
        rebuilt, which keeps the number of rebuilds logarithmic.
        """
        gens = []
        for s in seeds:
            if not s.is_identity() and s not in gens:
                gens.append(s)
        sub = PermGroup(self.degree, gens)
        fresh = list(gens)
        while fresh:
            new = []
            for x in fresh:
                for g in self.generators:
                    y = x.conjugate(g)
                    if y not in sub and y not in new:
                        new.append(y)
            if new:
                gens.extend(new)
                sub = PermGroup(self.degree, gens)
            fresh = new
        return sub

    def is_subgroup_of(self, other):
        return all(g in other for g in self.generators)

    def _signature(self):
        order = self.order()
        if order <= _EXACT_DEDUPE_LIMIT:
            return frozenset(self._element_tuples(cap=None))
        return (order, self.orbits().blocks)

    def _coarsened_orbit_count(self, blocks):
        """Number of blocks of the finest invariant partition coarsening the
        given partition (union-find driven by the generators)."""
        n = self.degree
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx == ry:
                return None
            if rx > ry:
                rx, ry = ry, rx
            parent[ry] = rx
            return ry

        queue = []
        for block in blocks:
            head = block[0]
            for other in block[1:]:
                absorbed = union(head, other)
                if absorbed is not None:
                    queue.append(absorbed)
        gens = [g.images for g in self.generators]
        while queue:
            gamma = queue.pop()
            delta = find(gamma)
            for g in gens:
                absorbed = union(g[gamma], g[delta])
                if absorbed is not None:
                    queue.append(absorbed)
        return sum(1 for v in range(n) if find(v) == v)

    @staticmethod
    def _cycle_blocks(images):
        n = len(images)
        seen = bytearray(n)
        blocks = []
        for i in range(n):
            if seen[i]:
                continue
            seen[i] = 1
            block = [i]
            j = images[i]
            while j != i:
                seen[j] = 1
                block.append(j)
                j = images[j]
            blocks.append(tuple(sorted(block)))
        return tuple(blocks)

    def _closure_orbit_counts(self, cap):
        """Map from cycle partition to the orbit count of the normal closure
        of any element with those cycles, over all nonidentity elements.

        The closure of one element is the group generated by its conjugates,
        and its orbit partition is the finest invariant partition coarsening
        the element's own cycles; that depends only on the cycle partition,
        so the scan deduplicates by it.
        """
        order = self.order()
        if cap is not None and order > cap:
            raise OrderCapExceeded(order, cap)
        if self._scan_memo is None:
            counts = {}
            identity = tuple(range(self.degree))
            for e in self._iter_element_tuples(cap=None):
                if e == identity:
                    continue
                key = self._cycle_blocks(e)
                if key not in counts:
                    counts[key] = self._coarsened_orbit_count(key)
            self._scan_memo = counts
        return self._scan_memo

    def _closure_seeds(self, k, cap):
        """Deduplicated normal closures, over all elements whose closure has
        at least k orbits."""
        counts = self._closure_orbit_counts(cap)
        closures = []
        seen = set()
        identity = tuple(range(self.degree))
        for e in self._iter_element_tuples(cap=None):
            if e == identity:
                continue
            if counts[self._cycle_blocks(e)] < k:
                continue
            sub = self.normal_closure([Permutation(e)])
            sig = sub._signature()
            if sig not in seen:
                seen.add(sig)
                closures.append(sub)
        return closures

    def normal_subgroups_with_orbit_bound(
        self, k, cap=DEFAULT_ELEMENT_CAP, maximal_only=True
    ):
        """Nontrivial normal subgroups with >= k orbits.

        Every such subgroup is a join of single-element normal closures that
        each keep >= k orbits, so the join lattice over those closures is
        explored with pruning (joins only ever merge orbits).  With
        maximal_only the result keeps just the subgroups that cannot be
        enlarged without dropping below k orbits.
        """
        closures = self._closure_seeds(k, cap)
        found = {}
        for c in closures:
            found[c._signature()] = c
        frontier = list(closures)
        while frontier:
            sub = frontier.pop()
            for c in closures:
                if c.is_subgroup_of(sub):
                    continue
                join = PermGroup(self.degree, sub.generators + c.generators)
                if join.orbit_count() < k:
                    continue
                sig = join._signature()
                if sig not in found:
                    found[sig] = join
                    frontier.append(join)
        subs = list(found.values())
        if maximal_only:
            subs = [sub for sub in subs if self._is_orbit_maximal(sub, closures, k)]
        subs.sort(key=lambda s: (s.order(), s.orbits().blocks))
        return subs

    def _is_orbit_maximal(self, sub, closures, k):
        for c in closures:
            if c.is_subgroup_of(sub):
                continue
            join = PermGroup(self.degree, sub.generators + c.generators)
            if join.orbit_count() >= k:
                return False
        return True

    def is_quasiprimitive(self, cap=DEFAULT_ELEMENT_CAP):
        """True when every nontrivial normal subgroup is transitive.

        It suffices to test normal closures of single elements: a nontrivial
        normal subgroup contains the closure of any of its nonidentity
        elements, and a supergroup of a transitive group is transitive.
        """
        if not self.is_transitive():
            raise ValueError("quasiprimitivity is defined for transitive groups")
        return all(c == 1 for c in self._closure_orbit_counts(cap).values())

    def is_biquasiprimitive(self, cap=DEFAULT_ELEMENT_CAP):
        """True when nontrivial normal subgroups all have <= 2 orbits and some
        has exactly 2.  Single-element closures suffice for the same reason as
        in is_quasiprimitive."""
        if not self.is_transitive():
            raise ValueError("bi-quasiprimitivity is defined for transitive groups")
        counts = set(self._closure_orbit_counts(cap).values())
        return counts <= {1, 2} and 2 in counts

    def __repr__(self):
        gens = ", ".join(g.cycle_string() for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, <{gens}>)"


def _sift(levels, p):
    """Sift p through the chain; None when p is a member, else the residue."""
    g = p
    for level in levels:
        y = g(level.point)
        if y == level.point:
            continue
        rep = level.transversal.get(y)
        if rep is None:
            return g
        g = g * rep.inverse()
    return None if g.is_identity() else g


def _schreier_sims(degree, generators, base_prefix):
    """Deterministic Schreier-Sims, bottom-up verification.

    Level i of the chain stabilizes base[:i]; its generator set is every
    strong generator fixing that prefix.  Base points beyond the forced
    prefix are chosen greedily as the smallest point moved by the residue
    that required them.
    """
    base = list(base_prefix)
    strong = []

    def add_strong(p):
        if p.is_identity() or p in strong:
            return
        strong.append(p)
        if all(p(b) == b for b in base):
            base.append(next(i for i, x in enumerate(p.images) if x != i))

    for g in generators:
        add_strong(g)
    if not base:
        return [_Level(pt, degree) for pt in base_prefix]

    transversals = [None] * len(base)

    def level_gens(i):
        return [g for g in strong if all(g(b) == b for b in base[:i])]

    def rebuild(i):
        gens = level_gens(i)
        tr = {base[i]: Permutation.identity(degree)}
        queue = [base[i]]
        while queue:
            x = queue.pop()
            ux = tr[x]
            for g in gens:
                y = g(x)
                if y not in tr:
                    tr[y] = ux * g
                    queue.append(y)
        transversals[i] = tr

    for j in range(len(base)):
        rebuild(j)

    # invariant: every level deeper than i has verified Schreier generators
    i = len(base) - 1
    while i >= 0:
        rebuild(i)
        tr = transversals[i]
        gens_i = level_gens(i)
        restart = False
        for y in sorted(tr):
            uy = tr[y]
            for s in gens_i:
                schreier = uy * s * tr[s(y)].inverse()
                if schreier.is_identity():
                    continue
                h = schreier
                j = i + 1
                while j < len(base):
                    im = h(base[j])
                    if im != base[j]:
                        rep = transversals[j].get(im)
                        if rep is None:
                            break
                        h = h * rep.inverse()
                    j += 1
                if h.is_identity():
                    continue
                had = len(base)
                add_strong(h)
                if len(base) > had:
                    transversals.append(None)
                # resume at the deepest level whose generator set gained h
                i = next(
                    idx for idx in range(len(base)) if h(base[idx]) != base[idx]
                )
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    levels = []
    for j, pt in enumerate(base):
        level = _Level(pt, degree)
        level.gens = level_gens(j)
        level.transversal = transversals[j]
        levels.append(level)
    return levels
