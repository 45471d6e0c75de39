"""Graph automorphisms, canonical labeling, and constrained automorphism search.

The engine is individualization-refinement: refine an ordered vertex
partition to its equitable fixpoint, branch on a target cell, and walk the
tree depth-first.  Leaves are discrete partitions read as labelings; equal
leaf certificates yield automorphisms, the lexicographically largest
certificate is the canonical form, and siblings are pruned through orbits
of the automorphisms found so far that fix the branching prefix pointwise.
That pruning maps pruned subtrees onto explored ones, so it changes neither
the generated group nor the certificate maximum.

Node budgets abort with SearchBudgetExceeded, which is distinct from an
exhausted (negative) search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SearchBudgetExceeded
from .graphs import Graph, graph6_encode
from .perm import PermGroup, Permutation

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class CanonicalForm:
    labeling: Permutation  # old vertex -> canonical position
    canonical_graph6: str


def _refine(rows, cells, worklist=None):
    """Equitable refinement of an ordered partition.

    Every cell must end up with constant neighbour count into every cell.
    Splitting keys subcells by count ascending, which keeps the process
    label-invariant.
    """
    if worklist is None:
        queue = [tuple(c) for c in cells]
    else:
        queue = [tuple(cells[i]) for i in worklist]
    while queue:
        splitter = queue.pop()
        smask = 0
        for v in splitter:
            smask |= 1 << v
        newcells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                newcells.append(cell)
                continue
            buckets = {}
            for v in cell:
                buckets.setdefault((rows[v] & smask).bit_count(), []).append(v)
            if len(buckets) == 1:
                newcells.append(cell)
                continue
            changed = True
            for key in sorted(buckets):
                newcells.append(buckets[key])
                queue.append(tuple(buckets[key]))
        if changed:
            cells[:] = newcells
    return cells


def _initial_cells(n, colors):
    if colors is None:
        return [list(range(n))]
    groups = {}
    for v, c in enumerate(colors):
        groups.setdefault(c, []).append(v)
    return [groups[c] for c in sorted(groups)]


def _certificate(rows, lab, color_key):
    """Adjacency bits of the relabeled graph, plus the color word."""
    n = len(lab)
    pos = [0] * n
    for i, v in enumerate(lab):
        pos[v] = i
    acc = 0
    for i in range(n):
        row = rows[lab[i]]
        newrow = 0
        for u in _bits(row):
            newrow |= 1 << pos[u]
        acc = (acc << n) | newrow
    return (color_key, acc)


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Search:
    def __init__(self, g, colors, node_budget):
        self.rows = g.rows
        self.n = g.n
        self.colors = tuple(colors) if colors is not None else None
        self.budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
        self.nodes = 0
        self.aut_gens = []
        self.found_group = PermGroup(g.n, ())
        self.anchors = {}  # certificate -> first labeling reaching it
        self.best_cert = None
        self.best_lab = None

    def run(self):
        cells = _initial_cells(self.n, self.colors)
        _refine(self.rows, cells)
        self._node(cells, [])

    def _node(self, cells, prefix):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)
        target = None
        for idx, cell in enumerate(cells):
            if len(cell) > 1 and (target is None or len(cell) < len(cells[target])):
                target = idx
        if target is None:
            self._leaf([c[0] for c in cells])
            return
        explored = []
        for v in sorted(cells[target]):
            if self._pruned(v, explored, prefix):
                continue
            explored.append(v)
            child = [list(c) for c in cells]
            cell = child[target]
            cell.remove(v)
            child[target : target + 1] = [[v], cell]
            _refine(self.rows, child, worklist=[target])
            self._node(child, prefix + [v])

    def _pruned(self, v, explored, prefix):
        if not explored:
            return False
        fixing = [
            gamma
            for gamma in self.aut_gens
            if all(gamma[p] == p for p in prefix)
        ]
        if not fixing:
            return False
        orbit = {v}
        queue = [v]
        while queue:
            x = queue.pop()
            for gamma in fixing:
                y = gamma[x]
                if y not in orbit:
                    if y in explored:
                        return True
                    orbit.add(y)
                    queue.append(y)
        return any(u in orbit for u in explored)

    def _leaf(self, lab):
        if self.colors is None:
            color_key = ()
        else:
            color_key = tuple(self.colors[v] for v in lab)
        cert = _certificate(self.rows, lab, color_key)
        anchor = self.anchors.get(cert)
        if anchor is None:
            self.anchors[cert] = lab
        else:
            # anchor and lab put the same graph in the same position order,
            # so anchor[i] -> lab[i] is an automorphism
            gamma = [0] * self.n
            for a, b in zip(anchor, lab):
                gamma[a] = b
            perm = Permutation(gamma)
            # keep only generators that actually grow the group
            if not perm.is_identity() and perm not in self.found_group:
                self.aut_gens.append(tuple(gamma))
                self.found_group = PermGroup(
                    self.n, self.found_group.generators + (perm,)
                )
        if self.best_cert is None or cert > self.best_cert:
            self.best_cert = cert
            self.best_lab = lab


def automorphism_group(g, colors=None, node_budget=None):
    """Full (color-preserving) automorphism group of g."""
    if g.n == 0:
        return PermGroup(0, ())
    search = _Search(g, colors, node_budget)
    search.run()
    return search.found_group


def canonical_form(g, colors=None, node_budget=None):
    if g.n == 0:
        return CanonicalForm(Permutation(()), graph6_encode(g))
    search = _Search(g, colors, node_budget)
    search.run()
    lab = search.best_lab
    pos = [0] * g.n
    for i, v in enumerate(lab):
        pos[v] = i
    labeling = Permutation(pos)
    return CanonicalForm(labeling, graph6_encode(g.relabel(labeling)))


def are_isomorphic(g1, g2, node_budget=None):
    if g1.n != g2.n or sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return (
        canonical_form(g1, node_budget=node_budget).canonical_graph6
        == canonical_form(g2, node_budget=node_budget).canonical_graph6
    )


def is_vertex_transitive(g, group=None, node_budget=None):
    if group is None:
        group = automorphism_group(g, node_budget=node_budget)
    return group.orbit_count() == 1 if g.n else True


def is_edge_transitive(g, group=None, node_budget=None):
    edges = g.edges()
    if not edges:
        return True
    if group is None:
        group = automorphism_group(g, node_budget=node_budget)
    first = edges[0]
    seen = {frozenset(first)}
    queue = [first]
    while queue:
        u, v = queue.pop()
        for gen in group.generators:
            e = frozenset((gen(u), gen(v)))
            if e not in seen:
                seen.add(e)
                queue.append(tuple(e))
    return len(seen) == len(edges)


def is_arc_transitive(g, group=None, node_budget=None):
    """Vertex-transitive with a vertex stabilizer transitive on the neighbourhood."""
    if group is None:
        group = automorphism_group(g, node_budget=node_budget)
    if not is_vertex_transitive(g, group):
        return False
    if g.edge_count() == 0:
        return True
    v = 0
    stab = group.point_stabilizer(v)
    nbrs = g.neighbors(v)
    return set(stab.orbit(nbrs[0])) == set(nbrs)


def stabilizer_orbit_profile(g, v=0, group=None, node_budget=None):
    """Sorted orbit sizes of the stabilizer of v on the vertex set."""
    if group is None:
        group = automorphism_group(g, node_budget=node_budget)
    stab = group.point_stabilizer(v)
    return tuple(sorted(len(b) for b in stab.orbits().blocks))


def rank(g, group=None, node_budget=None):
    return len(stabilizer_orbit_profile(g, 0, group, node_budget))


def _distance_matrix(g):
    """All-pairs distances by BFS; unreachable pairs get g.n as sentinel."""
    n = g.n
    out = []
    for start in range(n):
        dist = [n] * n
        dist[start] = 0
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            dv = dist[v]
            for u in _bits(g.rows[v]):
                if dist[u] == n:
                    dist[u] = dv + 1
                    queue.append(u)
        out.append(dist)
    return out


AUT_FILTER_LIMIT = 10**5


def find_automorphism_with_cycle_type(
    g, ctype, node_budget=None, force_backtrack=False
):
    """A graph automorphism with exactly the given cycle type, or None.

    When the automorphism group is small enough to enumerate, its elements
    are filtered by cycle type.  Otherwise a backtracking search builds the
    cycles directly: each new cycle is anchored at the minimum vertex not
    yet placed and tried at every distinct remaining cycle length, longest
    first; every assignment is checked for distance-matrix consistency
    against all previous assignments (automorphisms preserve distances, and
    distance one is adjacency).  Either way a None is exhaustive.
    """
    n = g.n
    lengths = sorted(ctype, reverse=True)
    if sum(lengths) != n:
        raise ValueError(f"cycle type {ctype} does not sum to {n}")
    target = tuple(lengths)
    if not force_backtrack:
        group = automorphism_group(g, node_budget=node_budget)
        if group.order() <= AUT_FILTER_LIMIT:
            for images in group._iter_element_tuples(cap=None):
                p = Permutation(images)
                if p.cycle_type() == target:
                    return p
            return None
    budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    degs = g.degrees()
    dist = _distance_matrix(g)
    by_distance = [
        sorted(range(n), key=lambda w, u=u: (dist[u][w], w)) for u in range(n)
    ]
    from .graphs import basic_props

    bipartite = basic_props(g).bipartite

    remaining = {}
    for length in lengths:
        remaining[length] = remaining.get(length, 0) + 1

    image = [-1] * n  # image[u] = sigma(u)
    used_src = [False] * n
    used_tgt = [False] * n
    assigned = []  # (source, target) in assignment order
    placed = 0
    nodes = 0

    def consistent(u, w):
        if degs[u] != degs[w]:
            return False
        du, dw = dist[u], dist[w]
        for a, b in assigned:
            if du[a] != dw[b]:
                return False
        return True

    def assign(u, w):
        image[u] = w
        used_tgt[w] = True
        assigned.append((u, w))

    def unassign(u, w):
        image[u] = -1
        used_tgt[w] = False
        assigned.pop()

    def extend(length, cyc):
        nonlocal nodes, placed
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(budget)
        if len(cyc) == length:
            # close the cycle: last element maps back to the head
            u, w = cyc[-1], cyc[0]
            if not consistent(u, w):
                return None
            assign(u, w)
            result = next_cycle()
            if result is not None:
                return result
            unassign(u, w)
            return None
        u = cyc[-1]
        # try nearby images first: witnesses in sparse graphs tend to step
        # along short distances, and the order does not affect exhaustiveness
        for w in by_distance[u]:
            if used_tgt[w] or used_src[w]:
                continue
            # in a bipartite graph, consecutive cycle steps all cross sides
            # or all stay; an odd cycle with crossing steps cannot close
            if (
                bipartite
                and length % 2
                and len(cyc) == 1
                and dist[u][w] % 2
                and dist[u][w] < n
            ):
                continue
            if not consistent(u, w):
                continue
            assign(u, w)
            used_src[w] = True
            placed += 1
            cyc.append(w)
            result = extend(length, cyc)
            if result is not None:
                return result
            cyc.pop()
            placed -= 1
            used_src[w] = False
            unassign(u, w)
        return None

    def next_cycle():
        nonlocal placed
        if placed == n:
            return Permutation(image)
        head = next(v for v in range(n) if not used_src[v])
        for length in sorted(remaining, reverse=True):
            if remaining[length] == 0:
                continue
            remaining[length] -= 1
            used_src[head] = True
            placed += 1
            if length == 1:
                if not used_tgt[head] and consistent(head, head):
                    assign(head, head)
                    result = next_cycle()
                    if result is not None:
                        return result
                    unassign(head, head)
            else:
                result = extend(length, [head])
                if result is not None:
                    return result
            placed -= 1
            used_src[head] = False
            remaining[length] += 1
        return None

    return next_cycle()
