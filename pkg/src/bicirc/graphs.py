"""Simple undirected graphs with bit-row adjacency, graph operators, graph6.

Adjacency rows are Python ints used as bitsets, so the edge probe
``(rows[u] >> v) & 1`` and row intersections are word-level operations.
Graphs are immutable; operators return new graphs.

Vertex order conventions for the derived operators:

* ``lexicographic_product``: pair (u1, u2) becomes index ``u1 * n2 + u2``.
* ``standard_double_cover``: (x, first copy) is ``x``, (x, second) is ``n + x``.
* ``quotient_graph``: blocks are sorted by their minimum original vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError
from .perm import Partition, Permutation

GIRTH_CAP = 16


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple
    labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("row count must equal vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in _bits(row):
                if not (self.rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at {{{u}, {v}}}")

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), labels)

    def has_edge(self, u, v):
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v):
        return self.rows[v].bit_count()

    def neighbors(self, v):
        return list(_bits(self.rows[v]))

    def edges(self):
        return [
            (u, v) for u in range(self.n) for v in _bits(self.rows[u]) if u < v
        ]

    def edge_count(self):
        return sum(self.degree(v) for v in range(self.n)) // 2

    def degrees(self):
        return [self.degree(v) for v in range(self.n)]

    def relabel(self, perm):
        """Image graph: vertex v becomes perm(v)."""
        images = perm.images
        rows = [0] * self.n
        for v in range(self.n):
            acc = 0
            for u in _bits(self.rows[v]):
                acc |= 1 << images[u]
            rows[images[v]] = acc
        return Graph(self.n, tuple(rows))

    def is_automorphism(self, perm):
        if perm.degree != self.n:
            return False
        images = perm.images
        for v in range(self.n):
            mapped = 0
            for u in _bits(self.rows[v]):
                mapped |= 1 << images[u]
            if mapped != self.rows[images[v]]:
                return False
        return True


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def complement(g):
    full = (1 << g.n) - 1
    rows = tuple((full ^ g.rows[v]) & ~(1 << v) for v in range(g.n))
    return Graph(g.n, rows)


def lexicographic_product(g1, g2):
    """Vertices are pairs; (u1,u2) ~ (v1,v2) iff u1 ~ v1, or u1 == v1 and u2 ~ v2."""
    n1, n2 = g1.n, g2.n
    n = n1 * n2
    rows = [0] * n
    labels = []
    for u1 in range(n1):
        for u2 in range(n2):
            labels.append((u1, u2))
            acc = 0
            for v1 in _bits(g1.rows[u1]):
                acc |= ((1 << n2) - 1) << (v1 * n2)
            for v2 in _bits(g2.rows[u2]):
                acc |= 1 << (u1 * n2 + v2)
            rows[u1 * n2 + u2] = acc
    return Graph(n, tuple(rows), tuple(labels))


def empty_graph(n):
    return Graph(n, (0,) * n)


def lexicographic_minus(g1, b):
    """g1[empty graph on b] minus b disjoint copies of g1.

    The deleted copies are the constant-second-coordinate ones, so
    (u1,i) ~ (v1,j) iff u1 ~ v1 and i != j.
    """
    prod = lexicographic_product(g1, empty_graph(b))
    rows = list(prod.rows)
    for u1 in range(g1.n):
        for v1 in _bits(g1.rows[u1]):
            for i in range(b):
                rows[u1 * b + i] &= ~(1 << (v1 * b + i))
    return Graph(prod.n, tuple(rows), prod.labels)


def standard_double_cover(g):
    """Bipartite double: (x, 1) ~ (y, 2) iff x ~ y.  Connected iff g is
    connected and not bipartite."""
    n = g.n
    rows = [0] * (2 * n)
    for x in range(n):
        rows[x] = g.rows[x] << n
        rows[n + x] = g.rows[x]
    labels = tuple((x, 1) for x in range(n)) + tuple((x, 2) for x in range(n))
    return Graph(2 * n, tuple(rows), labels)


@dataclass(frozen=True)
class CoverReport:
    is_r_cover: bool
    r: int | None
    witness: tuple = ()

    def to_json(self):
        return json.dumps(
            {"is_r_cover": self.is_r_cover, "r": self.r, "witness": list(self.witness)}
        )


def quotient_graph(g, partition):
    """Quotient by a partition, plus the multiplicity analysis.

    Blocks are adjacent when any cross edge exists.  The report says r when
    every vertex of every block sees exactly r neighbours in each adjacent
    block; otherwise it carries one violating (vertex, block) pair.
    """
    if partition.n != g.n:
        raise ValueError("partition does not cover the vertex set")
    blocks = partition.blocks
    t = len(blocks)
    masks = [0] * t
    for i, blk in enumerate(blocks):
        for v in blk:
            masks[i] |= 1 << v
    qrows = [0] * t
    for i in range(t):
        for j in range(i + 1, t):
            if any(g.rows[v] & masks[j] for v in blocks[i]):
                qrows[i] |= 1 << j
                qrows[j] |= 1 << i
    quotient = Graph(t, tuple(qrows))

    r = None
    for i in range(t):
        for j in _bits(qrows[i]):
            for v in blocks[i]:
                count = (g.rows[v] & masks[j]).bit_count()
                if r is None:
                    r = count
                if count != r:
                    return quotient, CoverReport(False, None, (v, j, count, r))
    return quotient, CoverReport(True, r)


def bipartite_complement(g, halves=None):
    """Complement within the complete bipartite graph on the given halves."""
    if halves is None:
        props = basic_props(g)
        if not props.bipartite:
            raise ValueError("graph is not bipartite and no halves were given")
        halves = props.halves
    mask = [0, 0]
    for side in (0, 1):
        for v in halves[side]:
            mask[side] |= 1 << v
    side_of = {}
    for side in (0, 1):
        for v in halves[side]:
            side_of[v] = side
    rows = []
    for v in range(g.n):
        other = mask[1 - side_of[v]]
        rows.append((g.rows[v] ^ other) & other)
    return Graph(g.n, tuple(rows))


@dataclass(frozen=True)
class GraphProps:
    connected: bool
    bipartite: bool
    halves: tuple | None
    regular: bool
    valency: int | None
    girth: int | None  # None means girth > GIRTH_CAP (or acyclic)

    def girth_text(self):
        return str(self.girth) if self.girth is not None else f">{GIRTH_CAP}"


def basic_props(g):
    n = g.n
    # BFS for connectivity and 2-coloring
    color = [-1] * n
    components = 0
    bipartite = True
    for start in range(n):
        if color[start] != -1:
            continue
        components += 1
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in _bits(g.rows[v]):
                if color[u] == -1:
                    color[u] = color[v] ^ 1
                    queue.append(u)
                elif color[u] == color[v]:
                    bipartite = False
    connected = components == 1 and n >= 1
    halves = None
    if bipartite and connected:
        halves = (
            tuple(v for v in range(n) if color[v] == 0),
            tuple(v for v in range(n) if color[v] == 1),
        )
    degs = g.degrees()
    regular = len(set(degs)) <= 1
    valency = degs[0] if regular and n else None
    return GraphProps(connected, bipartite, halves, regular, valency, _girth(g))


def _girth(g):
    """Shortest cycle length, None when none exists within the cap."""
    best = None
    for start in range(g.n):
        dist = {start: 0}
        parent = {start: -1}
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            if best is not None and 2 * dist[v] >= best:
                break
            for u in _bits(g.rows[v]):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    cycle = dist[v] + dist[u] + 1
                    if best is None or cycle < best:
                        best = cycle
    if best is not None and best <= GIRTH_CAP:
        return best
    return None


# -- graph6 ----------------------------------------------------------------------


def graph6_encode(g):
    """Standard graph6: size header then upper-triangle bits, column-major."""
    n = g.n
    if n > 2**18:
        raise ValueError("graph6 encoding limited to n <= 2^18 here")
    out = bytearray()
    if n <= 62:
        out.append(n + 63)
    elif n <= 258047:
        out.append(126)
        out.append(((n >> 12) & 63) + 63)
        out.append(((n >> 6) & 63) + 63)
        out.append((n & 63) + 63)
    else:
        out.append(126)
        out.append(126)
        for shift in (30, 24, 18, 12, 6, 0):
            out.append(((n >> shift) & 63) + 63)
    bits = []
    for j in range(1, n):
        col = g.rows[j]
        for i in range(j):
            bits.append((col >> i) & 1)
    while len(bits) % 6:
        bits.append(0)
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return out.decode("ascii")


def graph6_decode(text):
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<") :]
    raw = [ord(c) - 63 for c in data]
    if any(b < 0 or b > 63 for b in raw):
        raise ParseError(f"invalid graph6 byte in {text!r}")
    if not raw:
        raise ParseError("empty graph6 string")
    if raw[0] != 63:
        n, pos = raw[0], 1
    elif len(raw) >= 2 and raw[1] != 63:
        if len(raw) < 4:
            raise ParseError("truncated graph6 header")
        n = (raw[1] << 12) | (raw[2] << 6) | raw[3]
        pos = 4
    else:
        if len(raw) < 8:
            raise ParseError("truncated graph6 header")
        n = 0
        for b in raw[2:8]:
            n = (n << 6) | b
        pos = 8
    need = (n * (n - 1) // 2 + 5) // 6
    body = raw[pos:]
    if len(body) != need:
        raise ParseError(f"graph6 body length {len(body)}, expected {need}")
    bits = []
    for b in body:
        for shift in (5, 4, 3, 2, 1, 0):
            bits.append((b >> shift) & 1)
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Graph(n, tuple(rows))


def identity_partition(n):
    return Partition.from_blocks([[v] for v in range(n)], n)


def orbit_partition_of(perm):
    """Partition of {0..n-1} into the cycles of a permutation."""
    return Partition.from_blocks(perm.cycles(include_fixed=True), perm.degree)


def random_relabeling(g, rng):
    images = list(range(g.n))
    rng.shuffle(images)
    return g.relabel(Permutation(images))
