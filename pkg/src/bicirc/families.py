"""Deterministic generators for the named graph families.

Vertex numbering conventions, fixed so outputs are bit-reproducible:

* complete multipartite K_{m[n]}: part i occupies vertices i*n .. i*n+n-1.
* K_{n,n} minus a perfect matching: a_i = i, b_i = n + i, a_i ~ b_j iff i != j.
* Hamming H(d, r): vertex = integer with base-r digits (x_1 .. x_d),
  least significant digit first.
* folded d-cube: vertices are the bitmasks of {0,1}^(d-1); adjacent when the
  XOR has weight 1 or weight d-1.  The folded 5-cube is the 16-vertex
  5-regular triangle-free graph also sold under the name Clebsch graph.
* two-orbit constructions over Z_p or Z_n (G(2p, r), G(2, p, r), BC frames,
  point/hyperplane incidence, dihedral Cayley): first orbit is 0..m-1,
  second is m..2m-1.

Generators whose defining rotation is part of the construction ship it as a
verified Witness.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParameterError, ParseError
from .gf import is_prime, projective_incidence
from .graphs import Graph, complement
from .perm import Permutation


@dataclass(frozen=True)
class Witness:
    """A semiregular or regular automorphism shipped with a generated graph."""

    perm: Permutation
    cycle_type: tuple

    @classmethod
    def checked(cls, graph, perm, expected_type):
        expected = tuple(sorted(expected_type, reverse=True))
        if perm.cycle_type() != expected:
            raise AssertionError(
                f"witness has cycle type {perm.cycle_type()}, wanted {expected}"
            )
        if not graph.is_automorphism(perm):
            raise AssertionError("witness is not an automorphism")
        return cls(perm, expected)


def _rotation(n, offset=0):
    """(offset offset+1 ... offset+n-1) inside a larger degree is built by caller."""
    return [(offset + (i + 1) % n) for i in range(n)]


# -- complete multipartite, matchings ------------------------------------------


def gen_complete_multipartite(m, n):
    """K_{m[n]}: m parts of size n, edges exactly between distinct parts."""
    if m < 2 or n < 1:
        raise ParameterError(f"K_m[n] needs m >= 2, n >= 1, got ({m}, {n})")
    total = m * n
    rows = []
    full = (1 << total) - 1
    for v in range(total):
        part = v // n
        part_mask = ((1 << n) - 1) << (part * n)
        rows.append(full & ~part_mask)
    return Graph(total, tuple(rows))


def gen_complete(n):
    return gen_complete_multipartite(n, 1)


def gen_knn(n):
    return gen_complete_multipartite(2, n)


def gen_knn_minus_matching(n):
    """K_{n,n} minus the perfect matching a_i b_i."""
    if n < 2:
        raise ParameterError(f"K_nn - nK2 needs n >= 2, got {n}")
    return Graph.from_edges(
        2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j]
    )


# -- Hamming, folded cubes, sporadics --------------------------------------------


def gen_hamming(d, r):
    if d < 1 or r < 2:
        raise ParameterError(f"H(d, r) needs d >= 1, r >= 2, got ({d}, {r})")
    total = r**d
    edges = []
    for v in range(total):
        digits = []
        x = v
        for _ in range(d):
            digits.append(x % r)
            x //= r
        for pos in range(d):
            base = r**pos
            for y in range(digits[pos] + 1, r):
                edges.append((v, v + (y - digits[pos]) * base))
    return Graph.from_edges(total, edges)


def gen_folded_cube(d):
    if d < 2:
        raise ParameterError(f"folded d-cube needs d >= 2, got {d}")
    n = 1 << (d - 1)
    full = n - 1
    edges = []
    for v in range(n):
        for i in range(d - 1):
            u = v ^ (1 << i)
            if v < u:
                edges.append((v, u))
        u = v ^ full
        if v < u:
            edges.append((v, u))
    return Graph.from_edges(n, edges)


def gen_clebsch():
    """The 16-vertex 5-regular strongly regular graph (16, 5, 0, 2)."""
    return gen_folded_cube(5)


def gen_petersen():
    """Kneser model: vertices are the 2-subsets of a 5-set, edges on disjointness."""
    pairs = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    edges = []
    for i, p in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            q = pairs[j]
            if not set(p) & set(q):
                edges.append((i, j))
    return Graph.from_edges(10, edges, labels=tuple(pairs))


# -- Cayley graphs over Z_n and the two-orbit constructions -----------------------


def gen_cay_cyclic(n, connection):
    """Circulant Cay(Z_n, S) with witness x -> x + 1."""
    s = sorted(set(x % n for x in connection))
    if any(x == 0 for x in s):
        raise ParameterError("connection set must not contain 0")
    if any((n - x) % n not in s for x in s):
        raise ParameterError(f"connection set {s} is not symmetric mod {n}")
    edges = [(v, (v + x) % n) for v in range(n) for x in s if v < (v + x) % n]
    g = Graph.from_edges(n, edges)
    witness = Witness.checked(g, Permutation(_rotation(n)), (n,))
    return g, witness


def multiplicative_subgroup(p, r):
    """The unique subgroup of Z_p^* of order r, via the least primitive root."""
    if not is_prime(p) or p < 3:
        raise ParameterError(f"{p} is not an odd prime")
    if r < 1 or (p - 1) % r:
        raise ParameterError(f"{r} does not divide {p} - 1")
    g = next(
        a
        for a in range(2, p)
        if _multiplicative_order(a, p) == p - 1
    )
    step = pow(g, (p - 1) // r, p)
    out = set()
    x = 1
    for _ in range(r):
        out.add(x)
        x = x * step % p
    return sorted(out)


def _multiplicative_order(a, p):
    x, k = a % p, 1
    while x != 1:
        x = x * a % p
        k += 1
    return k


def gen_cay_pe(p, e):
    """Cay(p, e): circulant on Z_p whose connection set is the order-e
    subgroup of Z_p^*; defined for even e dividing p - 1."""
    if e < 2 or e % 2:
        raise ParameterError(f"Cay(p, e) needs even e >= 2, got {e}")
    subgroup = multiplicative_subgroup(p, e)
    return gen_cay_cyclic(p, subgroup)


def gen_g2p(p, r):
    """G(2p, r): bipartite, x ~ y' iff y - x lies in the order-r subgroup of
    Z_p^*.  Vertices 0..p-1 unprimed, p..2p-1 primed.  Witness: i -> i+1 on
    both copies (two p-cycles)."""
    if r <= 1:
        raise ParameterError(f"G(2p, r) needs r > 1, got {r}")
    sub = multiplicative_subgroup(p, r)
    edges = [(x, p + (x + s) % p) for x in range(p) for s in sub]
    g = Graph.from_edges(2 * p, edges)
    witness = Witness.checked(
        g, Permutation(_rotation(p) + _rotation(p, offset=p)), (p, p)
    )
    return g, witness


def gen_g2pr(p, r):
    """G(2, p, r), r even: both copies carry the circulant on the order-r
    subgroup and all four cross pairs are joined; a 2-cover of Cay(p, r)."""
    if r % 2:
        raise ParameterError(f"G(2, p, r) needs even r, got {r}")
    sub = multiplicative_subgroup(p, r)
    edges = set()
    for x in range(p):
        for s in sub:
            y = (x + s) % p
            edges.add(tuple(sorted((x, y))))
            edges.add(tuple(sorted((p + x, p + y))))
            edges.add((x, p + y))
    return Graph.from_edges(2 * p, sorted(edges))


def gen_bpg(d, q, primed=False):
    """Point/hyperplane incidence graph of PG(d-1, q); primed takes the
    bipartite complement (adjacent iff the intersection is zero)."""
    ps = projective_incidence(d, q)
    m = ps.num_points
    edges = []
    for i in range(m):
        for j in range(m):
            if ps.incident(i, j) != primed:
                edges.append((i, m + j))
    return Graph.from_edges(2 * m, edges)


def singer_witness(d, q):
    """A two-orbit cyclic automorphism of gen_bpg(d, q): multiplication by a
    generator of GF(q^d)^* acts as one full cycle on points and one on
    hyperplanes."""
    ps = projective_incidence(d, q)
    field = ps.field
    m = ps.num_points

    # model GF(q^d) as polynomials over GF(q) modulo an irreducible of degree d
    modulus = _irreducible_over_field(field, d)

    def mul_vec(vec, other):
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(vec):
            if a:
                for j, b in enumerate(other):
                    prod[i + j] = field.add[prod[i + j]][field.mul[a][b]]
        for i in range(len(prod) - 1, d - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(d):
                    term = field.mul[c][modulus[j]]
                    prod[i - d + j] = field.add[prod[i - d + j]][field.neg(term)]
        return tuple(prod[:d])

    # a multiplicative generator of the extension field
    target = field.q**d - 1
    gamma = next(
        v
        for v in _nonzero_vectors(field, d)
        if _vector_order(v, mul_vec, d) == target
    )

    index = {v: i for i, v in enumerate(ps.points)}

    def normalize(vec):
        lead = next(c for c in vec if c)
        inv = field.inv(lead)
        return tuple(field.mul[inv][c] for c in vec)

    images = [0] * (2 * m)
    # multiplication matrix columns: gamma * e_i
    cols = [mul_vec(tuple(1 if j == i else 0 for j in range(d)), gamma) for i in range(d)]
    inv_cols = _invert_matrix(cols, field)
    for i, v in enumerate(ps.points):
        w = _matvec(cols, v, field)
        images[i] = index[normalize(w)]
        # hyperplane with dual vector v maps to dual vector (M^-1)^T v
        h = _matvec_transpose(inv_cols, v, field)
        images[m + i] = m + index[normalize(h)]
    return Permutation(images)


def _irreducible_over_field(field, d):
    """Least monic irreducible of degree d over the field, by scanning for
    polynomials with no roots and no low-degree monic divisors."""
    q = field.q

    def poly_from_int(x, length):
        out = []
        for _ in range(length):
            out.append(x % q)
            x //= q
        return out

    def divides(div, poly):
        rem = list(poly)
        dd = len(div) - 1
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                rem[i] = 0
                for j in range(dd):
                    term = field.mul[c][div[j]]
                    rem[i - dd + j] = field.add[rem[i - dd + j]][field.neg(term)]
        return all(c == 0 for c in rem)

    for lo in range(q**d):
        coeffs = poly_from_int(lo, d) + [1]
        if coeffs[0] == 0:
            continue
        ok = True
        for deg in range(1, d // 2 + 1):
            for sub in range(q**deg):
                div = poly_from_int(sub, deg) + [1]
                if divides(div, coeffs):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


def _nonzero_vectors(field, d):
    q = field.q
    for x in range(1, q**d):
        vec = []
        y = x
        for _ in range(d):
            vec.append(y % q)
            y //= q
        yield tuple(vec)


def _vector_order(vec, mul_vec, d):
    one = tuple(1 if i == 0 else 0 for i in range(d))
    x, k = vec, 1
    while x != one:
        x = mul_vec(x, vec)
        k += 1
        if k > 10**6:
            raise AssertionError("runaway order computation")
    return k


def _matvec(cols, v, field):
    out = [0] * len(cols)
    for i, c in enumerate(v):
        if c:
            col = cols[i]
            for j in range(len(cols)):
                out[j] = field.add[out[j]][field.mul[c][col[j]]]
    return tuple(out)


def _matvec_transpose(cols, v, field):
    out = []
    for col in cols:
        acc = 0
        for a, b in zip(col, v):
            acc = field.add[acc][field.mul[a][b]]
        out.append(acc)
    return tuple(out)


def _invert_matrix(cols, field):
    d = len(cols)
    # Gauss-Jordan on [M | I] with M given by columns
    m = [[cols[j][i] for j in range(d)] + [1 if k == i else 0 for k in range(d)]
         for i in range(d)]
    for col in range(d):
        pivot = next(r for r in range(col, d) if m[r][col])
        m[col], m[pivot] = m[pivot], m[col]
        inv = field.inv(m[col][col])
        m[col] = [field.mul[inv][x] for x in m[col]]
        for r in range(d):
            if r != col and m[r][col]:
                c = m[r][col]
                m[r] = [
                    field.add[x][field.neg(field.mul[c][y])]
                    for x, y in zip(m[r], m[col])
                ]
    inv_cols = [tuple(m[i][d + j] for i in range(d)) for j in range(d)]
    return inv_cols


QUADRATIC_RESIDUES_11 = (1, 3, 4, 5, 9)


def gen_bh11prime():
    """22-vertex bipartite graph: n in Z_11 adjacent to the translate R + i of
    the quadratic residues exactly when n is not in it."""
    r = set(QUADRATIC_RESIDUES_11)
    edges = []
    for n in range(11):
        for i in range(11):
            if (n - i) % 11 not in r:
                edges.append((n, 11 + i))
    return Graph.from_edges(22, edges)


# -- generalized Petersen graphs and bicirculant frames -----------------------------


def gen_gp(n, r):
    """GP(n, r): outer cycle u_i ~ u_{i+1}, inner edges v_i ~ v_{i+r}, spokes
    u_i ~ v_i.  Witness: simultaneous rotation (two n-cycles)."""
    if n < 3 or r < 1 or 2 * r >= n:
        raise ParameterError(f"GP(n, r) needs n >= 3 and 1 <= r < n/2, got ({n}, {r})")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((n + i, n + (i + r) % n))
        edges.append((i, n + i))
    g = Graph.from_edges(2 * n, edges)
    witness = Witness.checked(
        g, Permutation(_rotation(n) + _rotation(n, offset=n)), (n, n)
    )
    return g, witness


def gen_bc(n, left, mids, right):
    """BC_n[L, M, R]: left edges h ~ h+l, right edges h' ~ (h+r)', spokes
    h ~ (h+m)'.  Witness: h -> h+1 on both halves."""
    left = sorted(set(x % n for x in left))
    mids = sorted(set(x % n for x in mids))
    right = sorted(set(x % n for x in right))
    for name, s in (("L", left), ("R", right)):
        if 0 in s:
            raise ParameterError(f"{name} must not contain 0")
        if any((n - x) % n not in s for x in s):
            raise ParameterError(f"{name} = {s} is not symmetric mod {n}")
    edges = set()
    for h in range(n):
        for x in left:
            edges.add(tuple(sorted((h, (h + x) % n))))
        for x in right:
            edges.add(tuple(sorted((n + h, n + (h + x) % n))))
        for x in mids:
            edges.add((h, n + (h + x) % n))
    g = Graph.from_edges(2 * n, sorted(edges))
    witness = Witness.checked(
        g, Permutation(_rotation(n) + _rotation(n, offset=n)), (n, n)
    )
    return g, witness


def gen_dihedral_cayley(n, exponents):
    """Cayley graph of the dihedral group of order 2n whose connection set is
    the reflections indexed by the exponents: a^j ~ b a^{j+s}.  Vertices
    a^j = j and b a^j = n + j.  Witness: right translation by a."""
    s = sorted(set(x % n for x in exponents))
    if not s:
        raise ParameterError("connection set must be nonempty")
    edges = [(j, n + (j + x) % n) for j in range(n) for x in s]
    g = Graph.from_edges(2 * n, edges)
    witness = Witness.checked(
        g, Permutation(_rotation(n) + _rotation(n, offset=n)), (n, n)
    )
    return g, witness


def gamma_nk_valid_r(n, k):
    """All units r mod n with 1 + r + ... + r^(k-1) divisible by n."""
    out = []
    for r in range(1, n):
        if _gcd(r, n) != 1:
            continue
        acc, power = 0, 1
        for _ in range(k):
            acc = (acc + power) % n
            power = power * r % n
        if acc == 0:
            out.append(r)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def gen_gamma_nk(n, k, r):
    """Dihedral Cayley graph on exponents 0, 1, 1+r, ..., 1+r+...+r^(k-2);
    the geometric-sum congruence for r must hold mod n."""
    if k not in (3, 5):
        raise ParameterError(f"only valencies 3 and 5 are defined, got k = {k}")
    if n < 11:
        raise ParameterError(f"needs n >= 11, got {n}")
    if r not in gamma_nk_valid_r(n, k):
        raise ParameterError(f"r = {r} fails the congruence for (n, k) = ({n}, {k})")
    exps = [0]
    acc, power = 0, 1
    for _ in range(k - 1):
        acc = (acc + power) % n
        power = power * r % n
        exps.append(acc)
    return gen_dihedral_cayley(n, exps)


# -- textual family specs -----------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """Parsed family name plus parameters; build() produces the graph."""

    kind: str
    args: tuple

    def build(self):
        """Return (graph, witness or None)."""
        builder = _BUILDERS[self.kind]
        return builder(*self.args)

    def text(self):
        kind = self.kind
        if kind == "Complement":
            return f"Complement({self.args[0].text()})"
        if not self.args:
            return kind
        parts = []
        for a in self.args:
            if isinstance(a, (list, tuple)):
                parts.append("[" + ",".join(str(x) for x in a) + "]")
            else:
                parts.append(str(a))
        if kind == "BC":
            return f"BC({self.args[0]};" + ";".join(parts[1:]) + ")"
        if kind in ("CayCyc", "CayDih"):
            return f"{kind}({self.args[0]};" + ";".join(parts[1:]) + ")"
        return f"{kind}(" + ",".join(parts) + ")"


def _wrap_plain(fn):
    return lambda *args: (fn(*args), None)


def _wrap_witness(fn):
    return lambda *args: fn(*args)


_BUILDERS = {
    "K": _wrap_plain(gen_complete),
    "Knn": _wrap_plain(gen_knn),
    "Kmulti": _wrap_plain(gen_complete_multipartite),
    "KnnMinus": _wrap_plain(gen_knn_minus_matching),
    "H": _wrap_plain(gen_hamming),
    "FoldedCube": _wrap_plain(gen_folded_cube),
    "Clebsch": _wrap_plain(gen_clebsch),
    "Petersen": _wrap_plain(gen_petersen),
    "CayCyc": _wrap_witness(gen_cay_cyclic),
    "CayPE": _wrap_witness(gen_cay_pe),
    "G2p": _wrap_witness(gen_g2p),
    "G2pr": _wrap_plain(gen_g2pr),
    "BPG": _wrap_plain(gen_bpg),
    "BPGprime": _wrap_plain(lambda d, q: gen_bpg(d, q, primed=True)),
    "BH11prime": _wrap_plain(gen_bh11prime),
    "GP": _wrap_witness(gen_gp),
    "BC": _wrap_witness(gen_bc),
    "CayDih": _wrap_witness(gen_dihedral_cayley),
    "Gamma": _wrap_witness(gen_gamma_nk),
    "Cycle": _wrap_witness(lambda n: gen_cay_cyclic(n, [1, n - 1])),
    "Complement": None,  # handled by parse_spec
}

_LIST_ARG_KINDS = {"CayCyc", "CayDih", "BC"}
_NAME_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*(?:\((.*)\))?\s*$", re.DOTALL)


def _parse_int_list(text):
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in re.split(r"[,\s]+", text))
    except ValueError as exc:
        raise ParseError(f"bad integer list {text!r}") from exc


def parse_spec(text):
    """Parse a family spec like "GP(24,5)", "BC(6;[1,5];[0,1,5];[2,4])",
    "BC(12;;0,1,2,4,9;)" or "Complement(Petersen)"."""
    m = _NAME_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse family spec {text!r}")
    name, body = m.group(1), m.group(2)
    canonical = {k.lower(): k for k in _BUILDERS}
    kind = canonical.get(name.lower())
    if kind is None:
        raise ParseError(f"unknown family {name!r}")
    if kind == "Complement":
        if body is None:
            raise ParseError("Complement needs an inner spec")
        inner = parse_spec(body)
        return FamilySpec("Complement", (inner,))
    if body is None or not body.strip():
        return FamilySpec(kind, ())
    if kind in _LIST_ARG_KINDS:
        slots = body.split(";")
        head = int(slots[0])
        lists = tuple(_parse_int_list(s) for s in slots[1:])
        if kind == "BC" and len(lists) != 3:
            raise ParseError(f"BC needs n and three sets, got {text!r}")
        if kind in ("CayCyc", "CayDih") and len(lists) != 1:
            raise ParseError(f"{kind} needs n and one set, got {text!r}")
        return FamilySpec(kind, (head,) + lists)
    try:
        args = tuple(int(t) for t in body.split(","))
    except ValueError as exc:
        raise ParseError(f"bad arguments in {text!r}") from exc
    return FamilySpec(kind, args)


def build_spec(text_or_spec):
    """Parse if needed, build, and return (graph, witness or None)."""
    spec = (
        text_or_spec
        if isinstance(text_or_spec, FamilySpec)
        else parse_spec(text_or_spec)
    )
    if spec.kind == "Complement":
        inner_graph, _ = build_spec(spec.args[0])
        return complement(inner_graph), None
    return spec.build()
