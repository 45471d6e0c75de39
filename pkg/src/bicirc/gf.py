"""Finite field arithmetic tables and projective point/hyperplane incidence.

Fields GF(p^k) are realized as polynomials over GF(p) modulo the
lexicographically least monic irreducible polynomial of degree k
(coefficients compared low-degree-first).  Elements are indexed 0..q-1 by
the integer whose base-p digits are the polynomial coefficients, so 0 and 1
are the additive and multiplicative identities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError

MAX_FIELD_SIZE = 1024
MAX_PROJECTIVE_POINTS = 10**4


def factor_prime_power(q):
    """Return (p, k) with q == p**k, or raise."""
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ParameterError(f"{q} is not a prime power")
    return p, k


def is_prime(n):
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class FieldTable:
    """GF(q) with full addition and multiplication tables over 0..q-1."""

    q: int
    p: int
    k: int
    add: tuple
    mul: tuple
    modulus: tuple  # coefficients of the reducing polynomial, low degree first

    def neg(self, a):
        return next(b for b in range(self.q) if self.add[a][b] == 0)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return next(b for b in range(self.q) if self.mul[a][b] == 1)

    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul[r][a]
        return r

    def multiplicative_order(self, a):
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        r, n = a, 1
        while r != 1:
            r = self.mul[r][a]
            n += 1
        return n

    def primitive_element(self):
        return next(
            a for a in range(1, self.q) if self.multiplicative_order(a) == self.q - 1
        )


def _poly_mul_mod(a, b, modulus, p):
    """Product of coefficient lists a, b over GF(p), reduced by monic modulus."""
    deg = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(deg):
                prod[i - deg + j] = (prod[i - deg + j] - c * modulus[j]) % p
    return prod[:deg] + [0] * (deg - len(prod))


def _int_to_poly(x, p, k):
    coeffs = []
    for _ in range(k):
        coeffs.append(x % p)
        x //= p
    return coeffs


def _poly_to_int(coeffs, p):
    x = 0
    for c in reversed(coeffs):
        x = x * p + c
    return x


def _least_irreducible(p, k):
    """Lexicographically least monic irreducible of degree k over GF(p),
    low-degree coefficients varying fastest."""
    for lo in range(p**k):
        coeffs = _int_to_poly(lo, p, k) + [1]
        # reducible iff it has a root (k <= 3) or a low-degree factor
        if _poly_is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


def _poly_is_irreducible(coeffs, p):
    k = len(coeffs) - 1
    if coeffs[0] == 0:
        return False
    # trial division by all monic polynomials of degree <= k//2
    for d in range(1, k // 2 + 1):
        for lo in range(p**d):
            div = _int_to_poly(lo, p, d) + [1]
            if _poly_divides(div, coeffs, p):
                return False
    return True


def _poly_divides(div, poly, p):
    rem = list(poly)
    dd = len(div) - 1
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            for j in range(dd + 1):
                rem[i - dd + j] = (rem[i - dd + j] - c * div[j]) % p
    return all(c == 0 for c in rem)


def make_field(q):
    """Addition and multiplication tables for GF(q)."""
    if q > MAX_FIELD_SIZE:
        raise ParameterError(f"field size {q} exceeds {MAX_FIELD_SIZE}")
    p, k = factor_prime_power(q)
    if k == 1:
        add = tuple(tuple((a + b) % p for b in range(p)) for a in range(p))
        mul = tuple(tuple((a * b) % p for b in range(p)) for a in range(p))
        return FieldTable(q, p, 1, add, mul, (0, 1))
    modulus = _least_irreducible(p, k)
    polys = [_int_to_poly(x, p, k) for x in range(q)]
    add = tuple(
        tuple(_poly_to_int([(x + y) % p for x, y in zip(a, b)], p) for b in polys)
        for a in polys
    )
    mul = tuple(
        tuple(_poly_to_int(_poly_mul_mod(a, b, modulus, p), p) for b in polys)
        for a in polys
    )
    return FieldTable(q, p, k, add, mul, modulus)


@dataclass(frozen=True)
class ProjectiveSpace:
    """1-spaces and hyperplanes of GF(q)^d with the incidence predicate."""

    d: int
    field: FieldTable
    points: tuple  # normalized coordinate vectors, first nonzero entry 1
    hyperplanes: tuple  # normalized dual vectors

    def incident(self, point_index, hyperplane_index):
        f = self.field
        v = self.points[point_index]
        h = self.hyperplanes[hyperplane_index]
        acc = 0
        for a, b in zip(v, h):
            acc = f.add[acc][f.mul[a][b]]
        return acc == 0

    @property
    def num_points(self):
        return len(self.points)


def _normalized_vectors(field, d):
    """One representative per 1-space: first nonzero coordinate equals 1."""
    q = field.q
    out = []
    for lead in range(d):
        # vectors (0,...,0,1,*,...,*) with the 1 in position `lead`
        tail = d - lead - 1
        for x in range(q**tail):
            vec = [0] * lead + [1] + _int_to_poly(x, q, tail)
            out.append(tuple(vec))
    return tuple(out)


def projective_incidence(d, q):
    """Points, hyperplanes and incidence for PG(d-1, q)."""
    if d < 3:
        raise ParameterError(f"need dimension d >= 3, got {d}")
    p, k = factor_prime_power(q)
    count = (q**d - 1) // (q - 1)
    if count > MAX_PROJECTIVE_POINTS:
        raise ParameterError(f"{count} projective points exceed {MAX_PROJECTIVE_POINTS}")
    field = make_field(q)
    vectors = _normalized_vectors(field, d)
    return ProjectiveSpace(d, field, vectors, vectors)
