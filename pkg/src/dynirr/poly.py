"""Monic quadratics (X - b)^2 + c, dense polynomials and their composition.

A composition chain is a sequence of quadratics listed outermost first:
``[f1, f2, f3]`` stands for f1(f2(f3(X))).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ChainTooLong, ElementFromWrongField, MixedFields
from .ff import FieldCtx, FieldElem

DEFAULT_CHAIN_CAP = 12


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class _Ring:
    """Coefficient arithmetic used by the dense polynomial kernels.

    Prime fields work on plain ints; extension fields on coefficient tuples.
    """

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        p = ctx.p
        if ctx.d == 1:
            self.zero, self.one = 0, 1
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.inv = lambda a: pow(a, p - 2, p)
            self.lift = lambda e: e.coeffs[0]
            self.lower = lambda a: FieldElem(ctx, (a,))
        else:
            self.zero, self.one = ctx._zero, ctx._one
            self.add, self.sub, self.mul, self.inv = ctx._add, ctx._sub, ctx._mul, ctx._inv
            self.lift = lambda e: e.coeffs
            self.lower = lambda a: FieldElem(ctx, a)

    def trim(self, a: list) -> list:
        z = self.zero
        while a and a[-1] == z:
            a.pop()
        return a

    def pmul(self, a: list, b: list) -> list:
        if not a or not b:
            return []
        z, add, mul = self.zero, self.add, self.mul
        out = [z] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == z:
                continue
            for j, y in enumerate(b):
                if y != z:
                    out[i + j] = add(out[i + j], mul(x, y))
        return self.trim(out)

    def prem(self, a: list, m: list) -> list:
        """Remainder of a modulo the nonzero polynomial m."""
        a = list(a)
        dm = len(m) - 1
        z, sub, mul = self.zero, self.sub, self.mul
        lead_inv = self.inv(m[-1])
        for k in range(len(a) - 1, dm - 1, -1):
            t = a[k]
            if t == z:
                continue
            t = mul(t, lead_inv)
            base = k - dm
            for j in range(dm + 1):
                if m[j] != z:
                    a[base + j] = sub(a[base + j], mul(t, m[j]))
        return self.trim(a[:dm])

    def pmulmod(self, a: list, b: list, m: list) -> list:
        return self.prem(self.pmul(a, b), m)

    def ppowmod(self, a: list, e: int, m: list) -> list:
        result = [self.one]
        for bit in bin(e)[2:]:
            result = self.pmulmod(result, result, m)
            if bit == "1":
                result = self.pmulmod(result, a, m)
        return result

    def pgcd(self, a: list, b: list) -> list:
        a, b = self.trim(list(a)), self.trim(list(b))
        while b:
            a, b = b, self.prem(a, b)
        return a


@dataclass(frozen=True, eq=False)
class DensePoly:
    """Polynomial over a FieldCtx, little-endian, no trailing zeros."""

    ctx: FieldCtx
    coeffs: tuple

    def __post_init__(self):
        coeffs = list(self.coeffs)
        for c in coeffs:
            self.ctx.check(c)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints: Iterable[int]) -> DensePoly:
        return cls(ctx, tuple(ctx.from_int(n) for n in ints))

    @classmethod
    def _from_raw(cls, ring: _Ring, raw: list) -> DensePoly:
        return cls(ring.ctx, tuple(ring.lower(a) for a in raw))

    def _raw(self, ring: _Ring) -> list:
        return [ring.lift(c) for c in self.coeffs]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one

    def __call__(self, x: FieldElem) -> FieldElem:
        self.ctx.check(x)
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(c.coeffs for c in self.coeffs))

    def __repr__(self) -> str:
        return "DensePoly([" + ", ".join(c.encode() for c in self.coeffs) + "])"


@dataclass(frozen=True)
class MonicQuad:
    """f(X) = (X - b)^2 + c."""

    b: FieldElem
    c: FieldElem

    def __post_init__(self):
        if self.b.ctx != self.c.ctx:
            raise ElementFromWrongField("b and c must lie in the same field")

    @property
    def ctx(self) -> FieldCtx:
        return self.b.ctx

    def __call__(self, x: FieldElem) -> FieldElem:
        return quad_eval(self, x)

    def dense(self) -> DensePoly:
        b, c = self.b, self.c
        return DensePoly(self.ctx, (b * b + c, -(b + b), self.ctx.one))

    def encode(self) -> str:
        return f"b={self.b.encode()} c={self.c.encode()}"

    def key(self) -> tuple:
        return (self.b.key(), self.c.key())

    def __repr__(self) -> str:
        return f"MonicQuad({self.encode()})"


def quad_eval(f: MonicQuad, x: FieldElem) -> FieldElem:
    ctx = f.ctx
    ctx.check(x)
    t = ctx._sub(x.coeffs, f.b.coeffs)
    return FieldElem(ctx, ctx._add(ctx._mul(t, t), f.c.coeffs))


def quad_is_irreducible(f: MonicQuad) -> bool:
    """(X-b)^2 + c is irreducible iff -c is a non-square (odd characteristic)."""
    return f.ctx.chi(-f.c) == -1


def _shared_ctx(polys: Sequence[MonicQuad]) -> FieldCtx:
    ctx = polys[0].ctx
    for f in polys[1:]:
        if f.ctx != ctx:
            raise MixedFields("polynomials are defined over different fields")
    return ctx


def _compose_raw(ring: _Ring, f: MonicQuad, inner: list) -> list:
    """Raw coefficients of f(inner(X))."""
    g = list(inner)
    g[0] = ring.sub(g[0], ring.lift(f.b))
    sq = ring.pmul(g, g)
    sq[0] = ring.add(sq[0], ring.lift(f.c))
    return ring.trim(sq)


def compose_chain(chain: Sequence[MonicQuad], cap: int = DEFAULT_CHAIN_CAP) -> DensePoly:
    """Expand chain[0] o chain[1] o ... o chain[-1] densely."""
    if not chain:
        raise ValueError("empty composition chain")
    if len(chain) > cap:
        raise ChainTooLong(f"chain of length {len(chain)} exceeds cap {cap}")
    ctx = _shared_ctx(chain)
    ring = _Ring(ctx)
    raw = [ring.zero, ring.one]
    for f in reversed(chain):
        raw = _compose_raw(ring, f, raw)
    return DensePoly._from_raw(ring, raw)


def poly_is_irreducible(F: DensePoly) -> bool:
    """Rabin's test over F_q.

    F of degree m is irreducible iff X^(q^m) = X mod F and
    gcd(X^(q^(m/l)) - X, F) = 1 for every prime l dividing m.
    """
    m = F.degree
    if m < 1:
        raise ValueError("irreducibility needs positive degree")
    if m == 1:
        return True
    ctx = F.ctx
    ring = _Ring(ctx)
    mod = F._raw(ring)
    x = [ring.zero, ring.one]
    # frob[k] = X^(q^k) mod F
    frob = [x]
    for _ in range(m):
        frob.append(ring.ppowmod(frob[-1], ctx.q, mod))
    if ring.trim(list(frob[m])) != x:
        return False
    for ell in _prime_factors(m):
        h = list(frob[m // ell]) + [ring.zero] * 2
        h[1] = ring.sub(h[1], ring.one)
        g = ring.pgcd(ring.trim(h), mod)
        if len(g) != 1:
            return False
    return True


def chains_distinct(f1: MonicQuad, f2: MonicQuad, n: int, cap: int = DEFAULT_CHAIN_CAP) -> bool:
    """Whether the 2^n compositions of length n from {f1, f2} are pairwise distinct."""
    if f1 == f2:
        raise ValueError("f1 and f2 must be distinct")
    if n < 1:
        raise ValueError("depth must be positive")
    if n > cap:
        raise ChainTooLong(f"depth {n} exceeds cap {cap}")
    ctx = _shared_ctx([f1, f2])
    ring = _Ring(ctx)
    level = [[ring.zero, ring.one]]
    for _ in range(n):
        level = [_compose_raw(ring, f, g) for f in (f1, f2) for g in level]
    seen = {tuple(g) for g in level}
    return len(seen) == len(level) == 2**n


def enumerate_chains(r: int, n: int) -> Iterable[tuple[int, ...]]:
    """Index tuples of length n over range(r), in lexicographic order."""
    from itertools import product

    return product(range(r), repeat=n)


def replay(polys: Sequence[MonicQuad], chain: Sequence[int], start: FieldElem) -> FieldElem:
    """Apply polys[chain[-1]] first, polys[chain[0]] last."""
    v = start
    for i in reversed(chain):
        v = quad_eval(polys[i], v)
    return v

