"""Arithmetic in the finite field F_{p^d}, p odd.

An element a_0 + a_1*t + ... + a_{d-1}*t^{d-1} (t the class of X modulo the
field modulus) is stored as the tuple (a_0, ..., a_{d-1}) of integers in
[0, p).  For d = 1 the modulus is taken to be X and elements are 1-tuples.

Elements are ordered by comparing (a_{d-1}, ..., a_0) lexicographically,
which is the same as comparing the integers sum a_k p^k.
"""
from __future__ import annotations

import functools
import random
from typing import Iterator, Sequence, Union

from .errors import (
    ElementFromWrongField,
    InversionOfZero,
    ModulusNotIrreducible,
    NotOddCharacteristic,
)

LT, EQ, GT = -1, 0, 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for k in (2, 3, 5, 7, 11, 13):
        if n % k == 0:
            return n == k
    f = 17
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


class FieldElem:
    """Immutable element of a FieldCtx."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _other(self, y) -> tuple:
        if isinstance(y, FieldElem):
            if y.ctx is not self.ctx and y.ctx != self.ctx:
                raise ElementFromWrongField("elements belong to different fields")
            return y.coeffs
        if isinstance(y, int):
            return self.ctx.from_int(y).coeffs
        return NotImplemented

    def __add__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx._add(self.coeffs, b))

    __radd__ = __add__

    def __sub__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx._sub(self.coeffs, b))

    def __rsub__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx._sub(b, self.coeffs))

    def __mul__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx._mul(self.coeffs, b))

    __rmul__ = __mul__

    def __truediv__(self, y):
        b = self._other(y)
        if b is NotImplemented:
            return b
        return self * FieldElem(self.ctx, self.ctx._inv(b))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx._neg(self.coeffs))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElem(self.ctx, self.ctx._pow(self.ctx._inv(self.coeffs), -e))
        return FieldElem(self.ctx, self.ctx._pow(self.coeffs, e))

    def inv(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx._inv(self.coeffs))

    def square(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx._mul(self.coeffs, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, y) -> bool:
        if isinstance(y, FieldElem):
            return self.coeffs == y.coeffs and (y.ctx is self.ctx or y.ctx == self.ctx)
        if isinstance(y, int):
            return self.coeffs == self.ctx.from_int(y).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def key(self) -> tuple:
        """Sort key realising the element order."""
        return self.coeffs[::-1]

    def __lt__(self, y: FieldElem) -> bool:
        return self.key() < y.key()

    def __le__(self, y: FieldElem) -> bool:
        return self.key() <= y.key()

    def __gt__(self, y: FieldElem) -> bool:
        return self.key() > y.key()

    def __ge__(self, y: FieldElem) -> bool:
        return self.key() >= y.key()

    @property
    def index(self) -> int:
        """The integer sum a_k p^k; consistent with the element order."""
        n = 0
        for a in reversed(self.coeffs):
            n = n * self.ctx.p + a
        return n

    def encode(self) -> str:
        return ":".join(str(a) for a in self.coeffs)

    def __str__(self) -> str:
        return self.encode()

    def __repr__(self) -> str:
        return f"FieldElem({self.encode()})"


ElemLike = Union[FieldElem, int, Sequence[int]]


class FieldCtx:
    """The field F_p[X]/(modulus) with q = p^d elements.

    The modulus must be monic, of degree d and irreducible; it is checked at
    construction unless ``check=False``.  When omitted, ``find_modulus`` picks
    the smallest irreducible one.
    """

    def __init__(self, p: int, d: int = 1, modulus: Sequence[int] | None = None, *, check: bool = True):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if p == 2:
            raise NotOddCharacteristic("characteristic 2 is not supported")
        if d < 1:
            raise ValueError("degree must be at least 1")
        self.p = p
        self.d = d
        self.q = p**d
        if d == 1:
            if modulus is not None and tuple(modulus) != (0, 1):
                raise ModulusNotIrreducible("for d=1 the modulus is X")
            self.modulus = (0, 1)
            self._add = self._add1
            self._sub = self._sub1
            self._mul = self._mul1
            self._neg = self._neg1
        else:
            if modulus is None:
                modulus = find_modulus(p, d)
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] != 1:
                raise ModulusNotIrreducible("modulus must be monic of degree d")
            if any(not 0 <= c < p for c in modulus):
                raise ModulusNotIrreducible("modulus coefficients must lie in [0, p)")
            self.modulus = modulus
            # X^d = sum of reduce-terms (j, -m_j)
            self._red = [(j, (-m) % p) for j, m in enumerate(modulus[:-1]) if m]
            self._add = self._addn
            self._sub = self._subn
            self._mul = self._muln
            self._neg = self._negn
            if check:
                from .poly import DensePoly, poly_is_irreducible

                pf = prime_field(p)
                if not poly_is_irreducible(DensePoly.from_ints(pf, modulus)):
                    raise ModulusNotIrreducible(f"modulus {modulus} is reducible over F_{p}")
        self._zero = (0,) * d
        self._one = (1,) + (0,) * (d - 1)
        self.zero = FieldElem(self, self._zero)
        self.one = FieldElem(self, self._one)

    # -- identity -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return self is other or (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx({self.header()})"

    def header(self) -> str:
        if self.d == 1:
            return f"p={self.p} d=1"
        return f"p={self.p} d={self.d} modulus=" + ":".join(map(str, self.modulus))

    # -- element construction ------------------------------------------
    def __call__(self, x: ElemLike) -> FieldElem:
        return self.elem(x)

    def elem(self, x: ElemLike) -> FieldElem:
        if isinstance(x, FieldElem):
            self.check(x)
            return x
        if isinstance(x, int):
            return self.from_int(x)
        coeffs = tuple(x)
        if len(coeffs) != self.d or any(not isinstance(a, int) or not 0 <= a < self.p for a in coeffs):
            raise ElementFromWrongField(f"{coeffs!r} is not a coefficient vector of length {self.d} in [0, {self.p})")
        return FieldElem(self, coeffs)

    def from_int(self, n: int) -> FieldElem:
        """The image of the integer n in the prime subfield."""
        return FieldElem(self, (n % self.p,) + (0,) * (self.d - 1))

    def from_index(self, n: int) -> FieldElem:
        if not 0 <= n < self.q:
            raise ElementFromWrongField(f"index {n} out of range")
        out = []
        for _ in range(self.d):
            n, a = divmod(n, self.p)
            out.append(a)
        return FieldElem(self, tuple(out))

    @property
    def theta(self) -> FieldElem:
        """The class of X modulo the field modulus (zero when d = 1)."""
        if self.d == 1:
            return self.zero
        return FieldElem(self, (0, 1) + (0,) * (self.d - 2))

    def elements(self) -> Iterator[FieldElem]:
        """All q elements in increasing element order."""
        for n in range(self.q):
            yield self.from_index(n)

    def random_element(self, rng: random.Random) -> FieldElem:
        return FieldElem(self, tuple(rng.randrange(self.p) for _ in range(self.d)))

    def check(self, x: FieldElem) -> None:
        if not isinstance(x, FieldElem):
            raise ElementFromWrongField(f"{x!r} is not a field element")
        if x.ctx is self:
            return
        if x.ctx != self:
            raise ElementFromWrongField("element belongs to a different field")

    def decode(self, text: str) -> FieldElem:
        parts = text.strip().split(":")
        try:
            coeffs = tuple(int(s) for s in parts)
        except ValueError:
            raise ElementFromWrongField(f"cannot parse element {text!r}") from None
        return self.elem(coeffs)

    # -- raw arithmetic on coefficient tuples --------------------------
    def _add1(self, a, b):
        return ((a[0] + b[0]) % self.p,)

    def _sub1(self, a, b):
        return ((a[0] - b[0]) % self.p,)

    def _mul1(self, a, b):
        return ((a[0] * b[0]) % self.p,)

    def _neg1(self, a):
        return ((-a[0]) % self.p,)

    def _addn(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _subn(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _negn(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _muln(self, a, b):
        p, d = self.p, self.d
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        red = self._red
        for k in range(2 * d - 2, d - 1, -1):
            t = prod[k] % p
            if t:
                base = k - d
                for j, m in red:
                    prod[base + j] += t * m
        return tuple(c % p for c in prod[:d])

    def _pow(self, a, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        if self.d == 1:
            return (pow(a[0], e, self.p),)
        result = self._one
        mul = self._mul
        for bit in bin(e)[2:]:
            result = mul(result, result)
            if bit == "1":
                result = mul(result, a)
        return result

    def _inv(self, a):
        if not any(a):
            raise InversionOfZero("inverse of zero")
        if self.d == 1:
            return (pow(a[0], self.p - 2, self.p),)
        return self._pow(a, self.q - 2)

    # -- public operations ---------------------------------------------
    def add(self, x: FieldElem, y: FieldElem) -> FieldElem:
        self.check(x), self.check(y)
        return FieldElem(self, self._add(x.coeffs, y.coeffs))

    def sub(self, x: FieldElem, y: FieldElem) -> FieldElem:
        self.check(x), self.check(y)
        return FieldElem(self, self._sub(x.coeffs, y.coeffs))

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        self.check(x), self.check(y)
        return FieldElem(self, self._mul(x.coeffs, y.coeffs))

    def neg(self, x: FieldElem) -> FieldElem:
        self.check(x)
        return FieldElem(self, self._neg(x.coeffs))

    def inv(self, x: FieldElem) -> FieldElem:
        self.check(x)
        return FieldElem(self, self._inv(x.coeffs))

    def pow(self, x: FieldElem, e: int) -> FieldElem:
        self.check(x)
        return FieldElem(self, self._pow(x.coeffs, e))

    def chi(self, x: FieldElem) -> int:
        """Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise."""
        self.check(x)
        a = x.coeffs
        if not any(a):
            return 0
        if self.d == 1:
            r = pow(a[0], (self.p - 1) // 2, self.p)
            return 1 if r == 1 else -1
        r = self._pow(a, (self.q - 1) // 2)
        if r == self._one:
            return 1
        assert r[0] == self.p - 1 and not any(r[1:]), "x^((q-1)/2) must be +-1"
        return -1

    def is_nonsquare(self, x: FieldElem) -> bool:
        return self.chi(x) == -1

    def norm(self, x: FieldElem) -> FieldElem:
        """Norm down to F_p, i.e. x^((q-1)/(p-1)), embedded in this field."""
        self.check(x)
        r = self._pow(x.coeffs, (self.q - 1) // (self.p - 1))
        assert not any(r[1:]), "norm must lie in the prime subfield"
        return FieldElem(self, r)

    def cmp(self, x: FieldElem, y: FieldElem) -> int:
        self.check(x), self.check(y)
        kx, ky = x.key(), y.key()
        return LT if kx < ky else (GT if kx > ky else EQ)


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> FieldCtx:
    return FieldCtx(p, 1)


def arith(ctx: FieldCtx, op: str, x: FieldElem, y: FieldElem | int | None = None) -> FieldElem:
    """Dispatch one of add, sub, mul, inv, neg, pow."""
    if op in ("add", "sub", "mul"):
        if not isinstance(y, FieldElem):
            raise ElementFromWrongField(f"{op} needs two field elements")
        return getattr(ctx, op)(x, y)
    if op in ("inv", "neg"):
        return getattr(ctx, op)(x)
    if op == "pow":
        if not isinstance(y, int) or y < 0:
            raise ValueError("pow needs a non-negative integer exponent")
        return ctx.pow(x, y)
    raise ValueError(f"unknown operation {op!r}")


def chi(ctx: FieldCtx, x: FieldElem) -> int:
    return ctx.chi(x)


def norm(ctx: FieldCtx, x: FieldElem) -> FieldElem:
    return ctx.norm(x)


def element_cmp(ctx: FieldCtx, x: FieldElem, y: FieldElem) -> int:
    return ctx.cmp(x, y)


def find_modulus(p: int, d: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree d over F_p.

    Candidates X^d + c_{d-1} X^{d-1} + ... + c_0 are scanned with
    (c_{d-1}, ..., c_0) in increasing lexicographic order.  For d = 1 this
    returns X.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p={p} must be an odd prime")
    if d == 1:
        return (0, 1)
    from .poly import DensePoly, poly_is_irreducible

    pf = prime_field(p)
    for n in range(p**d):
        low = []
        for _ in range(d):
            n, a = divmod(n, p)
            low.append(a)
        if low[0] == 0:
            continue
        coeffs = tuple(low) + (1,)
        if poly_is_irreducible(DensePoly.from_ints(pf, coeffs)):
            return coeffs
    raise AssertionError("an irreducible polynomial of every degree exists")


def chi_table(ctx: FieldCtx) -> list[int]:
    """chi of every element, indexed by FieldElem.index, built by squaring.

    Only meant for fields small enough to enumerate.
    """
    table = [-1] * ctx.q
    table[0] = 0
    for x in ctx.elements():
        table[x.square().index] = 1 if x else 0
    return table
