"""Explicit dynamically irreducible families and the character-sum search.

* Artin-Schreier family: over K = F_p[X]/(X^p - X - h) with h a non-square
  mod p and p = 1 mod 4, the p^2 quadratics (X - b - xi)^2 + c + xi,
  (b, c) in F_p^2, are dynamically irreducible.  Conjugating by X -> X + xi
  keeps every iterate inside the coset F_p + xi, all of whose elements have
  norm h and are therefore non-squares.
* Pair family: (X - a)^2 + a and (X - a - 1)^2 + a with a, a + 1 non-squares
  (q = 1 mod 4); iterates only take the values a and a + 1.
* Single family: (X - b)^2 + b - 2 sends b - 2 to the fixed point b + 2.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .closure import DISetInstance
from .errors import (
    GuardExceeded,
    HIsSquare,
    HIsZero,
    ModulusNotIrreducible,
    NoAdmissibleA,
    NoAdmissibleB,
    PNotOneModFour,
)
from .ff import FieldCtx, FieldElem, chi_table, is_prime, prime_field
from .poly import DensePoly, MonicQuad, poly_is_irreducible

CHARSUM_MAX_Q = 10**7


@dataclass(frozen=True)
class ArtinSchreierCtx:
    p: int
    h: FieldElem  # element of the prime field F_p
    ctx: FieldCtx
    xi: FieldElem
    within_hypotheses: bool = True


def build_artin_schreier(p: int, h: int, *, allow_any_p: bool = False) -> ArtinSchreierCtx:
    """Build F_{p^p} = F_p(xi) with xi^p = xi + h and check the coset facts.

    ``allow_any_p`` lifts the p = 1 mod 4 requirement for exploration; the
    result is then flagged as outside the theorem's hypotheses.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p={p} must be an odd prime")
    pf = prime_field(p)
    h_el = pf(h)
    if h_el.is_zero():
        raise HIsZero("h must be nonzero mod p")
    if pf.chi(h_el) != -1:
        raise HIsSquare(f"h={h} is a square mod {p}")
    within = p % 4 == 1
    if not within and not allow_any_p:
        raise PNotOneModFour(f"p={p} is not 1 mod 4")

    modulus = [0] * (p + 1)
    modulus[0] = (-h) % p
    modulus[1] = p - 1
    modulus[p] = 1
    if not poly_is_irreducible(DensePoly.from_ints(pf, modulus)):
        raise ModulusNotIrreducible(f"X^{p} - X - {h} is reducible")
    ctx = FieldCtx(p, p, modulus, check=False)
    xi = ctx.theta
    hk = ctx.from_int(h)
    if xi**p - xi != hk:
        raise AssertionError("xi^p - xi != h")
    for a in range(p):
        x = xi + a
        if ctx.norm(x) != hk:
            raise AssertionError(f"norm({a} + xi) != h")
        if ctx.chi(x) != -1:
            raise AssertionError(f"{a} + xi is a square")
    return ArtinSchreierCtx(p, h_el, ctx, xi, within)


def theorem1_family(asc: ArtinSchreierCtx) -> DISetInstance:
    """The p^2 polynomials (X - b - xi)^2 + c + xi, ordered by (b, c)."""
    ctx, xi = asc.ctx, asc.xi
    polys = [MonicQuad(xi + b, xi + c) for b in range(asc.p) for c in range(asc.p)]
    return DISetInstance(ctx, tuple(polys))


def pair_family(ctx: FieldCtx) -> DISetInstance:
    if ctx.q % 4 != 1:
        raise ValueError(f"q={ctx.q} is not 1 mod 4")
    for a in ctx.elements():
        a1 = a + 1
        if ctx.chi(a) == -1 and ctx.chi(a1) == -1:
            return DISetInstance(ctx, (MonicQuad(a, a), MonicQuad(a1, a)))
    raise NoAdmissibleA(f"no a with a, a+1 both non-squares in F_{ctx.q}")


def single_family(ctx: FieldCtx) -> MonicQuad:
    for b in ctx.elements():
        if ctx.chi(2 - b) == -1 and ctx.chi(2 + b) == -1:
            return MonicQuad(b, b - 2)
    raise NoAdmissibleB(f"no b with 2-b, 2+b both non-squares in F_{ctx.q}")


@dataclass
class CharsumReport:
    p: int
    e: int
    q: int
    S: int
    alpha: FieldElem | None
    ctx: FieldCtx

    @property
    def weil_floor(self) -> float:
        return self.q - math.sqrt(self.q) * self.p * (2**self.p - 1)

    @property
    def above_weil_floor(self) -> bool:
        """Exact check of S >= q - sqrt(q) p (2^p - 1)."""
        gap = self.q - self.S
        k = self.p * (2**self.p - 1)
        return gap <= 0 or gap * gap <= self.q * k * k

    @property
    def weil_threshold_met(self) -> bool:
        """q >= p^2 4^p, the regime where S > 0 is guaranteed."""
        return self.q >= self.p**2 * 4**self.p

    def to_dict(self) -> dict:
        return {
            "field": self.ctx.header(),
            "p": self.p,
            "e": self.e,
            "q": self.q,
            "S": self.S,
            "weil_floor": self.weil_floor,
            "above_weil_floor": self.above_weil_floor,
            "weil_threshold_met": self.weil_threshold_met,
            "alpha": self.alpha.encode() if self.alpha is not None else None,
        }


def charsum_find_alpha(p: int, e: int) -> CharsumReport:
    """Evaluate S = sum over alpha of prod over a in F_p of (1 - chi(a + alpha)).

    Also returns the first alpha (element order) making every a + alpha a
    non-square, or None when there is none.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"p={p} must be an odd prime")
    q = p**e
    if q > CHARSUM_MAX_Q:
        raise GuardExceeded(f"q={q} exceeds {CHARSUM_MAX_Q}")
    ctx = FieldCtx(p, e)
    table = chi_table(ctx)
    S = 0
    alpha = None
    # adding a in F_p only moves the lowest base-p digit of the index
    for n in range(q):
        low = n % p
        base = n - low
        prod = 1
        for a in range(p):
            prod *= 1 - table[base + (low + a) % p]
            if prod == 0:
                break
        S += prod
        if alpha is None and prod == 2**p:
            alpha = ctx.from_index(n)
    report = CharsumReport(p, e, q, S, alpha, ctx)
    if not report.above_weil_floor:
        raise AssertionError(f"S={S} is below the Weil floor {report.weil_floor}")
    return report


def charsum_expansion(ctx: FieldCtx) -> int:
    """q + sum over nonempty A in F_p of (-1)^|A| sum_alpha chi(prod_{a in A} (alpha + a)).

    Independent of ``charsum_find_alpha``: uses ``ctx.chi`` directly.
    Exponential in p; meant for tiny fields only.
    """
    p = ctx.p
    total = ctx.q
    elems = list(ctx.elements())
    for size in range(1, p + 1):
        for A in itertools.combinations(range(p), size):
            inner = 0
            for alpha in elems:
                prod = ctx.one
                for a in A:
                    prod = prod * (alpha + a)
                inner += ctx.chi(prod)
            total += (-1) ** size * inner
    return total
