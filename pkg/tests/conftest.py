import functools
import itertools

import pytest

from dynirr.ff import FieldCtx, prime_field


@functools.lru_cache(maxsize=None)
def field(p, d=1):
    return prime_field(p) if d == 1 else FieldCtx(p, d)


def brute_squares(ctx):
    """Set of squares, by squaring every element."""
    return {x * x for x in ctx.elements()}


def naive_irreducible(ctx, coeffs):
    """Trial division by every monic polynomial of degree <= m/2 (coeffs are FieldElems)."""
    m = len(coeffs) - 1
    elems = list(ctx.elements())
    for k in range(1, m // 2 + 1):
        for low in itertools.product(elems, repeat=k):
            divisor = list(low) + [ctx.one]
            rem = list(coeffs)
            for top in range(len(rem) - 1, k - 1, -1):
                t = rem[top]
                if t:
                    for j in range(k + 1):
                        rem[top - k + j] = rem[top - k + j] - t * divisor[j]
            if all(r.is_zero() for r in rem[:k]):
                return False
    return True


SMALL_FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3), (7, 2), (11, 2), (5, 3), (13, 2)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pd: f"q={pd[0]**pd[1]}")
def small_field(request):
    return field(*request.param)
