"""Deciding whether a set of monic quadratics is dynamically irreducible.

A set f_1..f_r of irreducible f_i = (X - b_i)^2 + c_i is dynamically
irreducible exactly when every value (f_{i_1} o ... o f_{i_n})(c_j), n >= 1,
is a non-square.  ``closure_test`` explores those values breadth first,
keeping everything seen in a red-black tree, and stops at the first square
or when a round produces nothing new.
"""
from __future__ import annotations

import enum
import json
import logging
import math
from dataclasses import dataclass, field
from decimal import ROUND_FLOOR, Decimal, localcontext
from typing import Sequence

from .errors import CommonCViolated, GuardExceeded, InternalBoundExceeded, MixedFields
from .ff import FieldCtx, FieldElem
from .poly import (
    DEFAULT_CHAIN_CAP,
    MonicQuad,
    _compose_raw,
    _Ring,
    DensePoly,
    poly_is_irreducible,
    quad_eval,
    quad_is_irreducible,
    replay,
)
from .rbtree import RedBlackTree

log = logging.getLogger(__name__)

BRUTE_FORCE_MAX_CHAINS = 10**6


class Verdict(str, enum.Enum):
    DI = "DynamicallyIrreducible"
    NOT_DI = "NotDI"


@dataclass
class DISetInstance:
    """A duplicate-free list of monic quadratics over one field.

    Duplicates in the input are dropped (first occurrence kept) and recorded
    in ``dropped`` as (input position, polynomial).
    """

    ctx: FieldCtx
    polys: tuple
    dropped: list = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        kept = []
        for pos, f in enumerate(self.polys):
            if f.ctx != self.ctx:
                raise MixedFields(f"polynomial {pos} is not over {self.ctx.header()}")
            if f in seen:
                self.dropped.append((pos, f))
                log.warning("dropping duplicate polynomial %s at position %d", f.encode(), pos)
                continue
            seen.add(f)
            kept.append(f)
        self.polys = tuple(kept)

    @classmethod
    def of(cls, polys: Sequence[MonicQuad]) -> DISetInstance:
        if not polys:
            raise ValueError("need at least one polynomial")
        return cls(polys[0].ctx, tuple(polys))

    def __len__(self) -> int:
        return len(self.polys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DISetInstance):
            return NotImplemented
        return self.ctx == other.ctx and self.polys == other.polys


@dataclass
class Witness:
    reason: str  # "ReducibleGenerator" or "SquareIterate"
    index: int | None = None
    chain: tuple = ()
    j: int | None = None
    value: FieldElem | None = None

    def composition(self) -> tuple:
        """Composition (outermost first) whose length bounds the depth of the
        shortest reducible composition."""
        if self.reason == "ReducibleGenerator":
            return (self.index,)
        return tuple(self.chain) + (self.j,)

    def to_dict(self) -> dict:
        out = {"reason": self.reason}
        if self.reason == "ReducibleGenerator":
            out["index"] = self.index
        else:
            out.update(chain=list(self.chain), j=self.j, value=self.value.encode())
        return out


@dataclass
class ClosureReport:
    ctx: FieldCtx
    verdict: Verdict
    iterate_set: list
    witness: Witness | None = None
    stats: dict = field(default_factory=dict)

    @property
    def is_di(self) -> bool:
        return self.verdict is Verdict.DI

    def to_dict(self) -> dict:
        return {
            "field": self.ctx.header(),
            "verdict": self.verdict.value,
            "iterate_set": [x.encode() for x in self.iterate_set],
            "witness": self.witness.to_dict() if self.witness else None,
            "stats": dict(self.stats),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _floor_exact(compute) -> int:
    """floor() of a positive transcendental quantity evaluated in Decimal."""
    for prec in (60, 120, 240):
        with localcontext() as dc:
            dc.prec = prec
            v = compute()
            f = int(v.to_integral_value(rounding=ROUND_FLOOR))
            eps = Decimal(10) ** (-(prec // 2))
            if v - f > eps and (f + 1) - v > eps:
                return f
    raise ArithmeticError("floor boundary could not be resolved")


def _q_of(ctx_or_q) -> int:
    return ctx_or_q.q if isinstance(ctx_or_q, FieldCtx) else int(ctx_or_q)


def bound_B(ctx_or_q) -> int:
    """min(q, floor(4 (ln q)^2 sqrt(q))): size cap on the iterate set when r >= 2."""
    q = _q_of(ctx_or_q)
    if q < 3:
        raise ValueError("q must be at least 3")
    dq = Decimal(q)
    return min(q, _floor_exact(lambda: 4 * dq.ln() ** 2 * dq.sqrt()))


def _check_irreducible_generators(polys) -> Witness | None:
    for i, f in enumerate(polys):
        if not quad_is_irreducible(f):
            return Witness("ReducibleGenerator", index=i)
    return None


def closure_test(inst: DISetInstance) -> ClosureReport:
    ctx, polys = inst.ctx, inst.polys
    r = len(polys)
    if r == 0:
        raise ValueError("need at least one polynomial")
    stats = {"sq_tests": 0, "insertions": 0, "rounds": 0}
    bad = _check_irreducible_generators(polys)
    if bad:
        return ClosureReport(ctx, Verdict.NOT_DI, [], bad, stats)

    # tree value: (element, parent key or None, polynomial index, root c index)
    tree = RedBlackTree()
    for j, f in enumerate(polys):
        if tree.insert(f.c.key(), (f.c, None, None, j)):
            stats["insertions"] += 1
    # frontier entries: (element, key, root c index)
    frontier = [(v[0], k, v[3]) for k, v in tree.items()]

    def chain_of(key) -> list:
        chain = []
        node = tree.get(key)
        while node[1] is not None:
            chain.append(node[2])
            node = tree.get(node[1])
        return chain

    q = ctx.q
    sub, mul, add = ctx._sub, ctx._mul, ctx._add
    while True:
        stats["rounds"] += 1
        if stats["rounds"] > q:
            raise InternalBoundExceeded("more rounds than field elements")
        fresh = []
        for i, f in enumerate(polys):
            b, c = f.b.coeffs, f.c.coeffs
            for t, tkey, root in frontier:
                u = sub(t.coeffs, b)
                v = FieldElem(ctx, add(mul(u, u), c))
                stats["sq_tests"] += 1
                if ctx.chi(v) != -1:
                    chain = tuple([i] + chain_of(tkey))
                    witness = Witness("SquareIterate", chain=chain, j=root, value=v)
                    return ClosureReport(ctx, Verdict.NOT_DI, list(_elements(tree)), witness, stats)
                vkey = v.key()
                if tree.insert(vkey, (v, tkey, i, root)):
                    stats["insertions"] += 1
                    fresh.append((v, vkey, root))
        if not fresh:
            break
        fresh.sort(key=lambda entry: entry[1])
        frontier = fresh

    iterates = list(_elements(tree))
    if r >= 2 and len(iterates) > bound_B(ctx):
        raise InternalBoundExceeded(f"{len(iterates)} iterates exceed the bound {bound_B(ctx)}")
    return ClosureReport(ctx, Verdict.DI, iterates, None, stats)


def _elements(tree: RedBlackTree):
    for v in tree.values():
        yield v[0]


def single_test(ctx: FieldCtx, f: MonicQuad) -> ClosureReport:
    """Follow c, f(c), f(f(c)), ... until a square or a repeat."""
    if f.ctx != ctx:
        raise MixedFields("polynomial is not over the given field")
    stats = {
        "sq_tests": 0,
        "insertions": 0,
        "rounds": 0,
        "repetition_ref": math.ceil(ctx.q**0.75),
    }
    if not quad_is_irreducible(f):
        return ClosureReport(ctx, Verdict.NOT_DI, [], Witness("ReducibleGenerator", index=0), stats)
    visited = {f.c}
    stats["insertions"] = 1
    t = f.c
    while True:
        stats["rounds"] += 1
        v = quad_eval(f, t)
        stats["sq_tests"] += 1
        if ctx.chi(v) != -1:
            witness = Witness("SquareIterate", chain=(0,) * stats["rounds"], j=0, value=v)
            return ClosureReport(ctx, Verdict.NOT_DI, sorted(visited), witness, stats)
        if v in visited:
            break
        if len(visited) >= ctx.q:
            raise InternalBoundExceeded("orbit longer than the field")
        visited.add(v)
        stats["insertions"] += 1
        t = v
    return ClosureReport(ctx, Verdict.DI, sorted(visited), None, stats)


@dataclass
class OracleResult:
    all_irreducible: bool
    depth: int
    chain: tuple | None = None
    checked: int = 0

    def to_dict(self) -> dict:
        if self.all_irreducible:
            return {"result": f"AllIrreducibleUpTo({self.depth})", "checked": self.checked}
        return {"result": "Reducible", "chain": list(self.chain), "checked": self.checked}


def brute_force_check(inst: DISetInstance, max_depth: int) -> OracleResult:
    """Expand every composition of length 1..max_depth and test irreducibility.

    Returns the first reducible chain in (length, lexicographic) order.
    """
    polys = inst.polys
    r = len(polys)
    if max_depth < 1:
        raise ValueError("max_depth must be positive")
    if r**max_depth > BRUTE_FORCE_MAX_CHAINS or 2**max_depth > 2**DEFAULT_CHAIN_CAP:
        raise GuardExceeded(f"{r}^{max_depth} chains of degree 2^{max_depth} are too many")
    ring = _Ring(inst.ctx)
    from itertools import product

    prev = {(): [ring.zero, ring.one]}
    checked = 0
    for depth in range(1, max_depth + 1):
        level = {}
        for chain in product(range(r), repeat=depth):
            raw = _compose_raw(ring, polys[chain[0]], prev[chain[1:]])
            level[chain] = raw
            checked += 1
            if not poly_is_irreducible(DensePoly._from_raw(ring, raw)):
                return OracleResult(False, depth, chain, checked)
        prev = level
    return OracleResult(True, max_depth, None, checked)


def oracle_agrees(report: ClosureReport, oracle: OracleResult) -> bool:
    """Consistency between a closure verdict and a brute-force run.

    A DI verdict needs the oracle to find nothing.  A square iterate
    (f_{i_1} o ... o f_{i_n})(c_j) makes f_{i_1} o ... o f_{i_n} o f_j
    reducible (or some shorter composition), so when that depth is within the
    oracle's reach it must have found a reducible chain no deeper than it.
    """
    if report.is_di:
        return oracle.all_irreducible
    n = len(report.witness.composition())
    if n > oracle.depth:
        return True
    return not oracle.all_irreducible and oracle.depth <= n


@dataclass
class GammaReport:
    u: FieldElem
    fibers: dict
    max_fiber: int
    r: int
    iterate_size: int | None

    def to_dict(self) -> dict:
        return {
            "u": self.u.encode(),
            "max_fiber": self.max_fiber,
            "r": self.r,
            "iterate_size": self.iterate_size,
            "fibers": {k.encode(): v for k, v in self.fibers.items()},
        }


def gamma_two_to_one(inst: DISetInstance) -> GammaReport:
    """Fibers of f_i -> f_i(u) for a family sharing the constant term u."""
    u = inst.polys[0].c
    if any(f.c != u for f in inst.polys):
        raise CommonCViolated("all polynomials must share the same c")
    fibers: dict = {}
    for i, f in enumerate(inst.polys):
        fibers.setdefault(quad_eval(f, u), []).append(i)
    report = closure_test(inst)
    size = len(report.iterate_set) if report.is_di else None
    return GammaReport(u, fibers, max(len(v) for v in fibers.values()), len(inst.polys), size)


def verify_witness(inst: DISetInstance, witness: Witness) -> bool:
    """Replay a square-iterate witness and confirm it is not a non-square."""
    if witness.reason == "ReducibleGenerator":
        return not quad_is_irreducible(inst.polys[witness.index])
    v = replay(inst.polys, witness.chain, inst.polys[witness.j].c)
    return v == witness.value and inst.ctx.chi(v) != -1
