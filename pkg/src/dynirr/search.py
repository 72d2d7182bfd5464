"""Exhaustive computation of M(q), the largest dynamically irreducible set of
monic quadratics over F_q.

Dynamical irreducibility is hereditary, so candidates are added in a fixed
canonical order and a branch is abandoned as soon as the closure test fails.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal

from .closure import DISetInstance, _floor_exact, bound_B, closure_test
from .ff import FieldCtx
from .poly import MonicQuad

DEFAULT_MAX_NODES = 10**7
DEFAULT_MAX_SECS = 300.0


def enumerate_irreducible_quads(ctx: FieldCtx) -> list[MonicQuad]:
    """All (X - b)^2 + c with -c a non-square, ordered by (b, c)."""
    cs = [c for c in ctx.elements() if ctx.chi(-c) == -1]
    return [MonicQuad(b, c) for b in ctx.elements() for c in cs]


def m_upper_bound(ctx_or_q) -> int:
    """min(2 B^2, floor(32 (ln q)^4 q)) with B the iterate-set bound."""
    q = ctx_or_q.q if isinstance(ctx_or_q, FieldCtx) else int(ctx_or_q)
    B = bound_B(q)
    dq = Decimal(q)
    return min(2 * B * B, _floor_exact(lambda: 32 * dq.ln() ** 4 * dq))


@dataclass
class SearchReport:
    ctx: FieldCtx
    m: int
    witness: DISetInstance | None
    nodes_explored: int
    upper_bound: int
    complete: bool
    elapsed: float = 0.0
    witness_indices: tuple = field(default=())

    @property
    def q(self) -> int:
        return self.ctx.q

    def to_dict(self) -> dict:
        from .io import emit_poly_set

        return {
            "field": self.ctx.header(),
            "q": self.q,
            "m": self.m,
            "complete": self.complete,
            "lower_bound_only": not self.complete,
            "upper_bound": self.upper_bound,
            "nodes_explored": self.nodes_explored,
            "elapsed_secs": round(self.elapsed, 3),
            "witness": [f.encode() for f in self.witness.polys] if self.witness else [],
            "witness_polyset": emit_poly_set(self.witness) if self.witness else None,
        }


class _Budget(Exception):
    pass


class _Searcher:
    def __init__(self, cands: list[MonicQuad], max_nodes: int, deadline: float):
        self.cands = cands
        self.ctx = cands[0].ctx if cands else None
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0
        self.best: tuple = ()

    def is_di(self, idx: tuple) -> bool:
        if self.nodes >= self.max_nodes or time.monotonic() > self.deadline:
            raise _Budget
        self.nodes += 1
        inst = DISetInstance(self.ctx, tuple(self.cands[k] for k in idx))
        return closure_test(inst).is_di

    def offer(self, idx: tuple) -> None:
        if len(idx) > len(self.best):
            self.best = idx

    def extend(self, current: tuple, allowed: list[int]) -> None:
        # children that keep the set DI; anything else is pruned for the whole subtree
        ok = []
        for k in allowed:
            if self.is_di(current + (k,)):
                ok.append(k)
                self.offer(current + (k,))
        for pos, k in enumerate(ok):
            self.extend(current + (k,), ok[pos + 1:])


def _branch(p, d, modulus, first: int, allowed: list[int], max_nodes: int, deadline: float):
    ctx = FieldCtx(p, d, modulus, check=False)
    s = _Searcher(enumerate_irreducible_quads(ctx), max_nodes, deadline)
    s.offer((first,))
    complete = True
    try:
        s.extend((first,), allowed)
    except _Budget:
        complete = False
    return s.best, s.nodes, complete


def max_di_search(
    ctx: FieldCtx,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_secs: float = DEFAULT_MAX_SECS,
    jobs: int = 1,
) -> SearchReport:
    """Depth-first search for a largest DI set; exact when ``complete``.

    The witness is the lexicographically smallest (in candidate order) DI set
    of maximum size.  With ``jobs > 1`` the top-level branches run in worker
    processes; the node budget then applies per branch.
    """
    start = time.monotonic()
    deadline = start + max_secs
    cands = enumerate_irreducible_quads(ctx)
    s = _Searcher(cands, max_nodes, deadline)
    complete = True
    try:
        if jobs <= 1:
            s.extend((), list(range(len(cands))))
        else:
            singles = [k for k in range(len(cands)) if s.is_di((k,))]
            args = [
                (ctx.p, ctx.d, ctx.modulus, k, singles[pos + 1:], max_nodes, deadline)
                for pos, k in enumerate(singles)
            ]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_branch, *zip(*args))) if args else []
            for best, nodes, done in results:
                s.nodes += nodes
                complete = complete and done
                if len(best) > len(s.best) or (len(best) == len(s.best) and best < s.best):
                    s.best = best
    except _Budget:
        complete = False
    witness = DISetInstance(ctx, tuple(cands[k] for k in s.best)) if s.best else None
    return SearchReport(
        ctx,
        len(s.best),
        witness,
        s.nodes,
        m_upper_bound(ctx),
        complete,
        time.monotonic() - start,
        s.best,
    )
