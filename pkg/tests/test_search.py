import itertools

import pytest

from conftest import field
from dynirr.closure import DISetInstance, closure_test
from dynirr.search import enumerate_irreducible_quads, m_upper_bound, max_di_search


@pytest.mark.parametrize("pd, count", [((3, 1), 3), ((5, 1), 10), ((13, 1), 78), ((3, 2), 36)])
def test_enumerate_counts(pd, count):
    ctx = field(*pd)
    cands = enumerate_irreducible_quads(ctx)
    assert len(cands) == count == ctx.q * (ctx.q - 1) // 2
    assert [f.key() for f in cands] == sorted(f.key() for f in cands)


def test_enumerate_f3():
    F3 = field(3)
    assert [(f.b.coeffs[0], f.c.coeffs[0]) for f in enumerate_irreducible_quads(F3)] == [(0, 1), (1, 1), (2, 1)]


@pytest.mark.parametrize("p, m", [(3, 1), (5, 3), (7, 2), (11, 1)])
def test_known_values(p, m):
    rep = max_di_search(field(p))
    assert rep.complete and rep.m == m
    assert closure_test(rep.witness).is_di and len(rep.witness) == m
    assert rep.m <= rep.upper_bound == m_upper_bound(p)


def _max_by_all_subsets(ctx):
    """Every subset of the candidates, no pruning."""
    cands = enumerate_irreducible_quads(ctx)
    best = 0
    for mask in range(1, 2 ** len(cands)):
        subset = [f for k, f in enumerate(cands) if mask >> k & 1]
        if len(subset) > best and closure_test(DISetInstance(ctx, tuple(subset))).is_di:
            best = len(subset)
    return best


@pytest.mark.parametrize("p", [3, 5])
def test_search_matches_unpruned_enumeration(p):
    assert max_di_search(field(p)).m == _max_by_all_subsets(field(p))


def test_f13_and_witness_subsets():
    rep = max_di_search(field(13))
    assert rep.complete and rep.m >= 3
    w = rep.witness.polys
    for k in range(1, len(w) + 1):
        for sub in itertools.combinations(w, k):
            assert closure_test(DISetInstance(field(13), sub)).is_di


def test_f5_max_set_size_matches_known_triple():
    F5 = field(5)
    triple = (F5(2), F5(2)), (F5(3), F5(2)), (F5(0), F5(3))
    from dynirr.poly import MonicQuad

    inst = DISetInstance(F5, tuple(MonicQuad(b, c) for b, c in triple))
    assert closure_test(inst).is_di
    assert len(inst) == max_di_search(F5).m


def test_determinism_and_parallel_merge():
    ctx = field(13)
    a, b = max_di_search(ctx), max_di_search(ctx)
    assert a.witness_indices == b.witness_indices and a.nodes_explored == b.nodes_explored
    c = max_di_search(ctx, jobs=2)
    assert c.m == a.m and c.witness_indices == a.witness_indices and c.complete


@pytest.mark.parametrize("pd", [(5, 1), (13, 1), (3, 2)])
def test_one_mod_four_has_pairs(pd):
    assert max_di_search(field(*pd)).m >= 2


def test_budget_exhaustion_gives_lower_bound():
    rep = max_di_search(field(13), max_nodes=10)
    assert not rep.complete
    assert rep.nodes_explored == 10
    assert 1 <= rep.m <= 3
    assert rep.to_dict()["lower_bound_only"] is True


def test_upper_bound_examples():
    assert m_upper_bound(5) == 50
    assert m_upper_bound(3) == 18 >= 1
    assert m_upper_bound(13) >= max_di_search(field(13)).m
    assert m_upper_bound(field(13)) == m_upper_bound(13)
