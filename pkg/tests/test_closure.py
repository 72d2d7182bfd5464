import itertools
import json
import random

import mpmath
import pytest

from conftest import field
from dynirr.closure import (
    DISetInstance,
    Verdict,
    bound_B,
    brute_force_check,
    closure_test,
    gamma_two_to_one,
    oracle_agrees,
    single_test,
    verify_witness,
)
from dynirr.errors import CommonCViolated, GuardExceeded, MixedFields
from dynirr.poly import MonicQuad, compose_chain, poly_is_irreducible, replay


def Q(ctx, b, c):
    return MonicQuad(ctx(b), ctx(c))


def inst(*polys):
    return DISetInstance.of(list(polys))


def F5_TRIPLE():
    F5 = field(5)
    return [Q(F5, 2, 2), Q(F5, 3, 2), Q(F5, 0, 3)]


def F13_TRIPLE():
    F13 = field(13)
    return [Q(F13, 1, -2), Q(F13, 9, -6), Q(F13, 3, -5)]


def _bound_oracle(q):
    mpmath.mp.dps = 50
    return min(q, int(mpmath.floor(4 * mpmath.log(q) ** 2 * mpmath.sqrt(q))))


def test_bound_B_examples():
    assert bound_B(3) == 3
    assert bound_B(5) == 5
    assert bound_B(3125) == 3125
    assert bound_B(field(5)) == 5
    with pytest.raises(ValueError):
        bound_B(2)


@pytest.mark.parametrize("q", [3, 5, 3125, 10**6, 10**7, 13**13, 2**61 - 1, 3**80, 2**128])
def test_bound_B_against_mpmath(q):
    assert bound_B(q) == _bound_oracle(q)


def test_bound_B_uncapped_values():
    # 4 (ln q)^2 sqrt(q) drops below q only for fairly large q
    assert bound_B(10**7) < 10**7
    assert bound_B(10**6) == _bound_oracle(10**6) < 10**6


def test_golden_triples():
    for triple in (F5_TRIPLE(), F13_TRIPLE()):
        rep = closure_test(inst(*triple))
        assert rep.verdict is Verdict.DI
        assert rep.witness is None
        assert len(rep.iterate_set) <= bound_B(triple[0].ctx)


def test_not_di_pair_has_replayable_witness():
    F5 = field(5)
    i = inst(Q(F5, 0, 3), Q(F5, 1, 3))
    rep = closure_test(i)
    assert rep.verdict is Verdict.NOT_DI
    w = rep.witness
    assert w.reason == "SquareIterate"
    assert replay(i.polys, w.chain, i.polys[w.j].c) == w.value
    assert F5.chi(w.value) != -1
    assert verify_witness(i, w)
    oracle = brute_force_check(i, 4)
    assert not oracle.all_irreducible
    assert oracle_agrees(rep, oracle)
    # the composition named by the witness is itself reducible here
    assert not poly_is_irreducible(compose_chain([i.polys[k] for k in w.composition()]))


def test_reducible_generator():
    for ctx in (field(3), field(5), field(3, 2)):
        c = next(c for c in ctx.elements() if ctx.chi(-c) == -1)
        i = inst(MonicQuad(ctx.one, c), MonicQuad(ctx.zero, ctx.zero))
        rep = closure_test(i)
        assert rep.verdict is Verdict.NOT_DI
        assert rep.witness.reason == "ReducibleGenerator" and rep.witness.index == 1
        oracle = brute_force_check(i, 2)
        assert oracle.chain == (1,)


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        inst(Q(field(5), 0, 3), Q(field(7), 0, 3))


def test_duplicates_dropped_with_record():
    F5 = field(5)
    i = inst(Q(F5, 2, 2), Q(F5, 2, 2), Q(F5, 0, 3))
    assert len(i) == 2
    assert [pos for pos, _ in i.dropped] == [1]


def test_single_test_examples():
    F3, F5 = field(3), field(5)
    rep = single_test(F3, Q(F3, 0, 1))
    assert rep.verdict is Verdict.DI
    assert rep.iterate_set == [F3(1), F3(2)]
    rep = single_test(F5, Q(F5, 0, 1))
    assert rep.verdict is Verdict.NOT_DI and rep.witness.reason == "ReducibleGenerator"


@pytest.mark.parametrize("pd", [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (7, 2)])
def test_single_test_fixed_point_family(pd):
    ctx = field(*pd)
    found = 0
    for b in ctx.elements():
        if ctx.chi(2 - b) == ctx.chi(2 + b) == -1:
            f = MonicQuad(b, b - 2)
            rep = single_test(ctx, f)
            assert rep.verdict is Verdict.DI
            assert set(rep.iterate_set) == {b - 2, b + 2}
            found += 1
    assert found > 0


@pytest.mark.parametrize("pd", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (7, 2)])
def test_single_test_matches_closure_on_singletons(pd):
    ctx = field(*pd)
    rng = random.Random(ctx.q)
    for _ in range(100):
        f = MonicQuad(ctx.random_element(rng), ctx.random_element(rng))
        a, b = single_test(ctx, f), closure_test(inst(f))
        assert a.verdict == b.verdict
        if a.is_di:
            assert a.iterate_set == b.iterate_set
        elif a.witness.reason == "SquareIterate":
            assert a.witness.value == b.witness.value
            assert list(a.witness.chain) == list(b.witness.chain)


def test_brute_force_examples():
    assert brute_force_check(inst(*F5_TRIPLE()), 4).all_irreducible
    F3 = field(3)
    res = brute_force_check(inst(Q(F3, 0, 1)), 6)
    assert res.all_irreducible and res.depth == 6 and res.checked == 6


def test_brute_force_guard():
    F13 = field(13)
    with pytest.raises(GuardExceeded):
        brute_force_check(inst(*F13_TRIPLE()), 13)
    many = inst(*[Q(F13, b, 2) for b in range(13)])
    with pytest.raises(GuardExceeded):
        brute_force_check(many, 6)


def test_order_independence_and_heredity():
    for triple in (F5_TRIPLE(), F13_TRIPLE()):
        base = closure_test(inst(*triple))
        for perm in itertools.permutations(triple):
            rep = closure_test(inst(*perm))
            assert rep.verdict is Verdict.DI
            assert rep.iterate_set == base.iterate_set
        for k in (1, 2):
            for sub in itertools.combinations(triple, k):
                assert closure_test(inst(*sub)).is_di


def test_order_independence_of_verdicts_exhaustive_f7():
    from dynirr.search import enumerate_irreducible_quads

    cands = enumerate_irreducible_quads(field(7))
    for trio in itertools.combinations(cands[:12], 3):
        verdicts = {closure_test(inst(*perm)).verdict for perm in itertools.permutations(trio)}
        assert len(verdicts) == 1


def test_witness_replay_on_random_sets():
    rng = random.Random(2)
    for ctx in (field(5), field(7), field(11), field(3, 2), field(5, 2), field(5, 3)):
        for _ in range(50):
            polys = [MonicQuad(ctx.random_element(rng), ctx.random_element(rng)) for _ in range(rng.randint(1, 4))]
            i = DISetInstance(ctx, tuple(polys))
            rep = closure_test(i)
            keys = [x.key() for x in rep.iterate_set]
            assert keys == sorted(set(keys))
            if rep.is_di:
                assert rep.witness is None
                if len(i) >= 2:
                    assert len(rep.iterate_set) <= bound_B(ctx)
            else:
                assert verify_witness(i, rep.witness)


def test_report_json():
    rep = closure_test(inst(*F5_TRIPLE()))
    data = json.loads(rep.to_json())
    assert data == {
        "field": "p=5 d=1",
        "verdict": "DynamicallyIrreducible",
        "iterate_set": ["2", "3"],
        "witness": None,
        "stats": {"sq_tests": 6, "insertions": 2, "rounds": 1},
    }
    F5 = field(5)
    bad = json.loads(closure_test(inst(Q(F5, 0, 3), Q(F5, 1, 3))).to_json())
    assert bad["witness"] == {"reason": "SquareIterate", "chain": [1, 0], "j": 0, "value": "4"}


def test_gamma_examples():
    ctx = field(13)
    u, b = ctx(5), ctx(2)
    rep = gamma_two_to_one(inst(MonicQuad(b, u), MonicQuad(2 * u - b, u)))
    assert rep.max_fiber == 2
    assert gamma_two_to_one(inst(MonicQuad(b, u))).max_fiber == 1
    with pytest.raises(CommonCViolated):
        gamma_two_to_one(inst(Q(ctx, 0, 2), Q(ctx, 0, 5)))


def test_gamma_all_b_triples_f13():
    ctx = field(13)
    for u in ctx.elements():
        for bs in itertools.combinations(ctx.elements(), 3):
            rep = gamma_two_to_one(inst(*[MonicQuad(b, u) for b in bs]))
            assert rep.max_fiber <= 2
            if rep.iterate_size is not None:
                assert rep.r <= 2 * rep.iterate_size
