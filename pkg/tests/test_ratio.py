"""Binary-search ratio minimization against the exhaustive oracle."""

import math
from fractions import Fraction

import pytest

import wtap
from wtap.component_dp import original_search_links, uplink_search_links
from wtap.generators import fig2_link_groups, fig2_reference_cover
from wtap.oracle import OracleBudget
from wtap.ratio import EmptyUError


def _search_for(inst, uplinks):
    return original_search_links(inst) + uplink_search_links(uplinks)


def test_single_edge_ratio_one(single_edge):
    up = [wtap.uplink_from_link(single_edge, 0)]
    res = wtap.best_ratio_component(single_edge, up, 1, _search_for(single_edge, up))
    assert res.rho == 1
    assert res.weight == res.drop_weight == 5


def test_empty_u_rejected(single_edge):
    with pytest.raises(EmptyUError):
        wtap.best_ratio_component(single_edge, [], 1, [])


def test_fig2_reference_ratios():
    inst = wtap.gen_fig2(3, 5)
    uplinks = fig2_reference_cover(inst)
    groups = fig2_link_groups(inst)
    search = _search_for(inst, uplinks)
    res2 = wtap.best_ratio_component(inst, uplinks, 2, search)
    assert res2.rho == Fraction(1, 2)
    assert sorted(sl.label[1] for sl in res2.links) == sorted(
        groups["long"] + groups["leafpair"])
    assert res2.certificate == (18, 36)
    assert len(res2.drop_indices) == 6
    res1 = wtap.best_ratio_component(inst, uplinks, 1, search)
    assert res1.rho == 1


def test_decide_examples():
    inst = wtap.gen_fig2(3, 5)
    uplinks = fig2_reference_cover(inst)
    search = _search_for(inst, uplinks)
    ok, witness = wtap.decide(inst, uplinks, 2, Fraction(1), search)
    assert ok and witness.cmask != 0
    ok, _ = wtap.decide(inst, uplinks, 2, Fraction(0), search)
    assert not ok
    ok, _ = wtap.decide(inst, uplinks, 2, Fraction(1, 4), search)
    assert not ok
    ok, _ = wtap.decide(inst, uplinks, 2, Fraction(1, 2), search)
    assert ok


def test_decide_monotone_in_rho():
    for seed in range(25):
        inst = wtap.gen_random(n=3 + seed % 7, link_count=seed % 7,
                               weight_max=5, seed=6000 + seed)
        uplinks = list(wtap.cheapest_disjoint_uplink_cover(inst).paths)
        if not uplinks:
            continue
        search = _search_for(inst, uplinks)
        answers = [wtap.decide(inst, uplinks, 2, Fraction(i, 8), search)[0]
                   for i in range(9)]
        # once True, stays True
        first = answers.index(True)
        assert all(answers[first:])


def test_matches_exhaustive_minimum():
    budget = OracleBudget(max_links=13)
    for seed in range(100):
        inst = wtap.gen_random(n=2 + seed % 8, link_count=(seed * 3) % 9,
                               weight_max=6, seed=6200 + seed)
        uplinks = list(wtap.cheapest_disjoint_uplink_cover(inst).paths)
        if not uplinks:
            continue
        search = _search_for(inst, uplinks)
        if len(search) > 12:
            continue
        for k in (1, 2, 3):
            got = wtap.best_ratio_component(inst, uplinks, k, search)
            want = wtap.brute_best_kthin(inst, uplinks, k, search, budget)
            assert got.rho == want.rho
            # cross-multiplied optimality of the returned witness
            assert (got.weight * want.drop_weight
                    <= want.weight * got.drop_weight)
            # returned witness attains its ratio exactly
            assert Fraction(got.weight, got.drop_weight) == got.rho


def test_iteration_bound():
    for seed in range(40):
        inst = wtap.gen_random(n=3 + seed % 9, link_count=seed % 9,
                               weight_max=9, seed=6400 + seed)
        uplinks = list(wtap.cheapest_disjoint_uplink_cover(inst).paths)
        if not uplinks:
            continue
        w_u = sum(p.weight for p in uplinks)
        res = wtap.best_ratio_component(inst, uplinks, 2,
                                        _search_for(inst, uplinks))
        bound = (math.ceil(math.log2(w_u * w_u)) + 1) if w_u > 1 else 1
        assert res.halvings <= bound


def test_result_invariants():
    inst = wtap.gen_fig2(4, 10)
    uplinks = list(wtap.cheapest_disjoint_uplink_cover(inst).paths)
    res = wtap.best_ratio_component(inst, uplinks, 2, _search_for(inst, uplinks))
    assert res.links
    assert res.rho == Fraction(res.weight, res.drop_weight)
    idx = inst.index
    cover = 0
    for sl in res.links:
        cover |= idx.path_edge_mask(sl.a, sl.b)
    for i, p in enumerate(uplinks):
        inside = idx.vertical_edge_mask(p.top, p.bottom) & ~cover == 0
        assert inside == (i in res.drop_indices)
