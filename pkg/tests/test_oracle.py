"""Brute-force oracles: examples, self-consistency, budgets."""

import pytest

import wtap
from wtap.generators import fig2_link_groups
from wtap.oracle import BudgetExceededError, OracleBudget, _min_cover_python


def test_exact_opt_examples(single_edge, star_ab):
    assert wtap.exact_opt(single_edge).weight == 5
    assert wtap.exact_opt(star_ab).weight == 3
    inst = wtap.gen_fig2(3, 5)
    sol = wtap.exact_opt(inst)
    groups = fig2_link_groups(inst)
    assert sol.weight == 18
    assert sorted(sol.link_ids) == sorted(groups["long"] + groups["leafpair"])


def test_exact_opt_budget():
    inst = wtap.gen_random(n=8, link_count=10, weight_max=3, seed=1)
    with pytest.raises(BudgetExceededError):
        wtap.exact_opt(inst, OracleBudget(max_links=4))


def test_exact_opt_kernel_matches_python_fallback():
    for seed in range(30):
        inst = wtap.gen_random(n=2 + seed % 8, link_count=seed % 8,
                               weight_max=6, seed=9000 + seed)
        kernel = wtap.exact_opt(inst)
        masks = list(inst.link_paths)
        weights = [lk.weight for lk in inst.links]
        w, mask = _min_cover_python(masks, weights, inst.full_edge_mask)
        assert kernel.weight == w
        got = 0
        for lid in kernel.link_ids:
            got |= 1 << lid
        assert got == mask


def test_brute_uplink_cover_examples(path3, star_ab):
    assert wtap.brute_uplink_cover(path3)[0] == 7
    assert wtap.brute_uplink_cover(star_ab)[0] == 6
    # brute witness partitions the edges
    inst = wtap.gen_random(n=9, link_count=8, weight_max=5, seed=3)
    w, paths = wtap.brute_uplink_cover(inst)
    seen = 0
    for p in paths:
        mask = inst.index.vertical_edge_mask(p.top, p.bottom)
        assert mask & seen == 0
        seen |= mask
    assert seen == inst.full_edge_mask
    assert sum(p.weight for p in paths) == w


def test_brute_best_kthin_singleton(single_edge):
    up = [wtap.uplink_from_link(single_edge, 0)]
    from wtap.component_dp import original_search_links, uplink_search_links
    search = original_search_links(single_edge) + uplink_search_links(up)
    res = wtap.brute_best_kthin(single_edge, up, 1, search)
    assert res.rho == 1


def test_oracle_self_consistency():
    for seed in range(60):
        inst = wtap.gen_random(n=2 + seed % 9, link_count=(seed * 3) % 10,
                               weight_max=7, seed=9300 + seed)
        opt = wtap.exact_opt(inst)
        two = wtap.two_approx_only(inst)
        assert opt.weight <= two.weight <= 2 * opt.weight
