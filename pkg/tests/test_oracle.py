"""Brute-force ground truth: enumeration, densities, progressions, counts.

Everything in this module is independent of the container machinery, so
its values can safely anchor the contract tests elsewhere.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypercontainers.errors import InputError, LimitError, PreconditionError
from hypercontainers.hypergraph import Hypergraph, ids_from, mask_from
from hypercontainers.instances import ap_hypergraph
from hypercontainers.oracle import (
    CountReport,
    automorphism_count,
    binomial_inequality_violations,
    check_binomial_inequalities,
    count_free_graphs,
    count_independent_sets,
    count_independent_sets_scan,
    count_independent_sets_threaded,
    count_profile,
    density_epsilon,
    exact_binomial,
    extremal_number,
    independence_number,
    independent_sets,
    maximal_independent_sets,
    mc_szemeredi,
    szemeredi_check,
    varnavides_count,
)

K3 = Hypergraph(2, 3, [(1, 2), (1, 3), (2, 3)])
C4 = Hypergraph(2, 4, [(1, 2), (2, 3), (3, 4), (1, 4)])


def test_independent_sets_of_ap5():
    H = ap_hypergraph(5, 3)
    sets = {ids_from(m) for m in independent_sets(H)}
    assert () in sets
    assert (1, 2, 4, 5) in sets
    assert (1, 2, 3) not in sets
    # sizes: 1 empty + 5 singletons + 10 pairs + 6 triples + 1 quadruple
    assert len(sets) == 23


def test_count_profile_frozen():
    assert count_profile(ap_hypergraph(5, 3)) == {0: 1, 1: 5, 2: 10, 3: 6, 4: 1}
    assert count_profile(ap_hypergraph(10, 3)) == {
        0: 1,
        1: 10,
        2: 45,
        3: 100,
        4: 98,
        5: 24,
    }


def test_count_independent_sets_frozen():
    H = ap_hypergraph(5, 3)
    assert count_independent_sets(H, 3) == 6
    assert count_independent_sets(H, 4) == 1
    assert count_independent_sets(H, 5) == 0


def test_every_enumerated_set_is_independent_and_none_missing():
    H = ap_hypergraph(9, 3)
    masks = list(independent_sets(H))
    assert len(set(masks)) == len(masks)
    for m in masks:
        assert H.is_independent(m)
    # cross-check the total against the direct bitmask scan
    total = sum(1 for m in range(1 << H.v) if H.is_independent(m))
    assert len(masks) == total


def test_scan_and_backtracking_agree():
    for n in (6, 8, 11):
        H = ap_hypergraph(n, 3)
        for m in range(0, 5):
            assert count_independent_sets(H, m) == count_independent_sets_scan(H, m)


def test_threaded_count_agrees():
    H = ap_hypergraph(10, 3)
    for threads in (2, 4):
        assert count_independent_sets_threaded(H, 4, threads) == 98


def test_maximal_independent_sets():
    H = ap_hypergraph(5, 3)
    maximal = {ids_from(m) for m in maximal_independent_sets(H)}
    assert (1, 2, 4, 5) in maximal
    for ids in maximal:
        m = mask_from(ids)
        assert H.is_independent(m)
        for u in range(1, 6):
            if not m & (1 << (u - 1)):
                assert not H.is_independent(m | (1 << (u - 1)))
    # every independent set extends to a maximal one
    for im in independent_sets(H):
        assert any(im & ~mask_from(ids) == 0 for ids in maximal)


@pytest.mark.parametrize(
    "n,alpha", [(8, 4), (9, 5), (10, 5), (11, 6), (12, 6), (13, 7), (14, 8)]
)
def test_independence_number_table(n, alpha):
    assert independence_number(ap_hypergraph(n, 3)) == alpha


def test_density_epsilon_frozen():
    H = ap_hypergraph(10, 3)
    assert density_epsilon(H, 6) == Fraction(1, 20)
    assert density_epsilon(H, 10) == 1
    # s at or below the independence number leaves an edgeless witness
    assert density_epsilon(H, 5) == 0


def test_density_positive_exactly_above_independence_number():
    for n in (6, 8, 10):
        H = ap_hypergraph(n, 3)
        alpha = independence_number(H)
        assert density_epsilon(H, alpha) == 0
        assert density_epsilon(H, alpha + 1) > 0


def test_density_epsilon_validation():
    H = ap_hypergraph(6, 3)
    with pytest.raises(InputError):
        density_epsilon(H, 9)
    with pytest.raises(PreconditionError):
        density_epsilon(Hypergraph(2, 4), 2)


def test_exhaustive_limit_is_a_hard_refusal():
    wide = Hypergraph(2, 23, [(1, 2)])
    with pytest.raises(LimitError):
        list(independent_sets(wide))
    with pytest.raises(LimitError):
        independence_number(wide)
    # raising the limit explicitly is the documented override
    assert independence_number(wide, limit=23) == 22


def test_varnavides_count_examples():
    assert varnavides_count(range(1, 6), 3) == 4
    assert varnavides_count([1, 2, 4, 8], 3) == 0
    assert varnavides_count(range(1, 5), 2) == 6  # every pair
    assert varnavides_count([3, 5, 7], 3) == 1
    with pytest.raises(InputError):
        varnavides_count([1, 2, 3], 1)


def test_szemeredi_check_at_the_known_threshold():
    # the largest 3-AP-free subset of [10] has five elements,
    # e.g. {1, 2, 4, 8, 9}, so the check flips between s = 5 and s = 6
    assert szemeredi_check(range(1, 11), Fraction(3, 5), 3)
    assert not szemeredi_check(range(1, 11), Fraction(1, 2), 3)
    assert varnavides_count([1, 2, 4, 8, 9], 3) == 0


def test_szemeredi_check_small_shapes():
    assert not szemeredi_check([1, 2, 3], Fraction(1, 3), 3)  # s = 1 < k
    assert szemeredi_check([1, 2, 3], Fraction(1), 3)
    assert not szemeredi_check([], Fraction(1, 2), 3)
    with pytest.raises(InputError):
        szemeredi_check([1, 2, 3], Fraction(0), 3)
    with pytest.raises(InputError):
        szemeredi_check([1, 2, 3], Fraction(1, 2), 1)


def test_szemeredi_check_subset_budget():
    with pytest.raises(LimitError):
        szemeredi_check(range(1, 61), Fraction(1, 2), 3, max_subsets=10**6)


def test_mc_rate_is_exact_at_the_endpoints():
    up = mc_szemeredi(12, Fraction(1), Fraction(7, 12), 3, trials=20, seed=5)
    assert up.rate == 1
    assert up.hits == up.trials == 20
    down = mc_szemeredi(12, Fraction(0), Fraction(7, 12), 3, trials=20, seed=5)
    assert down.rate == 0


def test_mc_is_reproducible_and_seed_sensitive():
    a = mc_szemeredi(10, Fraction(1, 2), Fraction(1, 2), 3, trials=40, seed=9)
    b = mc_szemeredi(10, Fraction(1, 2), Fraction(1, 2), 3, trials=40, seed=9)
    assert a == b
    c = mc_szemeredi(10, Fraction(1, 2), Fraction(1, 2), 3, trials=40, seed=10)
    assert (a.hits, a.seed) != (c.hits, c.seed)


def test_mc_report_payload():
    rep = mc_szemeredi(6, Fraction(1, 3), Fraction(1, 2), 3, trials=8, seed=1)
    data = rep.to_json_dict()
    assert data["p"] == "1/3"
    assert data["generator"] == "python-random-mt19937"
    assert data["hits"] == rep.hits
    assert 0 <= rep.rate <= 1


def test_mc_validation():
    with pytest.raises(InputError):
        mc_szemeredi(10, Fraction(3, 2), Fraction(1, 2), 3, trials=5, seed=0)
    with pytest.raises(InputError):
        mc_szemeredi(0, Fraction(1, 2), Fraction(1, 2), 3, trials=5, seed=0)
    with pytest.raises(InputError):
        mc_szemeredi(10, Fraction(1, 2), Fraction(1, 2), 3, trials=0, seed=0)


def test_automorphism_counts():
    assert automorphism_count(K3) == 6
    assert automorphism_count(C4) == 8
    assert automorphism_count(Hypergraph(2, 3, [(1, 2), (2, 3)])) == 2
    # vertex 3 sits in all four edges; the leftover pairs {1,2}, {2,4},
    # {4,5}, {1,5} form a 4-cycle, whose dihedral group all extends
    assert automorphism_count(ap_hypergraph(5, 3)) == 8


def test_extremal_numbers_for_triangles():
    assert extremal_number(4, K3) == 4
    assert extremal_number(5, K3) == 6
    for n in range(3, 8):
        assert extremal_number(n, K3) == n * n // 4


def test_count_free_graphs_frozen():
    assert count_free_graphs(4, 4, K3) == 3
    # one edge can never close a triangle
    assert count_free_graphs(4, 1, K3) == 6
    with pytest.raises(InputError):
        count_free_graphs(4, 1, K3, t=3)


def test_exact_binomial_matches_math():
    for a in range(0, 12):
        for b in range(0, 14):
            assert exact_binomial(a, b) == math.comb(a, b)
    with pytest.raises(InputError):
        exact_binomial(-1, 2)


def test_binomial_inequalities_on_a_grid():
    assert binomial_inequality_violations(30) == []


def test_binomial_inequalities_shape():
    out = check_binomial_inequalities(10, 4, 2)
    assert set(out) == {"entropy_bound", "index_shift", "top_shrink", "top_swap"}
    assert all(out.values())
    with pytest.raises(InputError):
        check_binomial_inequalities(3, 5, 1)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 40), st.integers(0, 40), st.integers(0, 40))
def test_binomial_inequalities_property(x, y, z):
    a, b, c = sorted((x, y, z), reverse=True)
    assert all(check_binomial_inequalities(a, b, c).values())


def test_count_report_round_trip_and_csv():
    rep = CountReport(
        params={"what": "demo"}, counts={0: 1, 2: 5, 1: 3}, wall_time_s=1.25
    )
    data = rep.to_json_dict()
    assert data["counts"] == [
        {"m": 0, "count": 1},
        {"m": 1, "count": 3},
        {"m": 2, "count": 5},
    ]
    assert "wall_time_s" not in data
    assert rep.to_csv_text().splitlines() == ["m,count", "0,1", "1,3", "2,5"]


def test_count_report_equality_ignores_wall_time():
    a = CountReport(params={}, counts={1: 1}, wall_time_s=0.5)
    b = CountReport(params={}, counts={1: 1}, wall_time_s=2.5)
    assert a == b


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9), st.integers(0, 4))
def test_count_matches_enumeration_property(n, m):
    H = ap_hypergraph(n, 3)
    by_walk = sum(1 for mask in independent_sets(H) if mask.bit_count() == m)
    assert count_independent_sets(H, m) == by_walk
