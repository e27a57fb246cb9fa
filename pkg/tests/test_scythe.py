"""The reduction step and its bookkeeping: threshold tables, orders, pruning.

The frozen numbers here were computed by hand from the defining
recurrences on instances small enough to check by hand.
"""

from fractions import Fraction

import pytest

from hypercontainers.errors import ContractError, InputError
from hypercontainers.hypergraph import Hypergraph, ids_from, mask_from
from hypercontainers.instances import ap_hypergraph
from hypercontainers.scythe import (
    high_degree_sets,
    max_degree_order,
    scythe_step,
    threshold_table,
)


def test_threshold_table_base_row_is_the_degree_sequence():
    H = ap_hypergraph(12, 3)
    t = threshold_table(H, Fraction(1, 2))
    assert t.get(1, 3) == 10
    assert t.get(2, 3) == 3
    assert t.get(3, 3) == 1


def test_threshold_table_recursion_by_hand():
    # lower rows take max(2 * up-right, p * up) from the row above
    H = ap_hypergraph(12, 3)
    t = threshold_table(H, Fraction(1, 2))
    assert t.get(1, 2) == max(2 * t.get(2, 3), Fraction(1, 2) * t.get(1, 3)) == 6
    assert t.get(2, 2) == max(2 * t.get(3, 3), Fraction(1, 2) * t.get(2, 3)) == 2
    assert t.get(1, 1) == max(2 * t.get(2, 2), Fraction(1, 2) * t.get(1, 2)) == 4


def test_threshold_table_entries_are_exact_rationals():
    H = ap_hypergraph(10, 3)
    t = threshold_table(H, Fraction(1, 3))
    assert t.get(1, 1) == max(
        2 * max(2 * 1, Fraction(1, 3) * t.get(2, 3)),
        Fraction(1, 3) * max(2 * t.get(2, 3), Fraction(1, 3) * t.get(1, 3)),
    )
    for (size, level), val in t.entries.items():
        assert isinstance(val, Fraction)
        assert 1 <= size <= level <= 3


@pytest.mark.parametrize("p", [Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-1, 4)])
def test_threshold_table_rejects_bad_rates(p):
    with pytest.raises(InputError):
        threshold_table(ap_hypergraph(5, 3), p)


def test_threshold_table_bounds_lookup():
    t = threshold_table(ap_hypergraph(5, 3), Fraction(1, 2))
    with pytest.raises(InputError):
        t.get(3, 2)
    with pytest.raises(InputError):
        t.get(0, 1)
    with pytest.raises(InputError):
        t.get(1, 4)


def test_max_degree_order_recomputes_in_the_shrinking_graph():
    # path 1-2-3-4: after 2 leaves, vertex 3 still has an edge but 1 does not
    P = Hypergraph(2, 4, [(1, 2), (2, 3), (3, 4)])
    assert max_degree_order(P).ordering == (2, 3, 1, 4)


def test_max_degree_order_breaks_ties_toward_smaller_ids():
    # all degrees tie at 1; picking 1 isolates 2, which then waits with
    # the other degree-zero vertices and comes out by id
    H = Hypergraph(2, 4, [(1, 2), (3, 4)])
    assert max_degree_order(H).ordering == (1, 3, 2, 4)


def test_max_degree_order_respects_live_mask():
    P = Hypergraph(2, 4, [(1, 2), (2, 3), (3, 4)])
    order = max_degree_order(P, live=(1, 2, 3))
    assert set(order.ordering) == {1, 2, 3}
    # edge (3,4) leaves the live set, so 2 still tops the order
    assert order.ordering[0] == 2
    with pytest.raises(InputError):
        max_degree_order(P, live=(4, 5))


def test_max_degree_order_prefix():
    P = Hypergraph(2, 4, [(1, 2), (2, 3), (3, 4)])
    order = max_degree_order(P)
    assert order.prefix(2) == (2,)
    assert order.prefix(1) == (2, 3, 1)


def test_high_degree_sets_against_hand_degrees():
    H = ap_hypergraph(5, 3)
    t = threshold_table(H, Fraction(1, 2))
    # level 3 thresholds are the max degrees themselves (thr(1) = 4);
    # every vertex of ap(5,3) has degree 2 or 4, so 2*deg >= 4 everywhere
    hot = high_degree_sets(H, 1, t, 3)
    assert hot == {(1,), (2,), (3,), (4,), (5,)}
    hot2 = high_degree_sets(H, 2, t, 3)
    assert (1, 3) in hot2 and (3, 5) in hot2


def test_high_degree_sets_uniformity_guard():
    H = ap_hypergraph(5, 3)
    t = threshold_table(H, Fraction(1, 2))
    with pytest.raises(InputError):
        high_degree_sets(H, 1, t, 2)


def test_high_degree_sets_zero_threshold_flags_everything():
    empty = Hypergraph(2, 3)
    t = threshold_table(empty, Fraction(1, 2))
    assert high_degree_sets(empty, 1, t, 2) == {(1,), (2,), (3,)}


def frozen_step(imask_ids, b=3):
    H = ap_hypergraph(7, 3)
    t = threshold_table(H, Fraction(1, 2))
    return H, scythe_step(H, imask_ids, t, b, level=2)


def test_scythe_step_picks_stay_inside_the_independent_set():
    _, res = frozen_step((1, 2, 6))
    assert set(res.picks) <= {1, 2, 6}
    assert not res.picks_mask & res.survivors


def test_scythe_step_covers_the_independent_set():
    H, res = frozen_step((1, 2, 6))
    imask = mask_from((1, 2, 6))
    assert imask & ~(res.survivors | res.picks_mask) == 0


def test_scythe_step_early_stop_shape():
    H, res = frozen_step((4,), b=5)
    assert res.stopped_early
    assert res.survivors == 0
    assert res.reduced.e == 0
    assert res.picks == (4,)


def test_scythe_step_reduced_level_is_one_lower():
    H, res = frozen_step((1, 2, 6))
    assert res.reduced.k == 2
    assert res.reduced.vertex_mask == H.vertex_mask


def test_scythe_step_reduced_edges_come_from_picked_links():
    H, res = frozen_step((1,), b=1)
    link = H.vertex_link(res.picks[0])
    assert dict(res.reduced.edges) == link


def test_scythe_step_is_deterministic():
    _, a = frozen_step((1, 2, 6))
    _, b = frozen_step((1, 2, 6))
    assert a == b


def test_scythe_step_validates_inputs():
    H = ap_hypergraph(7, 3)
    t = threshold_table(H, Fraction(1, 2))
    with pytest.raises(InputError):
        scythe_step(H, (1,), t, 3, level=3)  # H is 3-uniform, level 3 needs k=4
    with pytest.raises(InputError):
        scythe_step(H, (1,), t, 0, level=2)
    with pytest.raises(InputError):
        scythe_step(H, (99,), t, 3, level=2)
    with pytest.raises(ContractError):
        scythe_step(H, (1, 2, 3), t, 3, level=2)  # 1,2,3 spans an edge


def test_scythe_chain_feeds_the_next_level():
    """Two manual steps, k = 3 down to the 1-uniform end."""
    H = ap_hypergraph(7, 3)
    t = threshold_table(H, Fraction(1, 2))
    I = (1, 2, 6)
    top = scythe_step(H, I, t, 4, level=2)
    assert top.reduced.k == 2
    nxt = scythe_step(top.reduced, I, t, 4, level=1)
    assert nxt.reduced.k == 1
    # picks at both levels stay inside I and the joint cover holds
    joint = top.picks_mask | nxt.picks_mask
    assert joint & ~mask_from(I) == 0


def test_scythe_step_prunes_high_degree_carriers():
    """Every reduced edge must avoid subsets that crossed their threshold
    strictly before the iteration that created the edge."""
    H = ap_hypergraph(12, 3)
    t = threshold_table(H, Fraction(1, 4))
    res = scythe_step(H, (1, 2, 10, 12), t, 3, level=2)
    if res.reduced.e:
        for size in (1, 2):
            thr = t.get(size, 2)
            for sub, d in res.reduced.degree_index(size).items():
                # surviving degrees may touch the threshold but the step
                # removes an edge as soon as its subset is flagged, so
                # nothing should sit far above it
                assert 2 * d <= 2 * thr
