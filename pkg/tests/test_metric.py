"""Distances, nearest-neighbor sets, tie orders and the crossing audit."""

import pytest
from hypothesis import given, strategies as st

from binagg.fixtures import four_candidate_tie_order
from binagg.metric import (
    TieOrder,
    check_h2,
    nn_select,
    nn_set,
    uniform_weights,
    validate_weights,
    weighted_hamming,
)
from binagg.spaces import builtin_space, from_bits, interval

masks6 = st.integers(0, 63)
weights6 = st.tuples(*([st.integers(1, 5)] * 6))


# ---------------------------------------------------------------------------
# weighted distance


def test_distance_examples():
    assert weighted_hamming(from_bits("011111"), from_bits("110110")) == 3
    assert weighted_hamming(from_bits("101"), from_bits("101"), (3, 2, 1)) == 0
    assert weighted_hamming(from_bits("101"), from_bits("110"), (3, 2, 1)) == 3


def test_weight_validation():
    with pytest.raises(ValueError):
        validate_weights((1, 0, 1), 3)
    with pytest.raises(ValueError):
        validate_weights((1, -2, 1), 3)
    with pytest.raises(ValueError):
        validate_weights((1.5, 1, 1), 3)
    with pytest.raises(ValueError):
        validate_weights((1, 1), 3)
    assert uniform_weights(4) == (1, 1, 1, 1)


@given(masks6, masks6, weights6)
def test_metric_symmetry_and_identity(a, b, w):
    assert weighted_hamming(a, b, w) == weighted_hamming(b, a, w)
    assert (weighted_hamming(a, b, w) == 0) == (a == b)


@given(masks6, masks6, masks6, weights6)
def test_metric_triangle(a, b, c, w):
    assert weighted_hamming(a, c, w) <= weighted_hamming(a, b, w) + weighted_hamming(b, c, w)


@given(masks6, masks6, weights6)
def test_betweenness_additivity(a, b, w):
    for c in interval(a, b, 6):
        assert weighted_hamming(a, c, w) + weighted_hamming(c, b, w) == weighted_hamming(a, b, w)


# ---------------------------------------------------------------------------
# nearest-neighbor sets


def test_nn_set_four_candidates():
    """The two quoted majority outputs have unique nearest neighbors.

    Both points sit in more than one infeasible subcube, and only the
    issue shared by all their covering patterns can be flipped into the
    space; every other single flip leaves some pattern intact.
    """
    p4 = builtin_space("pref4")
    assert nn_set(p4, from_bits("111110")) == (from_bits("110110"),)
    assert nn_set(p4, from_bits("111010")) == (from_bits("011010"),)


def test_nn_set_identity_on_feasible():
    p3 = builtin_space("pref3")
    for x in p3.feasible:
        assert nn_set(p3, x) == (x,)
        assert nn_select(p3, x, tie=TieOrder.descending(p3)) == x


def test_nn_set_nonempty_equidistant(all_builtin_spaces):
    for _, space in all_builtin_spaces:
        for wv in (None, (2,) + (1,) * (space.m - 1)):
            for p in space.infeasible():
                cands = nn_set(space, p, wv)
                assert cands
                dists = {weighted_hamming(p, c, wv, space.m) for c in cands}
                assert len(dists) == 1


def oracle_nn_select(space, p, weights, tie):
    ranked = sorted(
        space.feasible,
        key=lambda x: (weighted_hamming(p, x, weights, space.m), tie.rank(x) if tie else x),
    )
    return ranked[0]


def test_nn_select_matches_full_scan_oracle(all_builtin_spaces):
    for name, space in all_builtin_spaces:
        ties = [None, TieOrder.ascending(space), TieOrder.descending(space), TieOrder.shuffled(space, 7)]
        for wv in (None, (2,) + (1,) * (space.m - 1)):
            for tie in ties:
                for p in space.infeasible():
                    assert nn_select(space, p, wv, tie) == oracle_nn_select(space, p, wv, tie), name


def test_nn_select_tie_orders():
    p3 = builtin_space("pref3")
    # 111 ties at distance one with three candidates
    assert nn_select(p3, 0b111) == 0b011
    assert nn_select(p3, 0b111, tie=TieOrder.descending(p3)) == 0b110
    p4 = builtin_space("pref4")
    quoted = four_candidate_tie_order()
    assert nn_select(p4, from_bits("111110"), tie=quoted) == from_bits("110110")
    assert nn_select(p4, from_bits("111110")) == from_bits("110110")


def test_nn_select_deterministic(all_builtin_spaces):
    for _, space in all_builtin_spaces:
        tie = TieOrder.shuffled(space, 99)
        first = [nn_select(space, p, None, tie) for p in space.infeasible()]
        second = [nn_select(space, p, None, tie) for p in space.infeasible()]
        assert first == second


# ---------------------------------------------------------------------------
# tie orders


def test_tie_order_validation():
    p3 = builtin_space("pref3")
    with pytest.raises(ValueError):
        TieOrder(p3, p3.feasible[:-1])
    with pytest.raises(ValueError):
        TieOrder(p3, p3.feasible + (0b111,))
    asc = TieOrder.ascending(p3)
    assert asc.rank(p3.feasible[0]) == 0
    assert asc.best([0b110, 0b001]) == 0b001
    assert TieOrder.descending(p3).best([0b110, 0b001]) == 0b110


def test_tie_order_shuffle_deterministic():
    p3 = builtin_space("pref3")
    assert TieOrder.shuffled(p3, 5).ranking == TieOrder.shuffled(p3, 5).ranking


# ---------------------------------------------------------------------------
# crossing audit


def test_fixed_order_selectors_pass_h2(all_builtin_spaces):
    for name, space in all_builtin_spaces:
        for tie in (TieOrder.ascending(space), TieOrder.descending(space), TieOrder.shuffled(space, 3)):
            ok, witness = check_h2(lambda p, t=tie: nn_select(space, p, None, t), space)
            assert ok and witness is None, name


def test_h2_disjoint_sets_cannot_cross():
    p3 = builtin_space("pref3")
    # the two infeasible points have disjoint nearest sets, so any
    # valid selector passes
    picks = {0b111: 0b110, 0b000: 0b001}
    ok, witness = check_h2(picks.__getitem__, p3)
    assert ok and witness is None


def test_h2_detects_crossing():
    doc = builtin_space("doctrinal")
    # 011 and 110 share the nearest candidates 010 and 111; resolving
    # them to different shared members is exactly a crossing
    crossing = {
        0b001: 0b000,
        0b011: 0b010,
        0b101: 0b100,
        0b110: 0b111,
    }
    ok, witness = check_h2(crossing.__getitem__, doc)
    assert not ok
    a, b, alpha, beta = witness
    assert {alpha, beta} == {0b010, 0b111}
    assert {a, b} == {0b011, 0b110}


def test_h2_rejects_non_nearest_selector():
    p3 = builtin_space("pref3")
    with pytest.raises(ValueError, match="not a nearest-neighbor selector"):
        check_h2(lambda p: 0b001, p3)
