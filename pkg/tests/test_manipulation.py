"""Manipulation predicates, the exhaustive scanner and the issue partition."""

import pytest
from hypothesis import given, strategies as st

from binagg.aggregators import (
    BudgetExceededError,
    Dictator,
    IiaStage,
    NearestNeighborRule,
    Partition,
    Plurality,
    WelfareMaximizer,
)
from binagg.fixtures import four_candidate_case, four_candidate_tie_order, plurality_scenarios
from binagg.manipulation import (
    GAINED,
    LOST,
    UNCHANGED,
    ManipulationWitness,
    certify,
    certify_hamming_sweep,
    classify_deviation,
    find_witness,
    issue_partition,
    issue_relation,
    iter_witnesses,
    relation_string,
    search_size,
)
from binagg.metric import weighted_hamming
from binagg.spaces import builtin_space, from_bits

masks6 = st.integers(0, 63)
weights6 = st.tuples(*([st.integers(1, 4)] * 6))


# ---------------------------------------------------------------------------
# per-issue relations


def test_issue_relation_examples():
    x, z, w = from_bits("011"), from_bits("101"), from_bits("001")
    assert issue_relation(x, z, w, 1, 3) == GAINED
    assert issue_relation(x, z, w, 2, 3) == UNCHANGED
    x2, z2, w2 = from_bits("011"), from_bits("110"), from_bits("101")
    assert issue_relation(x2, z2, w2, 2, 3) == LOST


def test_relation_string_four_candidates():
    x = from_bits("011111")
    z = from_bits("110110")
    w = from_bits("011010")
    assert relation_string(x, z, w, 6) == "+=+-=="


# ---------------------------------------------------------------------------
# deviation classification


def test_classify_published_scenarios():
    for scenario in plurality_scenarios():
        x = scenario["rows"][scenario["voter"] - 1]
        dev = classify_deviation(x, scenario["truthful"], scenario["lied"])
        assert dev.partial == scenario["partial"]
        assert dev.full == scenario["full"]
        assert dev.hamming == scenario["hamming"]


def test_unchanged_outcome_is_no_manipulation():
    x, z = from_bits("011"), from_bits("110")
    dev = classify_deviation(x, z, z)
    assert not (dev.partial or dev.full or dev.hamming)


@given(masks6, masks6, masks6, weights6)
def test_implication_chain(x, z, w, wv):
    dev = classify_deviation(x, z, w, wv)
    plain = classify_deviation(x, z, w)
    if dev.full:
        assert dev.hamming and plain.hamming
    if dev.hamming:
        assert dev.partial


@given(masks6, masks6, masks6)
def test_full_means_no_losses(x, z, w):
    dev = classify_deviation(x, z, w)
    rel = relation_string(x, z, w, 6)
    assert dev.partial == (GAINED in rel)
    assert dev.full == (GAINED in rel and LOST not in rel)


# ---------------------------------------------------------------------------
# exhaustive search


def test_dictator_free_of_everything(all_builtin_spaces):
    for _, space in all_builtin_spaces:
        rule = Dictator(space, 1)
        for kind in ("partial", "full", "hamming"):
            assert find_witness(space, rule, 2, kind) is None


def test_plurality_hamming_witness(pref3):
    witness = find_witness(pref3, Plurality(pref3), 3, "hamming")
    assert witness is not None
    x = witness.true_opinion
    assert weighted_hamming(x, witness.lied) < weighted_hamming(x, witness.truthful)


def test_published_second_scenario_is_hamming():
    """The quoted deviation on the second profile is a hamming witness."""
    pref3 = builtin_space("pref3")
    plu = Plurality(pref3)
    s2 = plurality_scenarios()[1]
    z = plu(s2["rows"])
    w = plu(s2["rows"][:1] + (s2["lie"],) + s2["rows"][2:])
    assert (z, w) == (s2["truthful"], s2["lied"])
    assert classify_deviation(s2["rows"][1], z, w).hamming


def test_corrected_majority_four_candidates_manipulable():
    case = four_candidate_case()
    rule = NearestNeighborRule(case["space"], IiaStage.majority(3, 6), tie=four_candidate_tie_order())
    assert find_witness(case["space"], rule, 3, "hamming") is not None
    assert find_witness(case["space"], rule, 3, "full") is None


def test_partition_certified_full_free(all_builtin_spaces):
    for _, space in all_builtin_spaces:
        rule = Partition(space, [set(range(1, space.m)), {space.m}])
        cert = certify(space, rule, 2, "full")
        assert cert.free and cert.witness is None


def test_search_canonical_first(pref3):
    rule = Plurality(pref3)
    first = find_witness(pref3, rule, 3, "partial")
    witnesses = iter_witnesses(pref3, rule, 3, "partial")
    assert next(witnesses) == first
    again = find_witness(pref3, rule, 3, "partial")
    assert again == first


def test_search_order_is_profile_voter_lie(pref3):
    seen = list(iter_witnesses(pref3, Plurality(pref3), 3, "partial"))
    keys = [(w.profile, w.voter, w.lie) for w in seen]
    assert keys == sorted(keys)


def test_budget_exceeded(pref3):
    with pytest.raises(BudgetExceededError) as exc:
        find_witness(pref3, Plurality(pref3), 3, "partial", budget=100)
    assert exc.value.required == search_size(pref3, 3) == 216 * 3 * 6


def test_unknown_kind(pref3):
    with pytest.raises(ValueError):
        find_witness(pref3, Plurality(pref3), 3, "sneaky")


def test_certify_hamming_sweep(pref3):
    results = certify_hamming_sweep(
        pref3,
        lambda w: NearestNeighborRule(pref3, IiaStage.majority(3, 3), w),
        3,
        [(1, 1, 1), (2, 1, 1)],
    )
    assert len(results) == 2
    assert all(cert.free for _, cert in results)


def test_witness_report_contents():
    case = four_candidate_case()
    rule = NearestNeighborRule(case["space"], IiaStage.majority(3, 6), tie=four_candidate_tie_order())
    lied = case["rows"][:1] + (case["lie"],) + case["rows"][2:]
    witness = ManipulationWitness(
        6, case["rows"], 2, case["lie"], rule(case["rows"]), rule(lied), "hamming", None
    )
    text = witness.report()
    assert "voter 2" in text
    assert "011011" in text
    assert "d(true, truthful) = 3" in text
    assert "d(true, lied)     = 2" in text
    assert "+=+-==" in text


# ---------------------------------------------------------------------------
# issue partition diagnostics


def test_issue_partition_four_candidate_witness():
    case = four_candidate_case()
    stage = IiaStage.majority(3, 6)
    rule = NearestNeighborRule(case["space"], stage, tie=four_candidate_tie_order())
    lied = case["rows"][:1] + (case["lie"],) + case["rows"][2:]
    witness = ManipulationWitness(
        6, case["rows"], 2, case["lie"], rule(case["rows"]), rule(lied), "hamming", None
    )
    cells = issue_partition(witness, stage.apply(case["rows"]), stage.apply(lied))
    all_issues = set()
    for issues in cells.values():
        assert not (all_issues & issues)
        all_issues |= issues
    assert all_issues == set(range(1, 7))
    moved_by_lie = cells[(2, 1)] | cells[(2, 2)] | cells[(2, 3)] | cells[(2, 4)]
    assert moved_by_lie == {4}


def test_issue_partition_no_stage_change_empties_middle(pref3):
    stage = IiaStage.majority(3, 3)
    rows = (0b110, 0b011, 0b101)
    witness = ManipulationWitness(3, rows, 1, 0b011, 0b011, 0b101, "partial", None)
    v = stage.apply(rows)
    cells = issue_partition(witness, v, v)
    assert not (cells[(2, 1)] | cells[(2, 2)] | cells[(2, 3)] | cells[(2, 4)])


def test_issue_partition_rejects_non_monotone_stage_outputs():
    witness = ManipulationWitness(3, (0b111, 0b110), 1, 0b110, 0b111, 0b110, "partial", None)
    # the truthful stage output disagrees with the opinion exactly where
    # the lied output agrees with it: impossible under a monotone stage
    with pytest.raises(ValueError):
        issue_partition(witness, 0b000, 0b111)


def test_welfare_full_free_small(all_builtin_spaces):
    for _, space in all_builtin_spaces:
        cert = certify(space, WelfareMaximizer(space), 2, "full")
        assert cert.free


def test_full_freeness_extends_to_four_voters(pref3):
    """The no-full-manipulation guarantees are voter-count independent."""
    almost_dictator = Partition(pref3, [{1, 2}, {3}, set(), set()])
    assert certify(pref3, almost_dictator, 4, "full").free
    corrected = NearestNeighborRule(pref3, IiaStage.majority(4, 3))
    assert certify(pref3, corrected, 4, "full").free
    doc = builtin_space("doctrinal")
    assert certify(doc, WelfareMaximizer(doc), 4, "full").free
