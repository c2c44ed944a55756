"""Named verification suites with deterministic pass/fail reports.

Each suite re-derives one published result at desk scale: either an
exact reproduction of a worked example (``tables``) or an exhaustive
hunt whose expected outcome is "no witness exists" or "this specific
witness exists".  Reports are plain data; rendering them with
:func:`format_report` yields byte-identical output across runs, so
timing lives in the report object but never in the rendered text.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

from . import fixtures
from .aggregators import (
    IiaStage,
    NearestNeighborRule,
    Plurality,
    StageRule,
    TableRule,
    WelfareMaximizer,
    check_structural,
    committee_tie_order,
    issuewise_majority,
    iter_profiles,
    monotone_tables,
    outcome_table,
    swm_topk,
)
from .fastsweep import all_stage_products_hamming_free, stage_product_count
from .manipulation import ManipulationWitness, certify, classify_deviation, find_witness
from .metric import TieOrder, uniform_weights, weighted_hamming
from .spaces import builtin_space, choose_space, mipe_type, to_bits


@dataclass(frozen=True)
class CheckResult:
    label: str
    passed: bool
    evidence: str


@dataclass
class SuiteReport:
    name: str
    checks: list[CheckResult] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def format_report(report: SuiteReport) -> str:
    """Deterministic text rendering (runtime intentionally omitted)."""
    lines = [f"suite {report.name}"]
    for c in report.checks:
        tag = "pass" if c.passed else "FAIL"
        lines.append(f"  [{tag}] {c.label}: {c.evidence}")
    good = sum(1 for c in report.checks if c.passed)
    verdict = "PASS" if report.passed else "FAIL"
    lines.append(f"result: {verdict} ({good}/{len(report.checks)} checks)")
    return "\n".join(lines)


def _witness_line(w: ManipulationWitness) -> str:
    m = w.m
    rows = ",".join(to_bits(r, m) for r in w.profile)
    return (
        f"profile {rows}; voter {w.voter} lies {to_bits(w.lie, m)}: "
        f"outcome {to_bits(w.truthful, m)} -> {to_bits(w.lied, m)}"
    )


def _expect(label: str, expected: str, actual: str) -> CheckResult:
    return CheckResult(label, expected == actual, f"expected {expected}, got {actual}")


# ---------------------------------------------------------------------------
# tables


def _suite_tables() -> list[CheckResult]:
    checks = []
    p3 = builtin_space("pref3")
    doc = builtin_space("doctrinal")
    maj3 = IiaStage.majority(3, 3)

    checks.append(
        _expect("three-alternative majority cycle", "111", to_bits(maj3.apply(fixtures.condorcet_rows()), 3))
    )
    checks.append(
        _expect(
            "conjunction-space majority paradox",
            "110",
            to_bits(maj3.apply(fixtures.conjunction_paradox_rows()), 3),
        )
    )

    plu = Plurality(p3)
    s1, s2, _s3 = fixtures.plurality_scenarios()
    lied_rows = s1["rows"][:1] + (s1["lie"],) + s1["rows"][2:]
    checks.append(_expect("plurality, cyclic profile", "110", to_bits(plu(s1["rows"]), 3)))
    checks.append(_expect("plurality, after the lie", "101", to_bits(plu(lied_rows), 3)))
    checks.append(_expect("plurality, second profile", "101", to_bits(plu(s2["rows"]), 3)))

    case = fixtures.four_candidate_case()
    space = case["space"]
    maj6 = IiaStage.majority(3, 6)
    tie = fixtures.four_candidate_tie_order()
    rule = NearestNeighborRule(space, maj6, tie=tie)
    lied_rows4 = case["rows"][:1] + (case["lie"],) + case["rows"][2:]
    checks.append(
        _expect("four-candidate majority, truthful", "111110", to_bits(maj6.apply(case["rows"]), 6))
    )
    checks.append(
        _expect("four-candidate corrected outcome, truthful", "110110", to_bits(rule(case["rows"]), 6))
    )
    checks.append(
        _expect("four-candidate majority, after the lie", "111010", to_bits(maj6.apply(lied_rows4), 6))
    )
    checks.append(
        _expect("four-candidate corrected outcome, after the lie", "011010", to_bits(rule(lied_rows4), 6))
    )

    sep = fixtures.welfare_separation_case()
    swm = WelfareMaximizer(sep["space"])
    checks.append(
        _expect("welfare maximizer, 3/2/4 profile", "000111", to_bits(swm(sep["rows_unbalanced"]), 6))
    )
    checks.append(
        _expect("welfare maximizer, 3/3/3 profile", "001000", to_bits(swm(sep["rows_balanced"]), 6))
    )
    checks.append(
        _expect(
            "issue-wise majority, 3/2/4 profile",
            "000000",
            to_bits(issuewise_majority(sep["rows_unbalanced"], 6), 6),
        )
    )
    checks.append(
        _expect(
            "issue-wise majority, 3/3/3 profile",
            "000000",
            to_bits(issuewise_majority(sep["rows_balanced"], 6), 6),
        )
    )
    return checks


# ---------------------------------------------------------------------------
# partition rules are full-manipulation-free


def _suite_prop41() -> list[CheckResult]:
    checks = []
    for name, space in fixtures.battery_spaces():
        for n in (2, 3):
            witnesses = []
            rules = fixtures.partition_battery(space, n)
            for rule in rules:
                cert = certify(space, rule, n, "full")
                if not cert.free:
                    witnesses.append((rule.name, cert.witness))
            if witnesses:
                rn, w = witnesses[0]
                checks.append(
                    CheckResult(f"partition rules on {name}, n={n}", False, f"{rn}: {_witness_line(w)}")
                )
            else:
                checks.append(
                    CheckResult(
                        f"partition rules on {name}, n={n}",
                        True,
                        f"{len(rules)} partitions, 0 full-manipulation witnesses",
                    )
                )
    return checks


# ---------------------------------------------------------------------------
# partial manipulation: consistent monotone per-issue rules and nothing else


def _suite_thm31() -> list[CheckResult]:
    checks = []
    doc = builtin_space("doctrinal")
    unanimous = StageRule(doc, IiaStage.unanimity(3, 3), name="quota:3,3,3")
    outputs = outcome_table(doc, unanimous, 3)
    consistent = all(v in doc for v in outputs)
    cert = certify(doc, unanimous, 3, "partial")
    checks.append(
        CheckResult(
            "consistent unanimity stage is partial-free",
            consistent and cert.free,
            f"all {len(outputs)} outputs feasible, 0 partial witnesses",
        )
    )

    p3 = builtin_space("pref3")
    w = find_witness(p3, Plurality(p3), 3, "partial")
    checks.append(
        CheckResult(
            "plurality (profile-global rule) is partially manipulable",
            w is not None,
            _witness_line(w) if w else "no witness found",
        )
    )

    corrected = NearestNeighborRule(p3, IiaStage.majority(3, 3))
    iia_report = check_structural(p3, corrected, 3, "iia")
    w2 = find_witness(p3, corrected, 3, "partial")
    checks.append(
        CheckResult(
            "corrected majority breaks issue-independence and partial-freeness",
            (not iia_report.holds) and w2 is not None,
            _witness_line(w2) if w2 else "no witness found",
        )
    )

    pick1 = choose_space(2, 1)

    def minority(rows):
        yes_first = sum(1 for r in rows if r == 0b10)
        return 0b10 if yes_first < len(rows) - yes_first else 0b01

    anti = TableRule(pick1, minority, "minority")
    mono_report = check_structural(pick1, anti, 3, "monotone")
    w3 = find_witness(pick1, anti, 3, "partial")
    checks.append(
        CheckResult(
            "anti-majority (non-monotone quota flip) is partially manipulable",
            (not mono_report.holds) and w3 is not None,
            _witness_line(w3) if w3 else "no witness found",
        )
    )
    return checks


# ---------------------------------------------------------------------------
# corrected monotone stages are full-manipulation-free


def _suite_thm42() -> list[CheckResult]:
    checks = []
    for name, space in fixtures.battery_spaces():
        stages = (IiaStage.majority(3, space.m),) + fixtures.sampled_stages(3, space.m, 5)
        combos = 0
        anon_checked = 0
        failure = None
        for stage in stages:
            for tie in fixtures.tie_battery(space):
                for wv in fixtures.weight_battery(space.m):
                    rule = NearestNeighborRule(space, stage, wv, tie)
                    cert = certify(space, rule, 3, "full")
                    combos += 1
                    if not cert.free and failure is None:
                        failure = (tie, wv, cert.witness)
                    if stage.is_anonymous:
                        rep = check_structural(space, rule, 3, "anonymous")
                        anon_checked += 1
                        if not rep.holds and failure is None:
                            failure = (tie, wv, None)
        if failure:
            tie, wv, w = failure
            evidence = f"tie={tie.name} weights={wv}: " + (_witness_line(w) if w else "anonymity broken")
            checks.append(CheckResult(f"corrected stages on {name}", False, evidence))
        else:
            checks.append(
                CheckResult(
                    f"corrected stages on {name}",
                    True,
                    f"{combos} stage/tie/weight configurations, 0 full witnesses; "
                    f"anonymity verified for {anon_checked} anonymous-stage configurations",
                )
            )
    return checks


# ---------------------------------------------------------------------------
# the welfare maximizer is full-manipulation-free and anonymous


def _suite_thm43() -> list[CheckResult]:
    checks = []
    rng = random.Random(fixtures.RANDOM_SWEEP_SEED + 1)
    for name, space in fixtures.battery_spaces():
        failure = None
        combos = 0
        for wv in fixtures.weight_battery(space.m):
            for tie in (TieOrder.ascending(space), TieOrder.descending(space)):
                rule = WelfareMaximizer(space, wv, tie)
                cert = certify(space, rule, 3, "full")
                combos += 1
                if not cert.free and failure is None:
                    failure = (tie, wv, cert.witness)
        if failure:
            tie, wv, w = failure
            checks.append(
                CheckResult(
                    f"welfare maximizer on {name}", False, f"tie={tie.name} weights={wv}: {_witness_line(w)}"
                )
            )
        else:
            checks.append(
                CheckResult(
                    f"welfare maximizer on {name}",
                    True,
                    f"{combos} weight/tie configurations, 0 full witnesses",
                )
            )
        # row-permutation invariance, exhaustive plus randomized
        rule = WelfareMaximizer(space, uniform_weights(space.m), TieOrder.ascending(space))
        rep = check_structural(space, rule, 3, "anonymous")
        bad = 0
        for _ in range(200):
            rows = [rng.choice(space.feasible) for _ in range(5)]
            shuffled = rows[:]
            rng.shuffle(shuffled)
            if rule(rows) != rule(shuffled):
                bad += 1
        checks.append(
            CheckResult(
                f"welfare maximizer anonymity on {name}",
                rep.holds and bad == 0,
                "exhaustive n=3 plus 200 random 5-voter permutations, 0 violations",
            )
        )
    return checks


# ---------------------------------------------------------------------------
# harvested correction witnesses: interval emptiness and type inequality


def _interval_meets_space(space, v: int, u: int) -> bool:
    span = v ^ u
    for x in space.feasible:
        if (v ^ x) & ~span == 0:
            return True
    return False


def _lemma_pair_ok(space, v: int, u: int) -> tuple[bool, bool]:
    """(interval empty, types differ) for one stage-output pair."""
    empty = not _interval_meets_space(space, v, u)
    if space.is_feasible(v) or space.is_feasible(u):
        return empty, False
    return empty, mipe_type(space, v) != mipe_type(space, u)


@lru_cache(maxsize=1)
def _lemma_harvest():
    """All correction-witness stage pairs from the two harvest modes."""
    space = builtin_space("pref4")
    m = space.m
    uniform = uniform_weights(m)

    # exhaustive: corrected majority under the worked example's tie order
    stage = IiaStage.majority(3, m)
    tie = fixtures.four_candidate_tie_order()
    rule = NearestNeighborRule(space, stage, uniform, tie)
    out = outcome_table(space, rule, 3)
    stage_out = [stage.apply(rows) for _, _, rows in iter_profiles(space, 3)]
    X = space.feasible
    S = len(X)
    dist = {}
    for v in set(out):
        dist[v] = [weighted_hamming(x, v) for x in X]
    exhaustive_pairs = set()
    exhaustive_hits = 0
    strides = [S ** (2 - i) for i in range(3)]
    for pid, ridx, rows in iter_profiles(space, 3):
        z = out[pid]
        for i in range(3):
            stride = strides[i]
            base = pid - ridx[i] * stride
            dz = dist[z][ridx[i]]
            for yi in range(S):
                if X[yi] == rows[i]:
                    continue
                qid = base + yi * stride
                w = out[qid]
                if w == z:
                    continue
                if dist[w][ridx[i]] < dz:
                    exhaustive_hits += 1
                    exhaustive_pairs.add((stage_out[pid], stage_out[qid]))

    # randomized: stage, tie, weights and deviation all sampled
    rng = random.Random(fixtures.RANDOM_SWEEP_SEED)
    tabs = monotone_tables(3)
    ties = fixtures.tie_battery(space, extra=tie)
    rank_maps = [t.rank_map for t in ties]
    weight_options = fixtures.weight_battery(m)
    dist_tables = {}
    for wv in weight_options:
        dist_tables[wv] = [[weighted_hamming(p, x, wv, m) for x in X] for p in range(1 << m)]
    random_pairs = set()
    random_hits = 0
    configs = 100_000
    for _ in range(configs):
        tables = tuple(rng.choice(tabs) for _ in range(m))
        stage = IiaStage(3, tables)
        rank = rank_maps[rng.randrange(len(rank_maps))]
        wv = weight_options[rng.randrange(len(weight_options))]
        table = dist_tables[wv]
        rows = tuple(X[rng.randrange(S)] for _ in range(3))
        voter = rng.randrange(3)
        lie = X[rng.randrange(S)]
        if lie == rows[voter]:
            continue
        lied_rows = rows[:voter] + (lie,) + rows[voter + 1 :]
        v = stage.apply(rows)
        u = stage.apply(lied_rows)
        z = _rank_min_nn(space, v, table, rank)
        w = _rank_min_nn(space, u, table, rank)
        xi = rows[voter]
        if table[w][space.index(xi)] < table[z][space.index(xi)]:
            random_hits += 1
            random_pairs.add((v, u))
    return dict(
        space=space,
        exhaustive_pairs=sorted(exhaustive_pairs),
        exhaustive_hits=exhaustive_hits,
        random_pairs=sorted(random_pairs),
        random_hits=random_hits,
        configs=configs,
    )


def _rank_min_nn(space, point: int, dist_table, rank) -> int:
    """Nearest feasible point, ties by the given rank map."""
    if point in space:
        return point
    row = dist_table[point]
    best = None
    best_key = None
    for xi, x in enumerate(space.feasible):
        key = (row[xi], rank[x])
        if best_key is None or key < best_key:
            best_key = key
            best = x
    return best


def _lemma_checks(which: str) -> list[CheckResult]:
    data = _lemma_harvest()
    space = data["space"]
    checks = []
    for mode in ("exhaustive", "random"):
        pairs = data[f"{mode}_pairs"]
        hits = data[f"{mode}_hits"]
        bad = []
        for v, u in pairs:
            empty, differ = _lemma_pair_ok(space, v, u)
            ok = empty if which == "interval" else differ
            if not ok:
                bad.append((v, u))
        label = {
            "exhaustive": "every witness of the corrected majority, worked-example tie order",
            "random": f"randomized correction sweep ({data['configs']} configurations)",
        }[mode]
        prop = "interval(v,u) avoids the space" if which == "interval" else "subcube types differ"
        if bad:
            v, u = bad[0]
            checks.append(
                CheckResult(
                    f"{label}: {prop}",
                    False,
                    f"{len(bad)} violations, first at v={to_bits(v, space.m)} u={to_bits(u, space.m)}",
                )
            )
        else:
            checks.append(
                CheckResult(
                    f"{label}: {prop}",
                    True,
                    f"{hits} witnesses over {len(pairs)} distinct stage-output pairs, 0 violations",
                )
            )
    return checks


def _suite_lemma54() -> list[CheckResult]:
    return _lemma_checks("interval")


def _suite_lemma55() -> list[CheckResult]:
    return _lemma_checks("types")


# ---------------------------------------------------------------------------
# three alternatives: every corrected monotone stage is hamming-free


def _suite_claim56() -> list[CheckResult]:
    space = builtin_space("pref3")
    total = stage_product_count(space, 3)
    checks = []
    for tie in fixtures.tie_battery(space):
        for wv in fixtures.weight_battery(space.m):
            found = all_stage_products_hamming_free(space, 3, wv, tie)
            if found is None:
                checks.append(
                    CheckResult(
                        f"all stages, tie={tie.name}, weights={wv}",
                        True,
                        f"{total} corrected stages exhaustively hunted, 0 hamming witnesses",
                    )
                )
            else:
                sid, tables, probe = found
                checks.append(
                    CheckResult(
                        f"all stages, tie={tie.name}, weights={wv}",
                        False,
                        f"stage #{sid} tables={tables} has a witness at probe {probe}",
                    )
                )
    return checks


# ---------------------------------------------------------------------------
# four alternatives: the corrected majority is hamming-manipulable


def _suite_claim57() -> list[CheckResult]:
    checks = []
    case = fixtures.four_candidate_case()
    space = case["space"]
    stage = IiaStage.majority(3, 6)
    quoted_tie = fixtures.four_candidate_tie_order()

    rule = NearestNeighborRule(space, stage, tie=quoted_tie)
    w = find_witness(space, rule, 3, "hamming")
    checks.append(
        CheckResult(
            "corrected majority, worked-example tie order: witness exists",
            w is not None,
            _witness_line(w) if w else "no witness found",
        )
    )

    lied_rows = case["rows"][:1] + (case["lie"],) + case["rows"][2:]
    z = rule(case["rows"])
    u = rule(lied_rows)
    x2 = case["rows"][1]
    dev = classify_deviation(x2, z, u)
    dz, dw = weighted_hamming(x2, z), weighted_hamming(x2, u)
    ok = (
        z == case["corrected_truthful"]
        and u == case["corrected_lied"]
        and dev.hamming
        and (dz, dw) == (3, 2)
    )
    checks.append(
        CheckResult(
            "the quoted deviation is a hamming witness",
            ok,
            f"outcome {to_bits(z, 6)} -> {to_bits(u, 6)}, distance {dz} -> {dw}",
        )
    )

    for tie in fixtures.tie_battery(space):
        w2 = find_witness(space, NearestNeighborRule(space, stage, tie=tie), 3, "hamming")
        outcome = _witness_line(w2) if w2 else "FREE"
        checks.append(
            CheckResult(f"hunt outcome under tie={tie.name}", True, outcome)
        )
    return checks


# ---------------------------------------------------------------------------
# committee selection: the welfare maximizer is hamming-free


def _suite_claim58() -> list[CheckResult]:
    checks = []
    for name in ("choose4-2", "choose5-2"):
        space = builtin_space(name)
        tie = committee_tie_order(space)
        rule = WelfareMaximizer(space, uniform_weights(space.m), tie)
        cert = certify(space, rule, 3, "hamming")
        checks.append(
            CheckResult(
                f"welfare maximizer on {name} is hamming-free",
                cert.free,
                "exhaustive hunt, 0 witnesses" if cert.free else _witness_line(cert.witness),
            )
        )
        mismatches = 0
        count = 0
        for _, _, rows in iter_profiles(space, 3):
            count += 1
            if rule(rows) != swm_topk(space, rows):
                mismatches += 1
        checks.append(
            CheckResult(
                f"welfare maximizer matches top-approval selection on {name}",
                mismatches == 0,
                f"{count} profiles compared, {mismatches} mismatches",
            )
        )
    return checks


# ---------------------------------------------------------------------------
# registry


_SUITES = {
    "tables": _suite_tables,
    "prop4.1": _suite_prop41,
    "thm3.1": _suite_thm31,
    "thm4.2": _suite_thm42,
    "thm4.3": _suite_thm43,
    "lemma5.4": _suite_lemma54,
    "lemma5.5": _suite_lemma55,
    "claim5.6": _suite_claim56,
    "claim5.7": _suite_claim57,
    "claim5.8": _suite_claim58,
}


def suite_names() -> tuple[str, ...]:
    return tuple(_SUITES)


def run_suite(name: str) -> SuiteReport:
    """Run one named suite and return its report."""
    try:
        fn = _SUITES[name]
    except KeyError:
        known = ", ".join(_SUITES)
        raise ValueError(f"unknown suite {name!r} (known: {known})") from None
    start = time.perf_counter()
    checks = fn()
    return SuiteReport(name, checks, time.perf_counter() - start)
