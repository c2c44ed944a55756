"""Worked-example data shared by the verification suites and tests.

Everything here is deterministic: seeded shuffles, explicit profiles,
and the exact issue orderings under which the published bit patterns
come out byte for byte.
"""

from __future__ import annotations

import random

from .aggregators import IiaStage, Partition, monotone_tables
from .metric import TieOrder, uniform_weights
from .spaces import EvaluationSpace, builtin_space, encode_order, explicit_space, from_bits

#: seed for the shuffled member of the tie-order battery
TIE_SHUFFLE_SEED = 20180921
#: seed for sampling monotone stages
STAGE_SAMPLE_SEED = 1812
#: seed for the randomized nearest-neighbor-correction sweep
RANDOM_SWEEP_SEED = 271828


# -- three-alternative preference profiles ----------------------------------


def condorcet_rows() -> tuple[int, ...]:
    """The classic cyclic three-voter profile; majority output is 111."""
    return (from_bits("110"), from_bits("011"), from_bits("101"))


def conjunction_paradox_rows() -> tuple[int, ...]:
    """Three judges whose per-issue majority violates the conjunction."""
    return (from_bits("010"), from_bits("100"), from_bits("111"))


def plurality_scenarios() -> tuple[dict, ...]:
    """The three worked plurality deviations on three alternatives.

    Each entry: truthful rows, lying voter, the lie, expected truthful
    and lied outcomes, and which manipulation kinds the move realizes.
    """
    return (
        dict(
            rows=(from_bits("110"), from_bits("011"), from_bits("101")),
            voter=2,
            lie=from_bits("101"),
            truthful=from_bits("110"),
            lied=from_bits("101"),
            partial=True,
            full=False,
            hamming=False,
        ),
        dict(
            rows=(from_bits("101"), from_bits("011"), from_bits("010")),
            voter=2,
            lie=from_bits("010"),
            truthful=from_bits("101"),
            lied=from_bits("010"),
            partial=True,
            full=False,
            hamming=True,
        ),
        dict(
            rows=(from_bits("101"), from_bits("011"), from_bits("001")),
            voter=2,
            lie=from_bits("001"),
            truthful=from_bits("101"),
            lied=from_bits("001"),
            partial=True,
            full=True,
            hamming=True,
        ),
    )


# -- four-alternative majority-correction example ----------------------------


def four_candidate_case() -> dict:
    """Three judges over four alternatives where the second judge gains.

    The truthful per-issue majority is 111110, corrected (uniquely) to
    110110; after the lie the majority is 111010, corrected (uniquely)
    to 011010, reducing judge 2's distance from 3 to 2.
    """
    space = builtin_space("pref4")
    rows = (
        encode_order(space, ("a", "b", "d", "c")),
        encode_order(space, ("b", "c", "a", "d")),
        encode_order(space, ("d", "c", "a", "b")),
    )
    lie = encode_order(space, ("b", "c", "d", "a"))
    return dict(
        space=space,
        rows=rows,
        voter=2,
        lie=lie,
        majority_truthful=from_bits("111110"),
        majority_lied=from_bits("111010"),
        corrected_truthful=from_bits("110110"),
        corrected_lied=from_bits("011010"),
    )


def preferred_first_tie_order(space: EvaluationSpace, first: int) -> TieOrder:
    """Rank one evaluation top, the rest in ascending mask order."""
    rest = [x for x in space.feasible if x != first]
    return TieOrder(space, [first] + rest, name="preferred-first")


def four_candidate_tie_order() -> TieOrder:
    """The tie order under which the four-candidate example is quoted."""
    case = four_candidate_case()
    return preferred_first_tie_order(case["space"], case["corrected_truthful"])


# -- welfare-maximizer separation example ------------------------------------


def welfare_separation_case() -> dict:
    """Two profiles with equal per-issue majority but different optima.

    Sizes 3/2/4 versus 3/3/3 over three fixed opinions: the issue-wise
    majority is 000000 for both, while the total-distance minimizer
    moves from 000111 to 001000.
    """
    space = explicit_space(6, ["110000", "001000", "000111"])
    first, second, third = from_bits("110000"), from_bits("001000"), from_bits("000111")
    return dict(
        space=space,
        rows_unbalanced=(first,) * 3 + (second,) * 2 + (third,) * 4,
        rows_balanced=(first,) * 3 + (second,) * 3 + (third,) * 3,
        optimum_unbalanced=from_bits("000111"),
        optimum_balanced=from_bits("001000"),
        issuewise=from_bits("000000"),
    )


# -- batteries ---------------------------------------------------------------


def battery_spaces() -> tuple[tuple[str, EvaluationSpace], ...]:
    """The standard desk-scale matrix of spaces for exhaustive hunts."""
    names = ("pref3", "doctrinal", "classifier4", "cycle6", "choose4-2")
    return tuple((n, builtin_space(n)) for n in names)


def weight_battery(m: int) -> tuple[tuple[int, ...], ...]:
    uniform = uniform_weights(m)
    front = (2,) + (1,) * (m - 1)
    back = (1,) * (m - 1) + (2,)
    return (uniform, front, back)


def tie_battery(space: EvaluationSpace, extra: TieOrder | None = None) -> tuple[TieOrder, ...]:
    orders = [
        TieOrder.ascending(space),
        TieOrder.descending(space),
        TieOrder.shuffled(space, TIE_SHUFFLE_SEED),
    ]
    if extra is not None:
        orders.append(extra)
    return tuple(orders)


def partition_battery(space: EvaluationSpace, n: int) -> tuple[Partition, ...]:
    """Representative issue partitions: almost-dictator, dictator-as-
    partition, a balanced contiguous split, and a strided split."""
    m = space.m
    issues = list(range(1, m + 1))
    layouts = []
    if m >= 2:
        layouts.append([issues[: m - 1], issues[m - 1 :]] + [[]] * (n - 2))
    layouts.append([issues] + [[]] * (n - 1))
    cut = max(1, m // n)
    contiguous = [issues[i * cut : (i + 1) * cut] for i in range(n - 1)]
    contiguous.append(issues[(n - 1) * cut :])
    layouts.append(contiguous)
    layouts.append([issues[i::n] for i in range(n)])
    rules = []
    seen = set()
    for blocks in layouts:
        key = tuple(tuple(sorted(b)) for b in blocks)
        if key in seen:
            continue
        seen.add(key)
        rules.append(Partition(space, blocks))
    return tuple(rules)


def sampled_stages(n: int, m: int, count: int, seed: int = STAGE_SAMPLE_SEED) -> tuple[IiaStage, ...]:
    """Deterministic sample of monotone per-issue stages."""
    tabs = monotone_tables(n)
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        pick = tuple(rng.choice(tabs) for _ in range(m))
        if pick in seen:
            continue
        seen.add(pick)
        out.append(IiaStage(n, pick))
    return tuple(out)
