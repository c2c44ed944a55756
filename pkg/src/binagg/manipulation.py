"""Manipulation predicates and exhaustive witness search.

A voter manipulates when lying about their evaluation moves the social
outcome somewhere they prefer, judged against their *true* opinion.
Three nested notions of "prefer" are implemented: gaining on at least
one issue (partial), gaining on some issue while losing on none (full),
and strictly reducing the weighted Hamming distance to the truth
(hamming).  Every full manipulation is a hamming manipulation under
every weight vector, and every hamming manipulation is partial.

The search engine scans all (profile, voter, lie) triples in canonical
order - profiles lexicographic by rows, voters ascending, lies in
ascending mask order - so the first witness found is a deterministic
function of the inputs, independent of any internal schedule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .aggregators import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    Rule,
    iter_profiles,
    outcome_table,
    profile_count,
)
from .metric import uniform_weights, validate_weights, weighted_hamming
from .spaces import EvaluationSpace, bit_at, is_between, to_bits

KINDS = ("partial", "full", "hamming")

#: per-issue relation of the lied outcome to the truthful one, seen from
#: the liar's true opinion
GAINED = "+"
LOST = "-"
UNCHANGED = "="


def issue_relation(x: int, z: int, w: int, issue: int, m: int) -> str:
    """How issue ``issue`` moved for a voter with true opinion x.

    z is the truthful outcome, w the outcome after the lie.  Returns
    GAINED when w matches x where z did not, UNCHANGED when w and z
    agree, LOST otherwise.
    """
    wj, zj, xj = bit_at(w, issue, m), bit_at(z, issue, m), bit_at(x, issue, m)
    if wj == zj:
        return UNCHANGED
    return GAINED if wj == xj else LOST


def relation_string(x: int, z: int, w: int, m: int) -> str:
    return "".join(issue_relation(x, z, w, j, m) for j in range(1, m + 1))


@dataclass(frozen=True)
class Deviation:
    """Which manipulation predicates an outcome change satisfies."""

    partial: bool
    full: bool
    hamming: bool


def classify_deviation(x: int, z: int, w: int, weights: Sequence[int] | None = None, m: int | None = None) -> Deviation:
    """Classify the move z -> w for a voter whose true opinion is x.

    The flags are computed independently but always satisfy the chain
    full => hamming (for any positive weights) => partial.
    """
    partial = (z ^ x) & ~(w ^ x) != 0
    full = w != z and (w ^ x) & (w ^ z) == 0
    hamming = weighted_hamming(x, w, weights, m) < weighted_hamming(x, z, weights, m)
    return Deviation(partial, full, hamming)


@dataclass(frozen=True)
class ManipulationWitness:
    """A concrete (profile, voter, lie) triple certifying a manipulation."""

    m: int
    profile: tuple[int, ...]
    voter: int
    lie: int
    truthful: int
    lied: int
    kind: str
    weights: tuple[int, ...] | None = None

    @property
    def true_opinion(self) -> int:
        return self.profile[self.voter - 1]

    def relations(self) -> str:
        return relation_string(self.true_opinion, self.truthful, self.lied, self.m)

    def report(self) -> str:
        m = self.m
        x = self.true_opinion
        lines = [f"voter {self.voter} has a {self.kind} manipulation"]
        lines.append("profile:")
        for i, row in enumerate(self.profile, start=1):
            marker = "  (true opinion)" if i == self.voter else ""
            lines.append(f"  voter {i}: {to_bits(row, m)}{marker}")
        lines.append(f"lie:              {to_bits(self.lie, m)}")
        lines.append(f"truthful outcome: {to_bits(self.truthful, m)}")
        lines.append(f"lied outcome:     {to_bits(self.lied, m)}")
        lines.append(f"issue relations:  {self.relations()}  (+ gained, - lost, = unchanged)")
        w = self.weights
        dz = weighted_hamming(x, self.truthful, w, m)
        dw = weighted_hamming(x, self.lied, w, m)
        lines.append(f"d(true, truthful) = {dz}")
        lines.append(f"d(true, lied)     = {dw}")
        return "\n".join(lines)


def search_size(space: EvaluationSpace, n: int) -> int:
    """Number of (profile, voter, lie) probes in one exhaustive scan."""
    return profile_count(space, n) * n * space.size


def _validate_kind(kind: str, weights, m: int):
    if kind not in KINDS:
        raise ValueError(f"unknown manipulation kind {kind!r}; pick one of {KINDS}")
    if kind == "hamming":
        return validate_weights(weights, m) if weights is not None else uniform_weights(m)
    return None


def iter_witnesses(
    space: EvaluationSpace,
    rule: Rule,
    n: int,
    kind: str,
    weights: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[ManipulationWitness]:
    """Every witness of the given kind, in canonical scan order."""
    w = _validate_kind(kind, weights, space.m)
    required = search_size(space, n)
    if required > budget:
        raise BudgetExceededError(required, budget, f"manipulation search over {space.size}^{n} profiles")
    out = outcome_table(space, rule, n, budget)
    X = space.feasible
    S = len(X)
    strides = [S ** (n - 1 - i) for i in range(n)]
    m = space.m

    dist: dict[int, list[int]] = {}
    if kind == "hamming":
        for v in set(out):
            dist[v] = [weighted_hamming(x, v, w, m) for x in X]

    for pid, ridx, rows in iter_profiles(space, n):
        z = out[pid]
        for i in range(n):
            xi = rows[i]
            stride = strides[i]
            base = pid - ridx[i] * stride
            if kind == "hamming":
                dz = dist[z][ridx[i]]
            for yi in range(S):
                y = X[yi]
                if y == xi:
                    continue
                res = out[base + yi * stride]
                if res == z:
                    continue
                if kind == "hamming":
                    hit = dist[res][ridx[i]] < dz
                elif kind == "partial":
                    hit = (z ^ xi) & ~(res ^ xi) != 0
                else:
                    hit = (res ^ xi) & (res ^ z) == 0
                if hit:
                    yield ManipulationWitness(
                        m, rows, i + 1, y, z, res, kind, w if kind == "hamming" else None
                    )


def find_witness(
    space: EvaluationSpace,
    rule: Rule,
    n: int,
    kind: str,
    weights: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> ManipulationWitness | None:
    """Canonically first witness, or None when the rule is kind-free here."""
    return next(iter_witnesses(space, rule, n, kind, weights, budget), None)


@dataclass(frozen=True)
class Certification:
    """Verdict of an exhaustive manipulation hunt."""

    kind: str
    free: bool
    witness: ManipulationWitness | None


def certify(
    space: EvaluationSpace,
    rule: Rule,
    n: int,
    kind: str,
    weights: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Certification:
    witness = find_witness(space, rule, n, kind, weights, budget)
    return Certification(kind, witness is None, witness)


def certify_hamming_sweep(
    space: EvaluationSpace,
    rule_for_weights,
    n: int,
    weight_vectors: Sequence[Sequence[int]],
    budget: int = DEFAULT_BUDGET,
) -> list[tuple[tuple[int, ...], Certification]]:
    """Hamming certification across several weight vectors.

    ``rule_for_weights`` maps a weight vector to the rule under test, so
    distance-based rules can be rebuilt per vector.
    """
    results = []
    for wv in weight_vectors:
        w = validate_weights(wv, space.m)
        rule = rule_for_weights(w) if callable(rule_for_weights) else rule_for_weights
        results.append((w, certify(space, rule, n, "hamming", w, budget)))
    return results


# ---------------------------------------------------------------------------
# proof-diagnostic issue partition


def issue_partition(
    witness: ManipulationWitness,
    stage_truthful: int,
    stage_lied: int,
) -> dict[tuple[int, int], frozenset[int]]:
    """Split the issues by how the stage and corrected outputs moved.

    ``stage_truthful``/``stage_lied`` are the uncorrected per-issue stage
    outputs under the truthful and lied profiles.  The major index
    follows (true opinion vs stage outputs): 1 both agree, 2 the lie
    flipped the stage away from the voter, 3 the stage disagreed either
    way.  The minor index does the same against the corrected outcomes:
    1 both agree, 2 only the truthful outcome agrees, 3 only the lied
    one, 4 neither.  Monotone stages admit no other combination; inputs
    that violate that betweenness are rejected.
    """
    m = witness.m
    x = witness.true_opinion
    v, u = stage_truthful, stage_lied
    if not is_between(x, v, u):
        raise ValueError(
            "stage outputs are not consistent with a monotone stage: "
            f"{to_bits(v, m)} is not between the opinion and {to_bits(u, m)}"
        )
    fx, fy = witness.truthful, witness.lied
    cells: dict[tuple[int, int], set[int]] = {(t, k): set() for t in (1, 2, 3) for k in (1, 2, 3, 4)}
    for j in range(1, m + 1):
        xj, vj, uj = bit_at(x, j, m), bit_at(v, j, m), bit_at(u, j, m)
        if xj == vj:
            t = 1 if vj == uj else 2
        else:
            t = 3
        fxj, fyj = bit_at(fx, j, m), bit_at(fy, j, m)
        if fxj == xj:
            k = 1 if fyj == xj else 2
        else:
            k = 3 if fyj == xj else 4
        cells[(t, k)].add(j)
    return {key: frozenset(issues) for key, issues in cells.items()}
