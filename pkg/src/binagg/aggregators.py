"""Aggregation rules from voter profiles to social evaluations.

Two layers live here.  The first is the per-issue layer: an
:class:`IiaStage` decides every issue from that issue's column alone,
through an arbitrary monotone boolean function per issue (quota rules
are the anonymous special case).  Stage outputs may leave the feasible
set; that is the point.  The second layer is the rule zoo mapping
profiles to *feasible* outcomes: dictators, plurality, sequential
partition rules, nearest-neighbor-corrected stages, and the welfare
maximizer that minimizes total weighted distance to the voters.

All rules are immutable values: applying one never mutates it, and the
same inputs always produce the same output.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .metric import TieOrder, nn_select, validate_weights
from .spaces import EvaluationSpace, bit_at

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """An exhaustive run would exceed the configured evaluation budget."""

    def __init__(self, required: int, budget: int, context: str):
        self.required = required
        self.budget = budget
        super().__init__(f"{context} needs {required} evaluations, budget is {budget}")


# ---------------------------------------------------------------------------
# per-issue monotone stages


def _column_index(rows: Sequence[int], issue: int, m: int) -> int:
    """Pack one column of a profile into an int, voter 1 most significant."""
    n = len(rows)
    c = 0
    for i, r in enumerate(rows):
        c |= ((r >> (m - issue)) & 1) << (n - 1 - i)
    return c


class IiaStage:
    """Independent per-issue deciders, each a monotone function of n votes.

    ``tables[j]`` is the truth table of issue j+1's decider, indexed by
    the packed column (voter 1 most significant).
    """

    __slots__ = ("n", "tables")

    def __init__(self, n: int, tables: Sequence[int]):
        if n < 1:
            raise ValueError("stage arity must be at least 1")
        size = 1 << n
        for j, tab in enumerate(tables, start=1):
            if not 0 <= tab < (1 << size):
                raise ValueError(f"issue {j}: table out of range for arity {n}")
            if not _is_monotone_table(tab, n):
                raise ValueError(f"issue {j}: decider is not monotone")
        self.n = n
        self.tables = tuple(tables)

    @property
    def m(self) -> int:
        return len(self.tables)

    @classmethod
    def quota(cls, n: int, thresholds: Sequence[int]) -> "IiaStage":
        """Issue j passes when at least thresholds[j] voters say yes.

        Thresholds run 1..n+1; n+1 makes the issue constantly 0.
        """
        for j, t in enumerate(thresholds, start=1):
            if not 1 <= t <= n + 1:
                raise ValueError(f"issue {j}: threshold must be in 1..{n + 1}, got {t}")
        tables = [_quota_table(n, t) for t in thresholds]
        return cls(n, tables)

    @classmethod
    def majority(cls, n: int, m: int) -> "IiaStage":
        return cls.quota(n, [(n + 2) // 2] * m)

    @classmethod
    def unanimity(cls, n: int, m: int) -> "IiaStage":
        return cls.quota(n, [n] * m)

    def issue_bit(self, issue: int, column: int) -> int:
        return (self.tables[issue - 1] >> column) & 1

    def apply(self, rows: Sequence[int], m: int | None = None) -> int:
        """Stage output for a profile; may be infeasible."""
        if m is None:
            m = self.m
        elif m != self.m:
            raise ValueError(f"stage decides {self.m} issues, space has {m}")
        if len(rows) != self.n:
            raise ValueError(f"stage arity is {self.n}, profile has {len(rows)} rows")
        out = 0
        for j in range(1, m + 1):
            c = _column_index(rows, j, m)
            out |= self.issue_bit(j, c) << (m - j)
        return out

    @property
    def is_anonymous(self) -> bool:
        """True when every issue's decider depends on vote counts only."""
        for tab in self.tables:
            by_count: dict[int, int] = {}
            for c in range(1 << self.n):
                k = c.bit_count()
                bit = (tab >> c) & 1
                if by_count.setdefault(k, bit) != bit:
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, IiaStage) and (self.n, self.tables) == (other.n, other.tables)

    def __hash__(self):
        return hash((self.n, self.tables))

    def __repr__(self):
        return f"IiaStage(n={self.n}, m={self.m})"


def _quota_table(n: int, t: int) -> int:
    tab = 0
    for c in range(1 << n):
        if c.bit_count() >= t:
            tab |= 1 << c
    return tab


def _is_monotone_table(tab: int, n: int) -> bool:
    # flipping any single 0-vote to 1 must never drop the output
    for c in range(1 << n):
        if not (tab >> c) & 1:
            continue
        for b in range(n):
            if not (c >> b) & 1 and not (tab >> (c | (1 << b))) & 1:
                return False
    return True


@lru_cache(maxsize=None)
def monotone_tables(n: int) -> tuple[int, ...]:
    """Truth tables of all monotone boolean functions of n inputs, ascending."""
    if n > 4:
        raise ValueError("enumeration is practical for arity <= 4 only")
    return tuple(tab for tab in range(1 << (1 << n)) if _is_monotone_table(tab, n))


# ---------------------------------------------------------------------------
# rules


class Rule:
    """Base class: a deterministic map from profiles to evaluations."""

    #: outputs are guaranteed members of the feasible set
    always_feasible = True

    def __init__(self, space: EvaluationSpace, name: str):
        self.space = space
        self.name = name

    def __call__(self, rows: Sequence[int]) -> int:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r})"


class Dictator(Rule):
    def __init__(self, space: EvaluationSpace, voter: int):
        if voter < 1:
            raise ValueError(f"voter index is 1-based, got {voter}")
        super().__init__(space, f"dictator:{voter}")
        self.voter = voter

    def __call__(self, rows):
        if self.voter > len(rows):
            raise ValueError(f"profile has {len(rows)} voters, dictator is voter {self.voter}")
        return rows[self.voter - 1]


class StageRule(Rule):
    """A bare per-issue stage used as the rule itself; may output infeasible."""

    always_feasible = False

    def __init__(self, space: EvaluationSpace, stage: IiaStage, name: str | None = None):
        if stage.m != space.m:
            raise ValueError(f"stage decides {stage.m} issues, space has {space.m}")
        super().__init__(space, name or "stage")
        self.stage = stage

    def __call__(self, rows):
        return self.stage.apply(rows, self.space.m)


class Plurality(Rule):
    """Most frequent row wins; ties go to the tie-order-best tied row.

    Without an explicit tie order the greatest bit mask wins, which is
    the lexicographically greatest evaluation string.
    """

    def __init__(self, space: EvaluationSpace, tie: TieOrder | None = None):
        super().__init__(space, "plurality")
        self.tie = tie

    def __call__(self, rows):
        counts = Counter(rows)
        top = max(counts.values())
        tied = [r for r, c in counts.items() if c == top]
        if self.tie is None:
            return max(tied)
        return self.tie.best(tied)


class Partition(Rule):
    """Each voter owns a block of issues, decided sequentially.

    Issues are processed in ascending order; the owner's bit is taken
    unless it would make the prefix infeasible, in which case the
    opposite bit is forced (and is always feasible, by induction).
    """

    def __init__(self, space: EvaluationSpace, blocks: Sequence[Iterable[int]]):
        blocks = tuple(frozenset(b) for b in blocks)
        owner: dict[int, int] = {}
        for v, block in enumerate(blocks, start=1):
            for j in block:
                if not 1 <= j <= space.m:
                    raise ValueError(f"issue {j} out of range 1..{space.m}")
                if j in owner:
                    raise ValueError(f"issue {j} appears in two blocks")
                owner[j] = v
        if len(owner) != space.m:
            missing = sorted(set(range(1, space.m + 1)) - set(owner))
            raise ValueError(f"blocks must cover every issue; missing {missing}")
        name = "partition:" + ";".join(",".join(map(str, sorted(b))) for b in blocks)
        super().__init__(space, name)
        self.blocks = blocks
        self._owner = tuple(owner[j] for j in range(1, space.m + 1))

    def __call__(self, rows):
        if len(rows) != len(self.blocks):
            raise ValueError(f"rule partitions issues over {len(self.blocks)} voters, profile has {len(rows)}")
        space = self.space
        m = space.m
        prefix = 0
        for j in range(1, m + 1):
            want = bit_at(rows[self._owner[j - 1] - 1], j, m)
            candidate = (prefix << 1) | want
            if space.prefix_feasible(candidate, j):
                prefix = candidate
            else:
                prefix = (prefix << 1) | (1 - want)
                if not space.prefix_feasible(prefix, j):
                    raise AssertionError(f"both extensions infeasible at issue {j}")
        return prefix


class NearestNeighborRule(Rule):
    """A monotone per-issue stage whose output is snapped back into the space.

    Feasible stage outputs pass through unchanged; infeasible ones are
    replaced by their tie-order-minimal nearest neighbor under the
    rule's weights.
    """

    def __init__(
        self,
        space: EvaluationSpace,
        stage: IiaStage,
        weights: Sequence[int] | None = None,
        tie: TieOrder | None = None,
        name: str | None = None,
    ):
        if stage.m != space.m:
            raise ValueError(f"stage decides {stage.m} issues, space has {space.m}")
        super().__init__(space, name or "nn(stage)")
        self.stage = stage
        self.weights = None if weights is None else validate_weights(weights, space.m)
        self.tie = tie
        self._table: list[int] | None = None

    def correct(self, point: int) -> int:
        """The correction map alone: identity on the space, snap elsewhere."""
        if self._table is None:
            self._table = [
                nn_select(self.space, p, self.weights, self.tie) for p in range(1 << self.space.m)
            ]
        return self._table[point]

    def __call__(self, rows):
        return self.correct(self.stage.apply(rows, self.space.m))


class WelfareMaximizer(Rule):
    """Feasible outcome minimizing total weighted distance to all voters."""

    def __init__(
        self,
        space: EvaluationSpace,
        weights: Sequence[int] | None = None,
        tie: TieOrder | None = None,
    ):
        super().__init__(space, "swm")
        self.weights = None if weights is None else validate_weights(weights, space.m)
        self.tie = tie
        self._dist: list[list[int]] | None = None

    def _distances(self) -> list[list[int]]:
        if self._dist is None:
            from .metric import weighted_hamming

            X = self.space.feasible
            self._dist = [
                [weighted_hamming(a, b, self.weights, self.space.m) for b in X] for a in X
            ]
        return self._dist

    def __call__(self, rows):
        space = self.space
        dist = self._distances()
        ridx = [space.index(r) for r in rows]
        best = None
        best_key = None
        for vi, v in enumerate(space.feasible):
            row = dist[vi]
            total = 0
            for ri in ridx:
                total += row[ri]
            key = (total, self.tie.rank(v) if self.tie else v)
            if best_key is None or key < best_key:
                best_key = key
                best = v
        return best


class TableRule(Rule):
    """Arbitrary explicit rule; the escape hatch for counterexample rules."""

    def __init__(self, space: EvaluationSpace, fn: Callable[[tuple[int, ...]], int], name: str, always_feasible: bool = True):
        super().__init__(space, name)
        self._fn = fn
        self.always_feasible = always_feasible

    def __call__(self, rows):
        return self._fn(tuple(rows))


# ---------------------------------------------------------------------------
# committee selection shortcuts


def _committee_size(space: EvaluationSpace) -> int:
    sizes = {x.bit_count() for x in space.feasible}
    if len(sizes) != 1:
        raise ValueError("not a fixed-size committee space")
    k = sizes.pop()
    import math

    if len(space.feasible) != math.comb(space.m, k):
        raise ValueError("not a full fixed-size committee space")
    return k


def column_sums(rows: Sequence[int], m: int) -> tuple[int, ...]:
    return tuple(sum((r >> (m - j)) & 1 for r in rows) for j in range(1, m + 1))


def swm_topk(space: EvaluationSpace, rows: Sequence[int], candidate_order: Sequence[int] | None = None) -> int:
    """Committee of the k most-approved candidates (fixed-size spaces only).

    Ties between equally approved candidates go to the earlier candidate
    in ``candidate_order`` (1-based; identity by default).  Equals the
    welfare maximizer under uniform weights with the induced tie order.
    """
    k = _committee_size(space)
    m = space.m
    order = tuple(candidate_order) if candidate_order else tuple(range(1, m + 1))
    if sorted(order) != list(range(1, m + 1)):
        raise ValueError("candidate order must be a permutation of 1..m")
    priority = {j: p for p, j in enumerate(order)}
    sums = column_sums(rows, m)
    ranked = sorted(range(1, m + 1), key=lambda j: (-sums[j - 1], priority[j]))
    mask = 0
    for j in ranked[:k]:
        mask |= 1 << (m - j)
    return mask


def committee_tie_order(space: EvaluationSpace, candidate_order: Sequence[int] | None = None) -> TieOrder:
    """Tie order matching the top-k selection: earlier candidates break ties.

    Committees are ranked so that, among any set, the best is the one
    containing the earliest candidate (per ``candidate_order``) not in
    all of them.  With the identity order this is descending mask order.
    """
    _committee_size(space)
    m = space.m
    order = tuple(candidate_order) if candidate_order else tuple(range(1, m + 1))
    if sorted(order) != list(range(1, m + 1)):
        raise ValueError("candidate order must be a permutation of 1..m")

    def permuted(mask: int) -> int:
        out = 0
        for p, j in enumerate(order):
            out |= bit_at(mask, j, m) << (m - 1 - p)
        return out

    ranking = sorted(space.feasible, key=lambda x: -permuted(x))
    return TieOrder(space, ranking, name="committee-lex")


def issuewise_majority(rows: Sequence[int], m: int) -> int:
    """Per-issue majority over the whole hypercube; even splits fall to 0.

    This is the unrestricted total-distance minimizer: for positive
    weights, each issue independently prefers its majority bit.
    """
    n = len(rows)
    need = (n + 2) // 2
    out = 0
    for j in range(1, m + 1):
        if sum((r >> (m - j)) & 1 for r in rows) >= need:
            out |= 1 << (m - j)
    return out


# ---------------------------------------------------------------------------
# rule grammar


@dataclass(frozen=True)
class RuleSpec:
    """Parsed form of the textual rule grammar."""

    kind: str
    params: tuple = ()
    corrected: bool = False
    raw: str = ""

    def build(
        self,
        space: EvaluationSpace,
        n: int,
        weights: Sequence[int] | None = None,
        tie: TieOrder | None = None,
    ) -> Rule:
        """Bind the spec to a space and electorate size."""
        if self.kind == "dictator":
            (voter,) = self.params
            if not 1 <= voter <= n:
                raise ValueError(f"dictator voter must be in 1..{n}, got {voter}")
            return Dictator(space, voter)
        if self.kind in ("majority", "quota"):
            if self.kind == "majority":
                stage = IiaStage.majority(n, space.m)
            else:
                thresholds = self.params
                if len(thresholds) != space.m:
                    raise ValueError(f"quota needs {space.m} thresholds, got {len(thresholds)}")
                stage = IiaStage.quota(n, thresholds)
            if self.corrected:
                return NearestNeighborRule(space, stage, weights, tie, name=self.raw)
            return StageRule(space, stage, name=self.raw)
        if self.kind == "plurality":
            return Plurality(space, tie)
        if self.kind == "partition":
            blocks = self.params
            if len(blocks) > n:
                raise ValueError(f"partition has {len(blocks)} blocks but n={n}")
            # voters beyond the listed blocks simply get no influence
            blocks = blocks + (frozenset(),) * (n - len(blocks))
            return Partition(space, blocks)
        if self.kind == "swm":
            return WelfareMaximizer(space, weights, tie)
        raise ValueError(f"unknown rule kind {self.kind!r}")


def parse_rule(text: str) -> RuleSpec:
    """Parse the CLI rule grammar.

    dictator:<i> | majority | quota:<t1,...,tm> | plurality |
    partition:<K1;K2;...> | nn(majority) | nn(quota:...) | swm
    """
    raw = text.strip()
    body = raw
    corrected = False
    if body.startswith("nn(") and body.endswith(")"):
        corrected = True
        body = body[3:-1].strip()
    if body == "majority":
        return RuleSpec("majority", (), corrected, raw)
    if body.startswith("quota:"):
        try:
            thresholds = tuple(int(t) for t in body[len("quota:") :].split(","))
        except ValueError:
            raise ValueError(f"bad quota thresholds in {raw!r}") from None
        return RuleSpec("quota", thresholds, corrected, raw)
    if corrected:
        raise ValueError(f"nn(...) takes majority or quota:..., got {raw!r}")
    if body == "plurality":
        return RuleSpec("plurality", raw=raw)
    if body == "swm":
        return RuleSpec("swm", raw=raw)
    if body.startswith("dictator:"):
        try:
            voter = int(body[len("dictator:") :])
        except ValueError:
            raise ValueError(f"bad dictator voter in {raw!r}") from None
        return RuleSpec("dictator", (voter,), raw=raw)
    if body.startswith("partition:"):
        blocks = []
        for part in body[len("partition:") :].split(";"):
            part = part.strip()
            if not part:
                blocks.append(frozenset())
                continue
            try:
                blocks.append(frozenset(int(j) for j in part.split(",")))
            except ValueError:
                raise ValueError(f"bad partition block {part!r} in {raw!r}") from None
        return RuleSpec("partition", tuple(blocks), raw=raw)
    raise ValueError(f"unknown rule spec {raw!r}")


# ---------------------------------------------------------------------------
# exhaustive profile machinery


def profile_count(space: EvaluationSpace, n: int) -> int:
    return space.size**n


def profile_rows(space: EvaluationSpace, pid: int, n: int) -> tuple[int, ...]:
    """Rows of the pid-th profile in canonical (lexicographic) order."""
    X = space.feasible
    S = len(X)
    out = []
    for i in range(n):
        stride = S ** (n - 1 - i)
        out.append(X[(pid // stride) % S])
    return tuple(out)


def iter_profiles(space: EvaluationSpace, n: int):
    """Yields (pid, row indices, rows) over all profiles in canonical order."""
    X = space.feasible
    for pid, ridx in enumerate(itertools.product(range(len(X)), repeat=n)):
        yield pid, ridx, tuple(X[i] for i in ridx)


def outcome_table(space: EvaluationSpace, rule: Rule, n: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Rule outcome for every profile, indexed by canonical profile id."""
    total = profile_count(space, n)
    if total > budget:
        raise BudgetExceededError(total, budget, f"outcome table over {space.size}^{n} profiles")
    return [rule(rows) for _, _, rows in iter_profiles(space, n)]


# ---------------------------------------------------------------------------
# structural property checks


@dataclass(frozen=True)
class StructuralReport:
    """Exhaustive verdict for one structural property of a rule."""

    property: str
    holds: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    issue: int | None = None
    detail: str = ""


_PROPERTIES = ("iia", "monotone", "anonymous", "dictatorial")


def check_structural(
    space: EvaluationSpace,
    rule: Rule,
    n: int,
    property: str,
    budget: int = DEFAULT_BUDGET,
) -> StructuralReport:
    """Exhaustively decide a structural property over all profiles.

    Witnesses are pairs of profiles, the canonically first pair that
    violates the property under a single left-to-right scan.
    """
    if property not in _PROPERTIES:
        raise ValueError(f"unknown property {property!r}; pick one of {_PROPERTIES}")
    total = profile_count(space, n)
    probes = {
        "iia": total * space.m,
        "monotone": total * n * space.size,
        "anonymous": total,
        "dictatorial": total * n,
    }[property]
    if total > budget or probes > budget:
        raise BudgetExceededError(max(total, probes), budget, f"structural check {property}")
    out = outcome_table(space, rule, n, budget)
    m = space.m
    X = space.feasible
    S = len(X)

    if property == "iia":
        seen: list[dict[int, tuple[int, int]]] = [dict() for _ in range(m)]
        for pid, ridx, rows in iter_profiles(space, n):
            res = out[pid]
            for j in range(1, m + 1):
                col = _column_index(rows, j, m)
                bit = (res >> (m - j)) & 1
                prev = seen[j - 1].setdefault(col, (pid, bit))
                if prev[1] != bit:
                    return StructuralReport(
                        property, False, (profile_rows(space, prev[0], n), rows), issue=j
                    )
        return StructuralReport(property, True)

    if property == "monotone":
        for pid, ridx, rows in iter_profiles(space, n):
            res = out[pid]
            for i in range(n):
                stride = S ** (n - 1 - i)
                base = pid - ridx[i] * stride
                xi = rows[i]
                for yi, y in enumerate(X):
                    if y == xi:
                        continue
                    res2 = out[base + yi * stride]
                    # violation: voter flipped the issue, society flipped it
                    # too, and ended opposite to where the voter went
                    viol = (xi ^ y) & (res ^ res2) & (y ^ res2)
                    if viol:
                        j = m - viol.bit_length() + 1
                        other = rows[:i] + (y,) + rows[i + 1 :]
                        return StructuralReport(property, False, (rows, other), issue=j)
        return StructuralReport(property, True)

    if property == "anonymous":
        for pid, ridx, rows in iter_profiles(space, n):
            sorted_rows = tuple(sorted(rows))
            if sorted_rows == rows:
                continue
            spid = 0
            for i, r in enumerate(sorted_rows):
                spid += space.index(r) * (S ** (n - 1 - i))
            if out[pid] != out[spid]:
                return StructuralReport(property, False, (rows, sorted_rows))
        return StructuralReport(property, True)

    # dictatorial
    candidates = set(range(n))
    first_break: dict[int, int] = {}
    for pid, ridx, rows in iter_profiles(space, n):
        res = out[pid]
        for i in list(candidates):
            if rows[i] != res:
                candidates.discard(i)
                first_break.setdefault(i, pid)
        if not candidates:
            break
    if candidates:
        voter = min(candidates) + 1
        return StructuralReport(property, True, detail=f"dictator is voter {voter}")
    detail = "; ".join(
        f"voter {i + 1} overruled at profile {pid}" for i, pid in sorted(first_break.items())
    )
    return StructuralReport(property, False, detail=detail)
