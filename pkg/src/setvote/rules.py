"""The catalog of set-valued voting rules.

Each rule maps a profile to a non-empty set of alternatives. Rules are
classified by how much of the profile they actually read: majoritarian rules
see only the sign pattern of the margins, pairwise rules see the margins, and
profile-based rules need the ballots. The classification is used by the
verification sweeps to group equivalent inputs, and it is itself checked by
the test suite rather than trusted.

Rules are addressed by stable string names (``tc``, ``borda``,
``supermajority-tc:k=2``, ``fab:ab``, ...) so they can be selected from the
command line.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from .core import (
    ChoiceSet,
    MajorityRelation,
    Profile,
    _margins_flat,
    _strict_masks_from_flat,
    _tc_mask,
    condorcet_loser,
    condorcet_winner,
    schwartz_set,
)

__all__ = [
    "BasisTag",
    "InstanceTooLargeError",
    "RuleId",
    "RuleSpec",
    "TiesUnsupportedError",
    "basis",
    "catalog",
    "evaluate",
    "parse_rule",
]

KEMENY_MAX_ALTERNATIVES = 8


class TiesUnsupportedError(ValueError):
    """Raised by rules that are only defined on tie-free majority relations."""


class InstanceTooLargeError(ValueError):
    """Raised when a brute-force rule is asked to handle too many alternatives."""


class RuleId(str, Enum):
    TOP_CYCLE = "tc"
    TC_STAR = "tc-star"
    CONDORCET = "condorcet"
    CONDORCET_NON_LOSER = "condorcet-non-loser"
    OMNINOMINATION = "omninomination"
    PARETO = "pareto"
    TC_OF_PO = "tc-of-po"
    PO_OF_TC = "po-of-tc"
    PLURALITY = "plurality"
    BORDA = "borda"
    COPELAND = "copeland"
    MAXIMIN = "maximin"
    KEMENY = "kemeny"
    UNCOVERED_SET = "uncovered-set"
    FAB = "fab"
    MARGIN_THRESHOLD = "margin-threshold"
    SUPERMAJORITY_TC = "supermajority-tc"
    SHIFTED_TC = "shifted-tc"
    SCHWARTZ = "schwartz"


class BasisTag(str, Enum):
    PROFILE_BASED = "profile-based"
    PAIRWISE = "pairwise"
    MAJORITARIAN = "majoritarian"


_THRESHOLD_RULES = (RuleId.SUPERMAJORITY_TC, RuleId.SHIFTED_TC)


@dataclass(frozen=True)
class RuleSpec:
    """A rule identifier plus its parameters.

    ``k`` is the threshold of the supermajority / shifted variants and is
    ignored elsewhere; ``pair`` is the privileged pair of the two-alternative
    special rule.
    """

    id: RuleId
    k: int = 0
    pair: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.id in _THRESHOLD_RULES and self.k < 0:
            raise ValueError("threshold k must be non-negative")
        if self.id == RuleId.FAB and self.pair[0] == self.pair[1]:
            raise ValueError("the special pair must be two distinct alternatives")

    @property
    def name(self) -> str:
        if self.id in _THRESHOLD_RULES:
            return f"{self.id.value}:k={self.k}"
        if self.id == RuleId.FAB:
            letters = "abcdefghijklmnopqrstuvwxyz"
            return f"{self.id.value}:{letters[self.pair[0]]}{letters[self.pair[1]]}"
        return self.id.value

    def __str__(self) -> str:
        return self.name


def parse_rule(text: str) -> RuleSpec:
    """Parse a rule name such as 'tc', 'supermajority-tc:k=2' or 'fab:ab'."""
    head, _, arg = text.strip().partition(":")
    try:
        rule_id = RuleId(head)
    except ValueError:
        raise ValueError(f"unknown rule {head!r}") from None
    if rule_id in _THRESHOLD_RULES:
        if not arg:
            return RuleSpec(rule_id, k=2)
        if not arg.startswith("k="):
            raise ValueError(f"expected k=<int> after {head!r}, got {arg!r}")
        return RuleSpec(rule_id, k=int(arg[2:]))
    if rule_id == RuleId.FAB:
        if not arg:
            return RuleSpec(rule_id)
        if len(arg) != 2 or not arg.isalpha():
            raise ValueError(f"expected two letters after 'fab:', got {arg!r}")
        return RuleSpec(rule_id, pair=(ord(arg[0]) - 97, ord(arg[1]) - 97))
    if arg:
        raise ValueError(f"rule {head!r} takes no parameters")
    return RuleSpec(rule_id)


def catalog() -> list[RuleSpec]:
    """All built-in rules with their default parameters, in a fixed order."""
    out = []
    for rule_id in RuleId:
        if rule_id in _THRESHOLD_RULES:
            out.append(RuleSpec(rule_id, k=2))
        else:
            out.append(RuleSpec(rule_id))
    return out


_BASIS = {
    RuleId.TOP_CYCLE: BasisTag.MAJORITARIAN,
    RuleId.TC_STAR: BasisTag.PAIRWISE,
    RuleId.CONDORCET: BasisTag.MAJORITARIAN,
    RuleId.CONDORCET_NON_LOSER: BasisTag.MAJORITARIAN,
    RuleId.OMNINOMINATION: BasisTag.PROFILE_BASED,
    RuleId.PARETO: BasisTag.PROFILE_BASED,
    RuleId.TC_OF_PO: BasisTag.PROFILE_BASED,
    RuleId.PO_OF_TC: BasisTag.PROFILE_BASED,
    RuleId.PLURALITY: BasisTag.PROFILE_BASED,
    RuleId.BORDA: BasisTag.PAIRWISE,
    RuleId.COPELAND: BasisTag.MAJORITARIAN,
    RuleId.MAXIMIN: BasisTag.PAIRWISE,
    RuleId.KEMENY: BasisTag.PAIRWISE,
    RuleId.UNCOVERED_SET: BasisTag.MAJORITARIAN,
    RuleId.FAB: BasisTag.MAJORITARIAN,
    RuleId.MARGIN_THRESHOLD: BasisTag.PAIRWISE,
    RuleId.SUPERMAJORITY_TC: BasisTag.PAIRWISE,
    RuleId.SHIFTED_TC: BasisTag.PAIRWISE,
    RuleId.SCHWARTZ: BasisTag.MAJORITARIAN,
}


def basis(rule: RuleSpec) -> BasisTag:
    """How much of the profile the rule reads (checked by tests, not assumed)."""
    return _BASIS[rule.id]


# ---------------------------------------------------------------------------
# majoritarian rules: functions of the strict-beat masks


def _full(m: int) -> int:
    return (1 << m) - 1


def _maj_top_cycle(rule, m, strict):
    return _tc_mask(strict, _full(m))


def _maj_condorcet(rule, m, strict):
    rel = MajorityRelation(m, strict)
    winner = condorcet_winner(rel)
    return _full(m) if winner is None else 1 << winner


def _maj_condorcet_non_loser(rule, m, strict):
    if m == 1:
        return 1
    loser = condorcet_loser(MajorityRelation(m, strict))
    return _full(m) if loser is None else _full(m) & ~(1 << loser)


def _maj_copeland(rule, m, strict):
    losses = [0] * m
    for y in range(m):
        mask = strict[y]
        while mask:
            low = mask & -mask
            losses[low.bit_length() - 1] += 1
            mask ^= low
    scores = [strict[x].bit_count() - losses[x] for x in range(m)]
    best = max(scores)
    return sum(1 << x for x in range(m) if scores[x] == best)


def _maj_uncovered(rule, m, strict):
    for x in range(m):
        for y in range(x + 1, m):
            if not (strict[x] >> y & 1) and not (strict[y] >> x & 1):
                raise TiesUnsupportedError(
                    "the uncovered set is defined on tie-free majority relations only"
                )
    mask = 0
    for x in range(m):
        # y covers x when y beats x and everything x beats, y beats too
        covered = any(
            strict[y] >> x & 1 and strict[x] & ~strict[y] == 0
            for y in range(m)
            if y != x
        )
        if not covered:
            mask |= 1 << x
    return mask


def _maj_fab(rule, m, strict):
    a, b = rule.pair
    if a >= m or b >= m:
        raise ValueError("special pair out of range for this profile")
    others = _full(m) & ~(1 << a) & ~(1 << b)
    a_over_b = not (strict[b] >> a & 1)
    if strict[a] & others == others and a_over_b:
        return 1 << a
    return _maj_condorcet(rule, m, strict)


def _maj_schwartz(rule, m, strict):
    return schwartz_set(MajorityRelation(m, strict)).mask


_MAJORITARIAN = {
    RuleId.TOP_CYCLE: _maj_top_cycle,
    RuleId.CONDORCET: _maj_condorcet,
    RuleId.CONDORCET_NON_LOSER: _maj_condorcet_non_loser,
    RuleId.COPELAND: _maj_copeland,
    RuleId.UNCOVERED_SET: _maj_uncovered,
    RuleId.FAB: _maj_fab,
    RuleId.SCHWARTZ: _maj_schwartz,
}


# ---------------------------------------------------------------------------
# pairwise rules: functions of the flat margin vector


def _strict_above(flat, m, threshold):
    """Strict-beat masks of the relation 'x over y iff g(x, y) > threshold'."""
    strict = [0] * m
    for x in range(m):
        row = x * m
        acc = 0
        for y in range(m):
            if flat[row + y] > threshold:
                acc |= 1 << y
        strict[x] = acc
    return tuple(strict)


def _pw_tc_star(rule, m, flat):
    # weak edge wherever the margin is at least -1, so strict needs margin > 1
    return _tc_mask(_strict_above(flat, m, 1), _full(m))


def _pw_supermajority_tc(rule, m, flat):
    return _tc_mask(_strict_above(flat, m, rule.k), _full(m))


def _pw_shifted_tc(rule, m, flat):
    # trichotomy against the raw threshold, oriented by index order: for x < y
    # the pair is read off g(x, y) alone, so the rule is not neutral for k > 0
    strict = [0] * m
    for x in range(m):
        for y in range(x + 1, m):
            g = flat[x * m + y]
            if g > rule.k:
                strict[x] |= 1 << y
            elif g < rule.k:
                strict[y] |= 1 << x
    return _tc_mask(tuple(strict), _full(m))


def _pw_borda(rule, m, flat):
    scores = [sum(flat[x * m + y] for y in range(m)) for x in range(m)]
    best = max(scores)
    return sum(1 << x for x in range(m) if scores[x] == best)


def _pw_maximin(rule, m, flat):
    scores = [
        min((flat[x * m + y] for y in range(m) if y != x), default=0)
        for x in range(m)
    ]
    best = max(scores)
    return sum(1 << x for x in range(m) if scores[x] == best)


def _pw_kemeny(rule, m, flat):
    if m > KEMENY_MAX_ALTERNATIVES:
        raise InstanceTooLargeError(
            f"kemeny enumerates m! rankings; refusing m={m} > {KEMENY_MAX_ALTERNATIVES}"
        )
    best_score = None
    mask = 0
    for order in itertools.permutations(range(m)):
        score = 0
        for i, x in enumerate(order):
            row = x * m
            for y in order[i + 1:]:
                score += flat[row + y]
        if best_score is None or score > best_score:
            best_score, mask = score, 1 << order[0]
        elif score == best_score:
            mask |= 1 << order[0]
    return mask


def _pw_margin_threshold(rule, m, flat):
    for x in range(m):
        row = x * m
        if all(flat[row + y] > 2 for y in range(m) if y != x):
            return 1 << x
    return _full(m)


_PAIRWISE = {
    RuleId.TC_STAR: _pw_tc_star,
    RuleId.BORDA: _pw_borda,
    RuleId.MAXIMIN: _pw_maximin,
    RuleId.KEMENY: _pw_kemeny,
    RuleId.MARGIN_THRESHOLD: _pw_margin_threshold,
    RuleId.SUPERMAJORITY_TC: _pw_supermajority_tc,
    RuleId.SHIFTED_TC: _pw_shifted_tc,
}


# ---------------------------------------------------------------------------
# profile-based rules


def _unanimous_masks(ballots, m):
    """over[x] = alternatives that every single voter ranks below x."""
    over = [_full(m) & ~(1 << x) for x in range(m)]
    for ballot in ballots:
        below = 0
        for x in reversed(ballot):
            over[x] &= below
            below |= 1 << x
    return over


def _pareto_mask(ballots, m):
    over = _unanimous_masks(ballots, m)
    dominated = 0
    for x in range(m):
        dominated |= over[x]
    return _full(m) & ~dominated


def _pb_omninomination(rule, ballots, m):
    mask = 0
    for ballot in ballots:
        mask |= 1 << ballot[0]
    return mask


def _pb_pareto(rule, ballots, m):
    return _pareto_mask(ballots, m)


def _pb_plurality(rule, ballots, m):
    counts = [0] * m
    for ballot in ballots:
        counts[ballot[0]] += 1
    best = max(counts)
    return sum(1 << x for x in range(m) if counts[x] == best)


def _pb_tc_of_po(rule, ballots, m):
    po = _pareto_mask(ballots, m)
    flat = _margins_flat(ballots, m)
    return _tc_mask(_strict_masks_from_flat(flat, m), po)


def _pb_po_of_tc(rule, ballots, m):
    flat = _margins_flat(ballots, m)
    tc = _tc_mask(_strict_masks_from_flat(flat, m), _full(m))
    po = _pareto_mask(ballots, m)
    return tc & po


_PROFILE_BASED = {
    RuleId.OMNINOMINATION: _pb_omninomination,
    RuleId.PARETO: _pb_pareto,
    RuleId.PLURALITY: _pb_plurality,
    RuleId.TC_OF_PO: _pb_tc_of_po,
    RuleId.PO_OF_TC: _pb_po_of_tc,
}


# ---------------------------------------------------------------------------
# the public evaluator, plus raw entry points used by the sweep engine


def evaluate_mask(rule: RuleSpec, ballots, m: int) -> int:
    tag = _BASIS[rule.id]
    if tag == BasisTag.PROFILE_BASED:
        return _PROFILE_BASED[rule.id](rule, ballots, m)
    flat = _margins_flat(ballots, m)
    return evaluate_mask_from_margins(rule, flat, m)


def evaluate_mask_from_margins(rule: RuleSpec, flat, m: int) -> int:
    tag = _BASIS[rule.id]
    if tag == BasisTag.PROFILE_BASED:
        raise ValueError(f"{rule.name} needs the ballots, not just margins")
    if tag == BasisTag.PAIRWISE:
        return _PAIRWISE[rule.id](rule, m, flat)
    return _MAJORITARIAN[rule.id](rule, m, _strict_masks_from_flat(flat, m))


def evaluate_mask_from_relation(rule: RuleSpec, strict: tuple[int, ...], m: int) -> int:
    if _BASIS[rule.id] != BasisTag.MAJORITARIAN:
        raise ValueError(f"{rule.name} is not a function of the majority relation")
    return _MAJORITARIAN[rule.id](rule, m, strict)


def evaluate(rule: RuleSpec, profile: Profile) -> ChoiceSet:
    """Evaluate one rule on one profile; the result is never empty."""
    mask = evaluate_mask(rule, profile.ballots, profile.m)
    assert mask != 0, f"{rule.name} produced an empty choice set"
    return ChoiceSet(profile.m, mask)


def evaluate_on_relation(rule: RuleSpec, rel: MajorityRelation) -> ChoiceSet:
    """Evaluate a majoritarian rule directly on a majority relation."""
    return ChoiceSet(rel.m, evaluate_mask_from_relation(rule, rel.strict, rel.m))
