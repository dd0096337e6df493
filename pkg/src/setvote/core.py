"""Preference profiles, majority margins, and the dominance structure they induce.

A profile is a non-empty list of ballots, each a strict ranking of the
alternatives 0..m-1 (letters a, b, c, ... are a display convention only).
Counting pairwise comparisons gives the margin matrix; its sign pattern gives
the complete majority relation; and the relation yields the classical
dominance concepts: Condorcet winners and losers, dominant sets (which form a
chain under inclusion), the top cycle (the smallest dominant set), and the
Schwartz set (maximal elements of the strict reachability order).

Alternatives are dense integer indices so that sets can be bit masks and
ballots can be enumerated as permutations. All values here are immutable and
all functions are pure, so they can be used from worker processes or threads
without coordination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from string import ascii_lowercase

import numpy as np

Ballot = tuple[int, ...]

__all__ = [
    "Ballot",
    "ChoiceSet",
    "MajorityRelation",
    "Profile",
    "condorcet_loser",
    "condorcet_winner",
    "connected_set",
    "covering_cycle",
    "dominant_chain",
    "enumerate_ballots",
    "enumerate_relations",
    "is_dominant",
    "margins",
    "relation",
    "restrict",
    "schwartz_set",
    "to_letters",
    "top_cycle",
]


def to_letters(members) -> str:
    """Render a collection of alternative indices as '{a,c,d}'."""
    return "{" + ",".join(ascii_lowercase[i] for i in sorted(members)) + "}"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ChoiceSet:
    """A subset of the alternatives 0..m-1, stored as a bit mask.

    Outputs of voting rules are always non-empty; the empty set is allowed
    here only because a few structural quantities (connected sets) can be
    empty.
    """

    m: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.m):
            raise ValueError(f"mask {self.mask:#x} out of range for m={self.m}")

    @classmethod
    def from_members(cls, m: int, members) -> "ChoiceSet":
        mask = 0
        for x in members:
            if not 0 <= x < m:
                raise ValueError(f"alternative {x} out of range for m={m}")
            mask |= 1 << x
        return cls(m, mask)

    @classmethod
    def full(cls, m: int) -> "ChoiceSet":
        return cls(m, (1 << m) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def __iter__(self):
        return _bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.m and self.mask >> x & 1 == 1

    def issubset(self, other: "ChoiceSet") -> bool:
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        return to_letters(self.members)


@dataclass(frozen=True)
class Profile:
    """A non-empty sequence of ballots over a common set of m alternatives."""

    m: int
    ballots: tuple[Ballot, ...]

    def __post_init__(self):
        object.__setattr__(self, "ballots", tuple(tuple(b) for b in self.ballots))
        if self.m < 1:
            raise ValueError("need at least one alternative")
        if not self.ballots:
            raise ValueError("profile needs at least one ballot")
        expected = set(range(self.m))
        for i, ballot in enumerate(self.ballots):
            if set(ballot) != expected or len(ballot) != self.m:
                raise ValueError(f"ballot {i} is not a permutation of 0..{self.m - 1}: {ballot}")

    @classmethod
    def from_rankings(cls, rankings) -> "Profile":
        rankings = tuple(tuple(r) for r in rankings)
        if not rankings:
            raise ValueError("profile needs at least one ballot")
        return cls(len(rankings[0]), rankings)

    @property
    def n(self) -> int:
        return len(self.ballots)

    def replace_ballot(self, voter: int, ballot: Ballot) -> "Profile":
        new = list(self.ballots)
        new[voter] = tuple(ballot)
        return Profile(self.m, tuple(new))

    def tiled(self, k: int) -> "Profile":
        """The profile consisting of k copies of this electorate."""
        if k < 1:
            raise ValueError("k must be positive")
        return Profile(self.m, self.ballots * k)


# ---------------------------------------------------------------------------
# margins and the majority relation


@lru_cache(maxsize=None)
def _pair_vector(ballot: Ballot) -> tuple[int, ...]:
    """Flat m*m vector with +1 at (x, y) if the ballot ranks x above y."""
    m = len(ballot)
    vec = [0] * (m * m)
    for hi_pos, x in enumerate(ballot):
        for y in ballot[hi_pos + 1:]:
            vec[x * m + y] = 1
            vec[y * m + x] = -1
    return tuple(vec)


def _margins_flat(ballots, m: int) -> tuple[int, ...]:
    total = [0] * (m * m)
    for ballot in ballots:
        vec = _pair_vector(ballot)
        for i, v in enumerate(vec):
            total[i] += v
    return tuple(total)


def margins(profile: Profile) -> np.ndarray:
    """The m-by-m majority margin matrix g with g[x, y] = #(x over y) - #(y over x)."""
    flat = _margins_flat(profile.ballots, profile.m)
    return np.array(flat, dtype=np.int64).reshape(profile.m, profile.m)


def _strict_masks_from_flat(flat, m: int) -> tuple[int, ...]:
    strict = [0] * m
    for x in range(m):
        row = x * m
        acc = 0
        for y in range(m):
            if flat[row + y] > 0:
                acc |= 1 << y
        strict[x] = acc
    return tuple(strict)


@dataclass(frozen=True)
class MajorityRelation:
    """The complete majority relation: for x != y, either x beats y, y beats x, or they tie.

    Stored as one bit mask per alternative listing the alternatives it
    strictly beats; ties are the pairs where neither side beats the other.
    """

    m: int
    strict: tuple[int, ...]

    def __post_init__(self):
        if len(self.strict) != self.m:
            raise ValueError("strict masks must have one entry per alternative")
        for x, mask in enumerate(self.strict):
            if mask >> x & 1:
                raise ValueError("an alternative cannot beat itself")
            for y in _bits(mask):
                if self.strict[y] >> x & 1:
                    raise ValueError(f"both {x} beats {y} and {y} beats {x}")

    @classmethod
    def from_margins(cls, g) -> "MajorityRelation":
        arr = np.asarray(g)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("margin matrix must be square")
        m = arr.shape[0]
        strict = tuple(
            sum(1 << y for y in range(m) if arr[x, y] > 0) for x in range(m)
        )
        return cls(m, strict)

    @classmethod
    def from_profile(cls, profile: Profile) -> "MajorityRelation":
        flat = _margins_flat(profile.ballots, profile.m)
        return cls(profile.m, _strict_masks_from_flat(flat, profile.m))

    def strictly_prefers(self, x: int, y: int) -> bool:
        return self.strict[x] >> y & 1 == 1

    def weakly_prefers(self, x: int, y: int) -> bool:
        return x == y or self.strict[y] >> x & 1 == 0

    def ties(self, x: int, y: int) -> bool:
        return x != y and not self.strictly_prefers(x, y) and not self.strictly_prefers(y, x)

    def weak_masks(self) -> tuple[int, ...]:
        """weak[x] = alternatives y != x with x weakly over y (not y beats x)."""
        full = (1 << self.m) - 1
        beaten_by = [0] * self.m
        for y in range(self.m):
            for x in _bits(self.strict[y]):
                beaten_by[x] |= 1 << y
        return tuple((full & ~(1 << x) & ~beaten_by[x]) for x in range(self.m))


def relation(g) -> MajorityRelation:
    """The majority relation induced by a margin matrix."""
    return MajorityRelation.from_margins(g)


def enumerate_ballots(m: int) -> list[Ballot]:
    """All m! ballots in lexicographic order."""
    return list(itertools.permutations(range(m)))


def enumerate_relations(m: int):
    """All complete majority relations on m alternatives (3 per unordered pair)."""
    pairs = list(itertools.combinations(range(m), 2))
    for assignment in itertools.product((0, 1, 2), repeat=len(pairs)):
        strict = [0] * m
        for (x, y), c in zip(pairs, assignment):
            if c == 0:
                strict[x] |= 1 << y
            elif c == 1:
                strict[y] |= 1 << x
        yield MajorityRelation(m, tuple(strict))


# ---------------------------------------------------------------------------
# Condorcet concepts and dominant sets


def condorcet_winner(rel: MajorityRelation) -> int | None:
    """The alternative beating all others, if any (for m=1 that is alternative 0)."""
    full = (1 << rel.m) - 1
    for x in range(rel.m):
        if rel.strict[x] == full & ~(1 << x):
            return x
    return None


def condorcet_loser(rel: MajorityRelation) -> int | None:
    """The alternative beaten by all others, if any (for m=1 that is alternative 0)."""
    beaten_by = [0] * rel.m
    for y in range(rel.m):
        for x in _bits(rel.strict[y]):
            beaten_by[x] |= 1 << y
    full = (1 << rel.m) - 1
    for x in range(rel.m):
        if beaten_by[x] == full & ~(1 << x):
            return x
    return None


def is_dominant(rel: MajorityRelation, choice: ChoiceSet | int) -> bool:
    """True iff every member strictly beats every non-member (X = A is vacuously dominant)."""
    mask = choice.mask if isinstance(choice, ChoiceSet) else choice
    if mask == 0:
        raise ValueError("dominance is defined for non-empty sets only")
    comp = ((1 << rel.m) - 1) & ~mask
    return all(rel.strict[x] & comp == comp for x in _bits(mask))


def _tc_mask(strict: tuple[int, ...], subset: int) -> int:
    """Smallest dominant subset of `subset` under the relation restricted to it."""
    members = list(_bits(subset))
    if len(members) == 1:
        return subset
    # Seed with a maximal wins-minus-losses alternative; such an alternative
    # always lies in the smallest dominant set, and expanding with everything
    # that is not strictly beaten by the whole current set converges to it.
    best, best_score = -1, None
    for x in members:
        wins = (strict[x] & subset).bit_count()
        losses = sum(1 for y in members if strict[y] >> x & 1)
        score = wins - losses
        if best_score is None or score > best_score:
            best, best_score = x, score
    s = 1 << best
    while True:
        beats_all = subset
        for x in _bits(s):
            beats_all &= strict[x]
        add = subset & ~s & ~beats_all
        if not add:
            return s
        s |= add


def top_cycle(rel: MajorityRelation) -> ChoiceSet:
    """The smallest dominant set, equivalently the maximal elements of the
    transitive closure of the weak majority relation (ties traversable both ways)."""
    return ChoiceSet(rel.m, _tc_mask(rel.strict, (1 << rel.m) - 1))


def dominant_chain(rel: MajorityRelation) -> tuple[ChoiceSet, ...]:
    """All dominant sets, in increasing inclusion order; the first is the top cycle.

    Each next link adds the smallest dominant subset of the remaining
    alternatives, which is exactly how the inclusion chain of dominant sets
    is generated.
    """
    full = (1 << rel.m) - 1
    s = _tc_mask(rel.strict, full)
    chain = [ChoiceSet(rel.m, s)]
    while s != full:
        s |= _tc_mask(rel.strict, full & ~s)
        chain.append(ChoiceSet(rel.m, s))
    return tuple(chain)


def schwartz_set(rel: MajorityRelation) -> ChoiceSet:
    """Maximal elements of the transitive closure of the strict part only."""
    m = rel.m
    reach = list(rel.strict)
    for k in range(m):
        bit_k = 1 << k
        row_k = reach[k]
        for x in range(m):
            if reach[x] & bit_k:
                reach[x] |= row_k
    mask = 0
    for x in range(m):
        bit_x = 1 << x
        if not any(reach[y] & bit_x and not reach[x] >> y & 1 for y in range(m) if y != x):
            mask |= bit_x
    return ChoiceSet(m, mask)


def restrict(rel: MajorityRelation, members) -> tuple[MajorityRelation, tuple[int, ...]]:
    """The relation induced on a non-empty subset, plus the new-index -> old-index map."""
    if isinstance(members, ChoiceSet):
        old = members.members
    else:
        old = tuple(sorted(set(members)))
    if not old:
        raise ValueError("cannot restrict to the empty set")
    back = {x: i for i, x in enumerate(old)}
    strict = [0] * len(old)
    for i, x in enumerate(old):
        for y in _bits(rel.strict[x]):
            if y in back:
                strict[i] |= 1 << back[y]
    return MajorityRelation(len(old), tuple(strict)), old


def connected_set(rel: MajorityRelation, x: int) -> ChoiceSet:
    """Alternatives (other than x) that drop out of the top cycle when x is removed.

    Empty whenever x is not needed to hold the top cycle together; only
    members of a top cycle of size >= 3 can have a non-empty connected set.
    """
    if rel.m == 1:
        return ChoiceSet(1, 0)
    full = (1 << rel.m) - 1
    tc = _tc_mask(rel.strict, full)
    without_x = _tc_mask(rel.strict, full & ~(1 << x))
    return ChoiceSet(rel.m, tc & ~without_x & ~(1 << x))


def covering_cycle(rel: MajorityRelation) -> tuple[int, ...] | None:
    """A cycle in the weak relation visiting exactly the top cycle, or None if it
    is a singleton.

    Built constructively: find any short cycle inside the top cycle by walking
    weak predecessors, then grow it. An outside alternative with both an
    incoming and an outgoing connection is spliced between some consecutive
    pair; otherwise the remainder splits into a layer above and a layer below
    the cycle and a crossing pair from the two layers is appended. The result
    is deterministic for a given relation.
    """
    full = (1 << rel.m) - 1
    tc = _tc_mask(rel.strict, full)
    if tc.bit_count() == 1:
        return None
    strict = rel.strict

    def weakly(u: int, v: int) -> bool:
        return strict[v] >> u & 1 == 0

    # Walk predecessors until a repeat closes a cycle.
    walk = [min(_bits(tc))]
    seen_at = {walk[0]: 0}
    while True:
        v = walk[-1]
        pred = min(u for u in _bits(tc & ~(1 << v)) if weakly(u, v))
        if pred in seen_at:
            start = seen_at[pred]
            cycle = list(reversed(walk[start:]))
            break
        seen_at[pred] = len(walk)
        walk.append(pred)

    cycle_mask = 0
    for v in cycle:
        cycle_mask |= 1 << v
    while cycle_mask != tc:
        remaining = sorted(_bits(tc & ~cycle_mask))
        spliced = False
        for y in remaining:
            has_in = any(weakly(a, y) for a in cycle)
            has_out = any(weakly(y, a) for a in cycle)
            if has_in and has_out:
                q = len(cycle)
                for k in range(q):
                    if weakly(cycle[k], y) and weakly(y, cycle[(k + 1) % q]):
                        cycle.insert(k + 1, y)
                        cycle_mask |= 1 << y
                        spliced = True
                        break
                assert spliced, "a splice point must exist when both edges are present"
                break
        if spliced:
            continue
        above = [y for y in remaining if strict[y] & cycle_mask == cycle_mask]
        below = [y for y in remaining if all(strict[a] >> y & 1 for a in cycle)]
        assert len(above) + len(below) == len(remaining)
        pair = next(
            ((lo, hi) for hi in above for lo in below if weakly(lo, hi)),
            None,
        )
        assert pair is not None, "a crossing pair must exist inside the top cycle"
        cycle.extend(pair)
        cycle_mask |= 1 << pair[0] | 1 << pair[1]
    return tuple(cycle)
