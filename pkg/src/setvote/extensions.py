"""Lifting a voter's ranking of alternatives to preferences over sets.

Two liftings are provided. The strict one prefers X to Y when everything X
adds beats all of Y and all of X beats everything Y keeps exclusively; it is
what the manipulation search uses by default. The optimistic weak one demands
strictly less: the symmetric differences must be ordered, and the overlap only
needs witnesses in both directions. The first implies the second.
"""

from __future__ import annotations

from enum import Enum

from .core import Ballot, ChoiceSet

__all__ = [
    "ExtensionKind",
    "SetComparison",
    "compare",
    "exists_prefers",
    "fishburn_prefers",
    "fplus_weakly_prefers",
]


class ExtensionKind(str, Enum):
    FISHBURN = "fishburn"
    FPLUS = "fplus"


class SetComparison(str, Enum):
    LEFT_PREFERRED = "left-preferred"
    RIGHT_PREFERRED = "right-preferred"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


def _as_set(xs) -> frozenset[int]:
    if isinstance(xs, ChoiceSet):
        return frozenset(xs.members)
    return frozenset(xs)


def _positions(ballot: Ballot) -> dict[int, int]:
    return {a: i for i, a in enumerate(ballot)}


def _all_above(pos, xs, ys) -> bool:
    # vacuously true when either side is empty
    if not xs or not ys:
        return True
    return max(pos[a] for a in xs) < min(pos[b] for b in ys)


def fishburn_prefers(ballot: Ballot, xs, ys) -> bool:
    """Strict set preference: X \\ Y above all of Y, and all of X above Y \\ X.

    Defined only for X != Y (passing equal sets is a contract violation).
    """
    xs, ys = _as_set(xs), _as_set(ys)
    if not xs or not ys:
        raise ValueError("set preference needs non-empty sets")
    if xs == ys:
        raise ValueError("set preference is defined for distinct sets only")
    pos = _positions(ballot)
    return _all_above(pos, xs - ys, ys) and _all_above(pos, xs, ys - xs)


def exists_prefers(ballot: Ballot, xs, ys) -> bool:
    """True iff X or Y is empty, or some member of X beats some member of Y."""
    xs, ys = _as_set(xs), _as_set(ys)
    if not xs or not ys:
        return True
    pos = _positions(ballot)
    return min(pos[a] for a in xs) < max(pos[b] for b in ys)


def fplus_weakly_prefers(ballot: Ballot, xs, ys) -> bool:
    """Weak optimistic set preference; reflexive, and implied by `fishburn_prefers`.

    For distinct sets it requires X \\ Y entirely above Y \\ X, plus an
    existential witness from X \\ Y into the overlap and from the overlap into
    Y \\ X.
    """
    xs, ys = _as_set(xs), _as_set(ys)
    if not xs or not ys:
        raise ValueError("set preference needs non-empty sets")
    if xs == ys:
        return True
    pos = _positions(ballot)
    both = xs & ys
    return (
        _all_above(pos, xs - ys, ys - xs)
        and exists_prefers(ballot, xs - ys, both)
        and exists_prefers(ballot, both, ys - xs)
    )


def compare(kind: ExtensionKind, ballot: Ballot, xs, ys) -> SetComparison:
    """One verdict for the pair (X, Y) under the chosen lifting.

    Equal sets compare as EQUAL. Under the weak lifting, the strict part is
    used, so mutually weakly-preferred distinct sets come out INCOMPARABLE.
    """
    xs, ys = _as_set(xs), _as_set(ys)
    if xs == ys:
        return SetComparison.EQUAL
    if kind == ExtensionKind.FISHBURN:
        left = fishburn_prefers(ballot, xs, ys)
        right = fishburn_prefers(ballot, ys, xs)
    else:
        fwd = fplus_weakly_prefers(ballot, xs, ys)
        bwd = fplus_weakly_prefers(ballot, ys, xs)
        left, right = fwd and not bwd, bwd and not fwd
    if left:
        return SetComparison.LEFT_PREFERRED
    if right:
        return SetComparison.RIGHT_PREFERRED
    return SetComparison.INCOMPARABLE
