"""Synthesizing a profile that realizes a prescribed weighted majority graph.

Any antisymmetric integer matrix whose off-diagonal entries share one parity
is the margin matrix of some profile. The construction uses canceling voter
pairs: the two ballots ``x, y, rest-in-index-order`` and ``rest-reversed, x,
y`` move the (x, y) margin by +2 and nothing else. An odd-parity target is
first seeded with a single voter holding the index-order ballot and the even
residual is then paid for with pairs. The resulting electorate has at most
c * m^2 + 1 voters for a maximum absolute margin c >= 1 (an all-zero target
still needs one canceling pair, because profiles are non-empty).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import MajorityRelation, Profile

__all__ = ["ParityError", "WeightedMajorityGraph", "realize", "realize_relation"]


class ParityError(ValueError):
    """The target margins are not realizable by any profile."""


@dataclass(frozen=True)
class WeightedMajorityGraph:
    """A target margin matrix: antisymmetric, zero diagonal, uniform parity."""

    m: int
    target: np.ndarray = field(compare=False)

    def __post_init__(self):
        arr = np.asarray(self.target, dtype=np.int64)
        object.__setattr__(self, "target", arr)
        if arr.shape != (self.m, self.m):
            raise ValueError(f"target must be {self.m}x{self.m}")
        if np.diagonal(arr).any():
            raise ValueError("diagonal must be zero")
        if not np.array_equal(arr, -arr.T):
            raise ValueError("target must be antisymmetric")
        off = [arr[x, y] for x in range(self.m) for y in range(self.m) if x != y]
        parities = {int(v) & 1 for v in off}
        if len(parities) > 1:
            raise ParityError("off-diagonal margins must share one parity")
        object.__setattr__(self, "parity", parities.pop() if parities else 0)

    def __eq__(self, other):
        return (
            isinstance(other, WeightedMajorityGraph)
            and self.m == other.m
            and np.array_equal(self.target, other.target)
        )


def _cancelling_pair(x: int, y: int, m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two ballots that together add +2 to g(x, y) and 0 everywhere else."""
    rest = [z for z in range(m) if z != x and z != y]
    return (x, y, *rest), (*reversed(rest), x, y)


def realize(graph: WeightedMajorityGraph) -> Profile:
    """A profile whose margin matrix equals the target exactly."""
    m = graph.m
    target = graph.target
    ballots: list[tuple[int, ...]] = []
    residual = target.copy()
    if graph.parity == 1:
        seed = tuple(range(m))
        ballots.append(seed)
        for x in range(m):
            for y in range(x + 1, m):
                residual[x, y] -= 1
                residual[y, x] += 1
    for x in range(m):
        for y in range(x + 1, m):
            value = int(residual[x, y])
            hi, lo = (x, y) if value > 0 else (y, x)
            for _ in range(abs(value) // 2):
                ballots.extend(_cancelling_pair(hi, lo, m))
    if not ballots:
        # all-zero even target: one ballot and its reverse
        seed = tuple(range(m))
        ballots = [seed, seed[::-1]]
    return Profile(m, tuple(ballots))


def realize_relation(rel: MajorityRelation, weight: int) -> Profile:
    """A profile whose relation equals ``rel``, all strict margins equal to
    ``weight`` and all ties exactly zero."""
    if weight < 1:
        raise ValueError("weight must be at least 1")
    m = rel.m
    has_tie = any(rel.ties(x, y) for x in range(m) for y in range(x + 1, m))
    if has_tie and weight % 2:
        raise ParityError("ties force even margins, so the weight must be even")
    target = np.zeros((m, m), dtype=np.int64)
    for x in range(m):
        for y in range(m):
            if rel.strictly_prefers(x, y):
                target[x, y], target[y, x] = weight, -weight
    return realize(WeightedMajorityGraph(m, target))
