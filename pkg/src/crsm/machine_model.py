"""State transforms, machines, and single-element iteration structure.

A state transform is a total function on the state set {0, .., n-1},
stored as the tuple of next states. Transforms compose left to right:
applying ``a`` then ``b`` gives ``a * b``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InvariantViolation

__all__ = [
    "StateTransform",
    "IterationProfile",
    "Machine",
    "identity_transform",
    "constant_transform",
    "partition_coarsens",
]


@dataclass(frozen=True)
class StateTransform:
    """A total function on states; equal iff the image tuples are equal."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if n == 0:
            raise ValueError("a transform needs at least one state")
        for q in self.image:
            if not 0 <= q < n:
                raise ValueError(f"next state {q} out of range [0, {n})")

    @property
    def n(self) -> int:
        return len(self.image)

    def compose(self, other: "StateTransform") -> "StateTransform":
        """Apply self first, then other: result[q] = other[self[q]]."""
        if other.n != self.n:
            raise ValueError(f"state count mismatch: {self.n} != {other.n}")
        img = other.image
        return StateTransform(tuple(img[q] for q in self.image))

    __mul__ = compose

    def rank(self) -> int:
        """Number of distinct next states."""
        return len(set(self.image))

    def range(self) -> tuple[int, ...]:
        """Sorted tuple of distinct next states."""
        return tuple(sorted(set(self.image)))

    def kernel_partition(self) -> tuple[tuple[int, ...], ...]:
        """Blocks of states that map to the same next state.

        Blocks are sorted by their smallest member; states inside a block
        ascend. The block count equals the rank.
        """
        blocks = defaultdict(list)
        for q, v in enumerate(self.image):
            blocks[v].append(q)
        return tuple(tuple(b) for b in sorted(blocks.values()))

    def is_idempotent(self) -> bool:
        return self.compose(self) == self

    def iterate_profile(self) -> "IterationProfile":
        """Tail/cycle structure of the powers a, a^2, a^3, ...

        Returns the minimal (tail, period) with a^(tail+period+1) equal to
        a^(tail+1), all distinct powers, and the unique idempotent power.
        """
        powers = [self]
        seen = {self: 1}
        cur = self
        while True:
            cur = cur.compose(self)
            k = len(powers) + 1
            if cur in seen:
                first = seen[cur]  # a^k == a^first with first <= k-1
                tail, period = first - 1, k - first
                break
            seen[cur] = k
            powers.append(cur)
        inv_pos = period * (tail // period + 1)  # only multiple of p in (t, t+p]
        invariant = powers[inv_pos - 1]
        if not invariant.is_idempotent():
            raise InvariantViolation("cycle power at a multiple of the period is not idempotent")
        return IterationProfile(tail, period, invariant, tuple(powers))

    def __repr__(self):
        return f"StateTransform({list(self.image)})"


@dataclass(frozen=True)
class IterationProfile:
    """Distinct powers of one transform: a tail then a cycle."""

    tail: int
    period: int
    invariant_power: StateTransform
    powers: tuple[StateTransform, ...]


def identity_transform(n: int) -> StateTransform:
    return StateTransform(tuple(range(n)))


def constant_transform(n: int, q: int) -> StateTransform:
    return StateTransform((q,) * n)


def partition_coarsens(coarse, fine) -> bool:
    """True if every block of `fine` lies inside one block of `coarse`."""
    owner = {}
    for i, block in enumerate(coarse):
        for q in block:
            owner[q] = i
    return all(len({owner[q] for q in block}) == 1 for block in fine)


@dataclass(frozen=True)
class Machine:
    """A state machine: named states plus one transform per input."""

    n: int
    state_names: tuple[str, ...]
    generators: tuple[tuple[str, StateTransform], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a machine needs at least one state")
        if len(self.state_names) != self.n:
            raise ValueError(f"expected {self.n} state names, got {len(self.state_names)}")
        if len(set(self.state_names)) != self.n:
            raise ValueError("state names must be unique")
        if not self.generators:
            raise ValueError("a machine needs at least one input")
        labels = [label for label, _ in self.generators]
        if len(set(labels)) != len(labels):
            raise ValueError("input labels must be unique")
        for label, t in self.generators:
            if t.n != self.n:
                raise ValueError(f"input {label!r} acts on {t.n} states, machine has {self.n}")

    @classmethod
    def of(
        cls,
        images: Iterable[tuple[str, Sequence[int]]],
        state_names: Optional[Sequence[str]] = None,
    ) -> "Machine":
        """Build a machine from (label, next-state list) pairs."""
        gens = tuple((label, StateTransform(tuple(img))) for label, img in images)
        if not gens:
            raise ValueError("a machine needs at least one input")
        n = gens[0][1].n
        names = tuple(state_names) if state_names is not None else tuple(str(i) for i in range(n))
        return cls(n=n, state_names=names, generators=gens)

    @property
    def input_labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.generators)
