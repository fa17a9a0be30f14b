"""Sequential closure of a machine: element enumeration, Cayley table,
rank spectrum, ideals, and the simplicity / constant-rank decisions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import ClosureBudgetExceeded, InvariantViolation
from .machine_model import Machine, StateTransform

__all__ = [
    "SemigroupClosure",
    "RankSpectrum",
    "DEFAULT_CLOSURE_LIMIT",
    "generate_closure",
    "rank_spectrum",
    "ideal_at_most",
    "principal_ideal",
    "is_simple",
    "is_constant_rank",
    "element_iteration",
]

DEFAULT_CLOSURE_LIMIT = 1_000_000


@dataclass
class SemigroupClosure:
    """All distinct transforms generated by nonempty input words.

    Elements are listed in breadth-first discovery order; ``cayley[i][j]``
    is the index of ``elements[i] * elements[j]``; ``witness_words[i]`` is
    the shortest word (ties broken by generator order) evaluating to
    ``elements[i]``. Treat instances as immutable once built.
    """

    machine: Machine
    elements: list[StateTransform]
    cayley: list[list[int]]
    witness_words: list[tuple[str, ...]]
    generator_indices: tuple[int, ...]
    _index: dict = field(repr=False, default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index_of(self, t: StateTransform) -> int:
        return self._index[t]

    def __contains__(self, t: StateTransform) -> bool:
        return t in self._index

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]


def generate_closure(machine: Machine, limit: int = DEFAULT_CLOSURE_LIMIT) -> SemigroupClosure:
    """Enumerate the closure breadth-first by word length.

    Seeds with the generators, then repeatedly right-composes the frontier
    with every generator, deduplicating by image tuple. Discovery order is
    word length, then lexicographic by generator order, so witness words
    are canonical. Raises ClosureBudgetExceeded if more than `limit`
    distinct elements appear.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    labels = machine.input_labels
    gens = [t for _, t in machine.generators]

    elements: list[StateTransform] = []
    words: list[tuple[str, ...]] = []
    index: dict[StateTransform, int] = {}

    def admit(t, word):
        if len(elements) >= limit:
            raise ClosureBudgetExceeded(limit, len(elements))
        index[t] = len(elements)
        elements.append(t)
        words.append(word)

    frontier = []
    for label, t in zip(labels, gens):
        if t not in index:
            admit(t, (label,))
            frontier.append(t)

    while frontier:
        grown = []
        for t in frontier:
            base = words[index[t]]
            for label, g in zip(labels, gens):
                u = t.compose(g)
                if u not in index:
                    admit(u, base + (label,))
                    grown.append(u)
        frontier = grown

    cayley = [[index[a.compose(b)] for b in elements] for a in elements]
    return SemigroupClosure(
        machine=machine,
        elements=elements,
        cayley=cayley,
        witness_words=words,
        generator_indices=tuple(index[g] for g in gens),
        _index=index,
    )


@dataclass(frozen=True)
class RankSpectrum:
    """Histogram of element ranks."""

    counts: dict[int, int]
    min_rank: int
    max_rank: int


def rank_spectrum(s: SemigroupClosure) -> RankSpectrum:
    counts = Counter(t.rank() for t in s.elements)
    return RankSpectrum(dict(sorted(counts.items())), min(counts), max(counts))


def ideal_at_most(s: SemigroupClosure, k: int) -> list[int]:
    """Indices of all elements with rank <= k; an ideal when non-empty."""
    if k < 1:
        raise ValueError("rank threshold must be positive")
    members = [i for i, t in enumerate(s.elements) if t.rank() <= k]
    chosen = set(members)
    for z in members:
        for x in range(s.size):
            if s.cayley[z][x] not in chosen or s.cayley[x][z] not in chosen:
                raise InvariantViolation(f"rank-{k} element set is not an ideal")
    return members


def _principal_ideal_set(s: SemigroupClosure, x: int) -> set[int]:
    cayley = s.cayley
    size = s.size
    seen = {x}
    queue = [x]
    while queue:
        z = queue.pop()
        row = cayley[z]
        for i in range(size):
            for w in (row[i], cayley[i][z]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return seen

def principal_ideal(s: SemigroupClosure, x: int) -> list[int]:
    """Smallest ideal containing element x (closure of {x} under
    one-sided composition with every element)."""
    if not 0 <= x < s.size:
        raise ValueError(f"element index {x} out of range")
    return sorted(_principal_ideal_set(s, x))


def is_simple(s: SemigroupClosure) -> bool:
    """True iff the principal ideal of every element is the whole closure."""
    size = s.size
    # Low-rank elements have the smallest principal ideals, so a proper
    # ideal (if any) surfaces on the first probe.
    order = sorted(range(size), key=lambda i: s.elements[i].rank())
    return all(len(_principal_ideal_set(s, x)) == size for x in order)


def is_constant_rank(s: SemigroupClosure) -> bool:
    spectrum = rank_spectrum(s)
    return spectrum.min_rank == spectrum.max_rank


def element_iteration(s: SemigroupClosure, x: int) -> tuple[int, int, int]:
    """(tail, period, idempotent power index) of element x inside the closure."""
    cayley = s.cayley
    seq = [x]
    seen = {x: 1}
    cur = x
    while True:
        cur = cayley[cur][x]
        k = len(seq) + 1
        if cur in seen:
            first = seen[cur]
            tail, period = first - 1, k - first
            break
        seen[cur] = k
        seq.append(cur)
    invariant = seq[period * (tail // period + 1) - 1]
    return tail, period, invariant
