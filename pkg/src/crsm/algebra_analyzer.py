"""Idempotent structure of a closure: ordering, L/R/diagonal equivalence,
rectangular-band tests, maximal subgroups and their isomorphisms."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .closure_engine import SemigroupClosure, element_iteration
from .errors import InvariantViolation
from .machine_model import StateTransform

__all__ = [
    "InvariantOrder",
    "EquivalenceKind",
    "RangeOrderCheck",
    "IdempotentGrid",
    "MaxSubgroup",
    "GroupSummary",
    "idempotents",
    "order_invariants",
    "check_range_ordering",
    "equivalence",
    "is_rectangular_band",
    "is_anti_commutative",
    "build_idempotent_grid",
    "is_grid_direct_product",
    "max_subgroup",
    "summarize_group",
    "subgroup_isomorphism",
    "periodicity_report",
]


class InvariantOrder(str, enum.Enum):
    EQUAL = "equal"
    FIRST_ABOVE = "e>=z"
    SECOND_ABOVE = "z>=e"
    UNORDERED = "unordered"
    NON_COMMUTING = "non-commuting"


class EquivalenceKind(str, enum.Enum):
    L = "L"
    R = "R"
    D = "D"
    NONE = "none"


def idempotents(s: SemigroupClosure) -> list[int]:
    """Indices of all elements e with ee = e, in canonical order."""
    return [i for i in range(s.size) if s.cayley[i][i] == i]


def _require_idempotent(s: SemigroupClosure, x: int, role: str):
    if not 0 <= x < s.size:
        raise ValueError(f"{role}: element index {x} out of range")
    if s.cayley[x][x] != x:
        raise ValueError(f"{role}: element {x} is not idempotent")


def order_invariants(s: SemigroupClosure, e: int, z: int) -> InvariantOrder:
    """Classify an idempotent pair: equal / ordered / unordered / non-commuting.

    e >= z means ez = ze = z, i.e. e is a two-sided identity for z.
    """
    _require_idempotent(s, e, "e")
    _require_idempotent(s, z, "z")
    ez, ze = s.cayley[e][z], s.cayley[z][e]
    if ez != ze:
        return InvariantOrder.NON_COMMUTING
    if e == z:
        return InvariantOrder.EQUAL
    if ez == z:
        return InvariantOrder.FIRST_ABOVE
    if ez == e:
        return InvariantOrder.SECOND_ABOVE
    return InvariantOrder.UNORDERED


@dataclass(frozen=True)
class RangeOrderCheck:
    """Both sides of the ordering-vs-range comparison for one pair."""

    ordered: bool          # z <= e as idempotents
    range_contained: bool  # range(z) subset of range(e)

    @property
    def consistent(self) -> bool:
        return self.ordered == self.range_contained


def check_range_ordering(e: StateTransform, z: StateTransform) -> RangeOrderCheck:
    """Compare the idempotent ordering z <= e with range containment.

    The two sides must agree for commuting idempotents; non-commuting
    pairs are rejected since the comparison is only meaningful there.
    """
    if not e.is_idempotent() or not z.is_idempotent():
        raise ValueError("both transforms must be idempotent")
    ez, ze = e.compose(z), z.compose(e)
    if ez != ze:
        raise ValueError("transforms do not commute")
    ordered = ez == z
    contained = set(z.range()) <= set(e.range())
    return RangeOrderCheck(ordered=ordered, range_contained=contained)


def _direct_l(s, a, b):
    return s.cayley[a][b] == a and s.cayley[b][a] == b


def _direct_r(s, a, b):
    return s.cayley[a][b] == b and s.cayley[b][a] == a


def _idempotent_chain(s: SemigroupClosure, a: int, b: int) -> Optional[list[int]]:
    """Shortest path from a to b over direct L/R links between idempotents.

    Shortest paths alternate L and R automatically: two links of the same
    kind in a row would collapse into one by transitivity.
    """
    ids = idempotents(s)
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in ids:
            if y not in parent and (_direct_l(s, x, y) or _direct_r(s, x, y)):
                parent[y] = x
                if y == b:
                    chain = [b]
                    while parent[chain[-1]] is not None:
                        chain.append(parent[chain[-1]])
                    return chain[::-1]
                queue.append(y)
    return None


def equivalence(s: SemigroupClosure, a: int, b: int) -> EquivalenceKind:
    """L, R, or diagonal equivalence of two idempotents.

    Direct pairs form a two-element left- or right-copy semigroup. The
    diagonal case connects a to b through other idempotents by a chain of
    direct L and R steps.
    """
    _require_idempotent(s, a, "a")
    _require_idempotent(s, b, "b")
    if _direct_l(s, a, b):
        return EquivalenceKind.L
    if _direct_r(s, a, b):
        return EquivalenceKind.R
    if _idempotent_chain(s, a, b) is not None:
        return EquivalenceKind.D
    return EquivalenceKind.NONE


def is_rectangular_band(s: SemigroupClosure) -> bool:
    """True iff every element is idempotent and aba = a for all a, b."""
    size, cayley = s.size, s.cayley
    if any(cayley[i][i] != i for i in range(size)):
        return False
    return all(
        cayley[cayley[a][b]][a] == a for a in range(size) for b in range(size)
    )


def is_anti_commutative(s: SemigroupClosure) -> bool:
    """True iff ab = ba only when a = b."""
    size, cayley = s.size, s.cayley
    return all(
        cayley[a][b] != cayley[b][a]
        for a in range(size)
        for b in range(a + 1, size)
    )


@dataclass
class IdempotentGrid:
    """Idempotents arranged by R-class (rows) and L-class (columns).

    ``grid[r][c]`` is the idempotent lying in row r and column c, or None
    when the cell is empty; in a simple closure every cell is filled.
    """

    idempotents: list[int]
    rows: list[list[int]]
    cols: list[list[int]]
    grid: list[list[Optional[int]]]
    cell_of: dict[int, tuple[int, int]]

    @property
    def total(self) -> bool:
        return all(cell is not None for row in self.grid for cell in row)


def build_idempotent_grid(s: SemigroupClosure) -> IdempotentGrid:
    """Group idempotents into R-class rows and L-class columns.

    Both relations are transitive on idempotents, so comparing against one
    representative per class suffices. Rows and columns are ordered by
    first appearance in the canonical element order.
    """
    ids = idempotents(s)
    rows: list[list[int]] = []
    cols: list[list[int]] = []
    for e in ids:
        for row in rows:
            if _direct_r(s, e, row[0]):
                row.append(e)
                break
        else:
            rows.append([e])
        for col in cols:
            if _direct_l(s, e, col[0]):
                col.append(e)
                break
        else:
            cols.append([e])

    cell_of = {}
    grid: list[list[Optional[int]]] = [[None] * len(cols) for _ in rows]
    for r, row in enumerate(rows):
        for e in row:
            c = next(ci for ci, col in enumerate(cols) if e in col)
            if grid[r][c] is not None:
                raise InvariantViolation("two idempotents share a grid cell")
            grid[r][c] = e
            cell_of[e] = (r, c)
    return IdempotentGrid(idempotents=ids, rows=rows, cols=cols, grid=grid, cell_of=cell_of)


def is_grid_direct_product(s: SemigroupClosure) -> bool:
    """True iff s is isomorphic to the direct product of a left- and a
    right-copy semigroup rebuilt from its idempotent grid."""
    grid = build_idempotent_grid(s)
    if len(grid.idempotents) != s.size or not grid.total:
        return False
    cell = grid.cell_of
    return all(
        cell[s.cayley[a][b]] == (cell[a][0], cell[b][1])
        for a in range(s.size)
        for b in range(s.size)
    )


@dataclass
class MaxSubgroup:
    """The group of all periodic elements whose iterations settle on one
    idempotent, which acts as the group identity."""

    identity: int
    members: list[int]

    @property
    def order(self) -> int:
        return len(self.members)


def max_subgroup(s: SemigroupClosure, e: int) -> MaxSubgroup:
    """Collect the maximal subgroup on idempotent e and verify the group
    axioms (closure, identity, inverses) on its members."""
    _require_idempotent(s, e, "e")
    members = []
    for x in range(s.size):
        tail, _, invariant = element_iteration(s, x)
        if tail == 0 and invariant == e:
            members.append(x)
    member_set = set(members)
    cayley = s.cayley
    for x in members:
        if cayley[e][x] != x or cayley[x][e] != x:
            raise InvariantViolation(f"idempotent {e} is not an identity for member {x}")
        if any(cayley[x][y] not in member_set for y in members):
            raise InvariantViolation(f"subgroup on {e} is not closed")
        if not any(cayley[x][y] == e and cayley[y][x] == e for y in members):
            raise InvariantViolation(f"member {x} has no inverse in the subgroup on {e}")
    return MaxSubgroup(identity=e, members=members)


@dataclass(frozen=True)
class GroupSummary:
    """Coarse identification of a subgroup: enough to tell the usual
    small groups apart without solving general isomorphism."""

    order: int
    abelian: bool
    element_orders: tuple[int, ...]


def summarize_group(s: SemigroupClosure, group: MaxSubgroup) -> GroupSummary:
    cayley = s.cayley
    members = group.members
    abelian = all(
        cayley[x][y] == cayley[y][x] for x in members for y in members
    )
    orders = []
    for x in members:
        power, k = x, 1
        while power != group.identity:
            power = cayley[power][x]
            k += 1
        orders.append(k)
    return GroupSummary(order=group.order, abelian=abelian, element_orders=tuple(sorted(orders)))


def subgroup_isomorphism(s: SemigroupClosure, a: int, b: int) -> dict[int, int]:
    """The explicit isomorphism G_b -> G_a attached to the equivalence.

    aLb sends x to ax and aRb sends x to xa. A diagonal pair is handled by
    composing those step maps along the connecting chain of idempotents;
    conjugating with a alone (x to axa) is a bijection between the groups
    but stops being composition-preserving once the coupling between grid
    cells is non-trivial. The returned map is verified to be a
    composition-preserving bijection.
    """
    kind = equivalence(s, a, b)
    if kind is EquivalenceKind.NONE:
        raise ValueError(f"idempotents {a} and {b} are not equivalent")
    cayley = s.cayley
    if kind is EquivalenceKind.L:
        def phi(x): return cayley[a][x]
    elif kind is EquivalenceKind.R:
        def phi(x): return cayley[x][a]
    else:
        chain = _idempotent_chain(s, a, b)
        steps = list(zip(chain, chain[1:]))

        def phi(x):
            # walk the chain from the b end: each link maps the group on
            # its far idempotent onto the group on the near one
            for near, far in reversed(steps):
                x = cayley[near][x] if _direct_l(s, near, far) else cayley[x][near]
            return x

    group_a = set(max_subgroup(s, a).members)
    group_b = max_subgroup(s, b).members
    mapping = {x: phi(x) for x in group_b}
    image = set(mapping.values())
    if image != group_a or len(image) != len(group_b):
        raise InvariantViolation(f"{kind.value}-map of G_{b} is not a bijection onto G_{a}")
    for x in group_b:
        for y in group_b:
            if mapping[cayley[x][y]] != cayley[mapping[x]][mapping[y]]:
                raise InvariantViolation(f"{kind.value}-map G_{b} -> G_{a} does not preserve composition")
    return mapping


def periodicity_report(s: SemigroupClosure) -> list[tuple[int, int]]:
    """(tail, period) for every element, in canonical order."""
    return [element_iteration(s, x)[:2] for x in range(s.size)]
