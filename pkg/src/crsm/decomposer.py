"""Decomposition of simple closures into coordinates over a left-copy,
a right-copy, and a group component, plus synthesis of the matching
branch / reset / permutation machines and recomposition checks.

Every element x of a simple closure factors through the idempotent grid:
its subgroup identity sits at a cell (i, j), and conjugating x into the
reference subgroup G at cell (0, 0) gives a group coordinate g. The
product law is then

    (i1, j1, g1) . (i2, j2, g2) = (i1, j2, g1 * P[j1][i2] * g2)

with the coupling matrix P[j][i] built from the products of row-0 and
column-0 idempotents. The law is verified exhaustively on every pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra_analyzer import (
    MaxSubgroup,
    build_idempotent_grid,
    max_subgroup,
    periodicity_report,
)
from .closure_engine import (
    SemigroupClosure,
    element_iteration,
    generate_closure,
    ideal_at_most,
    is_constant_rank,
    is_simple,
    rank_spectrum,
    RankSpectrum,
    DEFAULT_CLOSURE_LIMIT,
)
from .errors import InvariantViolation, NotSimpleError
from .machine_model import Machine

__all__ = [
    "ReesDecomposition",
    "ComponentSet",
    "RecompositionReport",
    "MachineReport",
    "decompose",
    "synthesize_components",
    "recompose_verify",
    "classify_basic",
    "decompose_machine",
    "format_spectrum",
]

BASIC_LABELS = ("C2", "U2", "H2", "L2", "R2", "Cp", "other")


@dataclass
class ReesDecomposition:
    """Coordinates (row, column, group element) for every element of a
    simple closure, with the group-valued coupling matrix."""

    m: int                              # rows = branch size
    n: int                              # columns = reset size
    reference: int                      # idempotent at cell (0, 0)
    group: MaxSubgroup                  # reference subgroup
    coords: list[tuple[int, int, int]]  # per element; third entry indexes the closure
    sandwich: list[list[int]]           # n x m matrix of group elements
    kind: str                           # "direct" | "semidirect"


@dataclass
class ComponentSet:
    """The three component machines of a decomposed simple closure."""

    branch: Machine
    reset: Machine
    permutation: Machine


@dataclass
class RecompositionReport:
    passed: bool
    pairs_checked: int
    first_mismatch: Optional[str] = None


def format_spectrum(spectrum: RankSpectrum) -> str:
    parts = ", ".join(f"{r}:{c}" for r, c in sorted(spectrum.counts.items(), reverse=True))
    return "{" + parts + "}"


def _group_inverse(s: SemigroupClosure, group: MaxSubgroup, x: int) -> int:
    e = group.identity
    for y in group.members:
        if s.cayley[x][y] == e and s.cayley[y][x] == e:
            return y
    raise InvariantViolation(f"no inverse for {x} in the subgroup on {e}")


def decompose(s: SemigroupClosure) -> ReesDecomposition:
    """Coordinatize a simple closure over its idempotent grid.

    The reference idempotent is the grid's first; g(x) = e00 * x * e00
    lands in the reference subgroup, and the coupling entry P[j][i] is
    g of the product of the row-0 idempotent in column j with the
    column-0 idempotent in row i. The multiplication law is checked on
    all |S|^2 pairs before the decomposition is returned.
    """
    if not is_simple(s):
        raise NotSimpleError(
            f"closure is not simple: rank spectrum {format_spectrum(rank_spectrum(s))}"
        )
    grid = build_idempotent_grid(s)
    if not grid.total:
        raise InvariantViolation("idempotent grid of a simple closure has empty cells")
    m, n = len(grid.rows), len(grid.cols)
    e00 = grid.grid[0][0]
    group = max_subgroup(s, e00)
    cayley = s.cayley
    members = set(group.members)

    def into_group(x):
        g = cayley[cayley[e00][x]][e00]
        if g not in members:
            raise InvariantViolation(f"e00*x*e00 left the reference subgroup for x={x}")
        return g

    coords = []
    for x in range(s.size):
        tail, _, invariant = element_iteration(s, x)
        if tail:
            raise InvariantViolation(f"element {x} of a simple closure has a tail")
        i, j = grid.cell_of[invariant]
        coords.append((i, j, into_group(x)))

    if len(set(coords)) != s.size or s.size != m * n * group.order:
        raise InvariantViolation("coordinates do not biject onto rows x columns x group")

    sandwich = [
        [into_group(cayley[grid.grid[0][j]][grid.grid[i][0]]) for i in range(m)]
        for j in range(n)
    ]

    for x in range(s.size):
        ix, jx, gx = coords[x]
        row = cayley[x]
        for y in range(s.size):
            iy, jy, gy = coords[y]
            expected = (ix, jy, cayley[cayley[gx][sandwich[jx][iy]]][gy])
            if coords[row[y]] != expected:
                raise InvariantViolation(
                    f"multiplication law fails on pair ({x}, {y}): "
                    f"{coords[row[y]]} != {expected}"
                )

    # Scale row 0 and column 0 to the identity; the closure splits as a
    # direct product exactly when nothing non-trivial survives.
    normalized_trivial = all(
        cayley[
            cayley[_group_inverse(s, group, sandwich[j][0])][sandwich[j][i]]
        ][_group_inverse(s, group, sandwich[0][i])]
        == e00
        for j in range(n)
        for i in range(m)
    )
    kind = "direct" if normalized_trivial else "semidirect"
    return ReesDecomposition(
        m=m, n=n, reference=e00, group=group, coords=coords, sandwich=sandwich, kind=kind
    )


def _group_generators(s: SemigroupClosure, group: MaxSubgroup) -> list[int]:
    """Greedy generating set; the identity is used only for the trivial group."""
    if group.order == 1:
        return [group.identity]
    gens: list[int] = []
    generated = set()
    for x in group.members:
        if x == group.identity or x in generated:
            continue
        gens.append(x)
        reached = {group.identity} | set(gens)
        frontier = list(reached)
        while frontier:
            grown = []
            for y in frontier:
                for g in gens:
                    z = s.cayley[y][g]
                    if z not in reached:
                        reached.add(z)
                        grown.append(z)
            frontier = grown
        generated = reached
        if len(generated) == group.order:
            break
    return gens


def synthesize_components(s: SemigroupClosure, d: ReesDecomposition) -> ComponentSet:
    """Build the branch, reset, and permutation machines of a decomposition.

    The branch machine has one extra initial state that each input steers
    to its own row; the reset machine's inputs are the constant maps; the
    permutation machine realizes the reference group on its own elements
    by right multiplication.
    """
    m, n = d.m, d.n
    branch = Machine.of(
        [(f"b{i}", tuple(range(m)) + (i,)) for i in range(m)],
        state_names=[str(q) for q in range(m)] + ["init"],
    )
    reset = Machine.of(
        [(f"r{j}", (j,) * n) for j in range(n)],
        state_names=[str(q) for q in range(n)],
    )
    members = d.group.members
    local = {x: k for k, x in enumerate(members)}
    perm_gens = []
    for idx, g in enumerate(_group_generators(s, d.group)):
        image = tuple(local[s.cayley[x][g]] for x in members)
        perm_gens.append((f"p{idx}", image))
    permutation = Machine.of(perm_gens, state_names=[f"g{k}" for k in range(len(members))])
    return ComponentSet(branch=branch, reset=reset, permutation=permutation)


def recompose_verify(s: SemigroupClosure, d: ReesDecomposition) -> RecompositionReport:
    """Rebuild the abstract coordinate semigroup and compare it with s.

    Constructs the product law on triples (row, column, group index) from
    the coupling matrix alone, then checks element-wise, through the
    coordinate bijection, that both Cayley tables agree on every pair.
    """
    members = d.group.members
    local = {x: k for k, x in enumerate(members)}
    gtab = [[local[s.cayley[x][y]] for y in members] for x in members]
    p_local = [[local[d.sandwich[j][i]] for i in range(d.m)] for j in range(d.n)]

    triple_of = [(i, j, local[g]) for i, j, g in d.coords]
    element_of = {t: x for x, t in enumerate(triple_of)}
    if len(element_of) != s.size:
        return RecompositionReport(False, 0, "coordinates are not a bijection")

    checked = 0
    for x in range(s.size):
        i1, j1, k1 = triple_of[x]
        for y in range(s.size):
            i2, j2, k2 = triple_of[y]
            product = (i1, j2, gtab[gtab[k1][p_local[j1][i2]]][k2])
            checked += 1
            if element_of[product] != s.cayley[x][y]:
                return RecompositionReport(
                    False,
                    checked,
                    f"pair ({x}, {y}): abstract product {product} maps to "
                    f"{element_of[product]}, closure gives {s.cayley[x][y]}",
                )
    return RecompositionReport(True, checked)


def classify_basic(s: SemigroupClosure) -> str:
    """Label order-2 closures as one of the five basic types, detect
    prime-order single-generator periodic closures, else "other"."""
    if s.size == 2:
        return _classify_order_two(s)
    if _is_prime(s.size) and len(set(s.generator_indices)) == 1:
        gen = s.generator_indices[0]
        tail, _, _ = element_iteration(s, gen)
        if tail == 0:
            return "Cp"
    return "other"


def _classify_order_two(s: SemigroupClosure) -> str:
    cayley = s.cayley
    ids = [i for i in (0, 1) if cayley[i][i] == i]
    if len(ids) == 2:
        if cayley[0][1] == cayley[1][0]:
            return "H2"
        return "L2" if cayley[0][1] == 0 else "R2"
    # one idempotent e, one non-idempotent x with xx = e
    e = ids[0]
    x = 1 - e
    return "C2" if cayley[e][x] == x else "U2"


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    return all(k % d for d in range(2, int(k**0.5) + 1))


@dataclass
class MachineReport:
    """Everything the analysis pipeline learned about one machine."""

    machine: Machine
    closure: SemigroupClosure
    spectrum: RankSpectrum
    simple: bool
    constant_rank: bool
    idempotent_indices: list[int]
    grid_rows: int
    grid_cols: int
    grid_total: bool
    periodicity: list[tuple[int, int]]
    basic_type: str
    minimal_ideal: Optional[list[int]]
    decomposition: Optional[ReesDecomposition]
    components: Optional[ComponentSet]
    verification: Optional[RecompositionReport]


def decompose_machine(machine: Machine, limit: int = DEFAULT_CLOSURE_LIMIT) -> MachineReport:
    """Full pipeline: closure, structure flags, and, for simple closures,
    the decomposition with synthesized components and recomposition check.
    Non-simple closures get the diagnostic view (spectrum, minimal ideal,
    periodicity) instead."""
    closure = generate_closure(machine, limit)
    spectrum = rank_spectrum(closure)
    simple = is_simple(closure)
    constant = is_constant_rank(closure)
    if simple != constant:
        raise InvariantViolation(
            "simplicity and constant rank disagree; one of the checks is broken"
        )
    grid = build_idempotent_grid(closure)
    periodicity = periodicity_report(closure)
    basic = classify_basic(closure)

    decomposition = components = verification = None
    minimal_ideal = None
    if simple:
        decomposition = decompose(closure)
        components = synthesize_components(closure, decomposition)
        verification = recompose_verify(closure, decomposition)
    else:
        minimal_ideal = ideal_at_most(closure, spectrum.min_rank)

    return MachineReport(
        machine=machine,
        closure=closure,
        spectrum=spectrum,
        simple=simple,
        constant_rank=constant,
        idempotent_indices=grid.idempotents,
        grid_rows=len(grid.rows),
        grid_cols=len(grid.cols),
        grid_total=grid.total,
        periodicity=periodicity,
        basic_type=basic,
        minimal_ideal=minimal_ideal,
        decomposition=decomposition,
        components=components,
        verification=verification,
    )
