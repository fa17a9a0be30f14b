import pytest
from hypothesis import given, settings, strategies as st

from crsm.algebra_analyzer import (
    summarize_group,
    EquivalenceKind,
    InvariantOrder,
    build_idempotent_grid,
    check_range_ordering,
    equivalence,
    idempotents,
    is_anti_commutative,
    is_grid_direct_product,
    is_rectangular_band,
    max_subgroup,
    order_invariants,
    periodicity_report,
    subgroup_isomorphism,
)
from crsm.closure_engine import generate_closure, is_constant_rank, is_simple
from crsm.machine_model import Machine, StateTransform

from .oracles import SEMIDIRECT_2x2xC2, right_regular_machine


def closure_of(*images, labels="abcd"):
    return generate_closure(Machine.of(list(zip(labels, images))))


@pytest.fixture(scope="module")
def band_closure():
    # the four-element rectangular band: two L-equivalent idempotents
    # crossed with two R-equivalent ones
    _, table = SEMIDIRECT_2x2xC2
    # trivial-group variant: plain 2x2 band
    from .oracles import rees_product_table

    _, band_table = rees_product_table([[0]], 2, 2, [[0, 0], [0, 0]])
    return generate_closure(right_regular_machine(band_table, names=list("abcd")))


@pytest.fixture(scope="module")
def semidirect_closure():
    _, table = SEMIDIRECT_2x2xC2
    return generate_closure(right_regular_machine(table))


class TestIdempotents:
    def test_h2_has_two(self, basic_closures):
        assert len(idempotents(basic_closures["H2"])) == 2

    def test_c2_has_one(self, basic_closures):
        assert len(idempotents(basic_closures["C2"])) == 1

    def test_full_transformation_closure_has_ten(self):
        s = closure_of((1, 0, 2), (1, 2, 0), (0, 0, 2))
        brute = [t for t in s.elements if t.compose(t) == t]
        assert len(idempotents(s)) == len(brute) == 10


class TestOrderInvariants:
    def test_h2_is_ordered(self, basic_closures):
        s = basic_closures["H2"]
        identity = next(i for i, t in enumerate(s.elements) if t.rank() == 2)
        const = next(i for i, t in enumerate(s.elements) if t.rank() == 1)
        assert order_invariants(s, identity, const) is InvariantOrder.FIRST_ABOVE
        assert order_invariants(s, const, identity) is InvariantOrder.SECOND_ABOVE

    def test_equal(self, basic_closures):
        s = basic_closures["H2"]
        assert order_invariants(s, 0, 0) is InvariantOrder.EQUAL

    def test_l2_non_commuting(self, basic_closures):
        s = basic_closures["L2"]
        assert order_invariants(s, 0, 1) is InvariantOrder.NON_COMMUTING

    def test_unordered_meet(self):
        # two commuting idempotents whose product is a third element
        s = closure_of((0, 1, 0, 3), (0, 3, 2, 3), labels="ab")
        a = s.index_of(StateTransform((0, 1, 0, 3)))
        b = s.index_of(StateTransform((0, 3, 2, 3)))
        assert order_invariants(s, a, b) is InvariantOrder.UNORDERED

    def test_rejects_non_idempotent(self, basic_closures):
        s = basic_closures["C2"]
        swap = next(i for i, t in enumerate(s.elements) if not t.is_idempotent())
        with pytest.raises(ValueError):
            order_invariants(s, swap, swap)


class TestRangeOrdering:
    def test_h2_pair_consistent(self):
        identity = StateTransform((0, 1))
        const = StateTransform((1, 1))
        check = check_range_ordering(identity, const)
        assert check.ordered and check.range_contained and check.consistent

    def test_equal_pair(self):
        e = StateTransform((0, 0, 2))
        check = check_range_ordering(e, e)
        assert check.ordered and check.range_contained

    def test_rejects_non_commuting(self):
        a = StateTransform((0, 1, 1))
        b = StateTransform((0, 1, 0))
        with pytest.raises(ValueError, match="commute"):
            check_range_ordering(a, b)

    @given(st.data())
    @settings(max_examples=80, deadline=None)
    def test_commuting_pairs_always_consistent(self, data):
        n = data.draw(st.integers(2, 5))
        imgs = data.draw(
            st.tuples(
                st.tuples(*[st.integers(0, n - 1)] * n),
                st.tuples(*[st.integers(0, n - 1)] * n),
            )
        )
        e, z = StateTransform(imgs[0]), StateTransform(imgs[1])
        if not (e.is_idempotent() and z.is_idempotent()):
            return
        if e.compose(z) != z.compose(e):
            return
        assert check_range_ordering(e, z).consistent


class TestEquivalence:
    def test_l2_generators(self, basic_closures):
        assert equivalence(basic_closures["L2"], 0, 1) is EquivalenceKind.L

    def test_r2_generators(self, basic_closures):
        assert equivalence(basic_closures["R2"], 0, 1) is EquivalenceKind.R

    def test_band_diagonal(self, band_closure):
        s = band_closure
        a = 0
        b = next(
            x for x in range(1, s.size) if s.cayley[a][x] not in (a, x)
        )
        ab, ba = s.cayley[a][b], s.cayley[b][a]
        assert len({a, b, ab, ba}) == 4
        assert equivalence(s, a, b) is EquivalenceKind.D
        assert equivalence(s, ab, ba) is EquivalenceKind.D

    def test_h2_pair_unrelated(self, basic_closures):
        assert equivalence(basic_closures["H2"], 0, 1) is EquivalenceKind.NONE

    def test_equivalent_invariants_have_equal_rank(self, closure_sample):
        for s in closure_sample[:200]:
            ids = idempotents(s)
            for a in ids:
                for b in ids:
                    if a < b and equivalence(s, a, b) is not EquivalenceKind.NONE:
                        assert s.elements[a].rank() == s.elements[b].rank()


class TestBandPredicates:
    def test_band_is_rectangular(self, band_closure):
        assert is_rectangular_band(band_closure)
        assert is_anti_commutative(band_closure)
        assert is_grid_direct_product(band_closure)

    def test_h2_is_not(self, basic_closures):
        s = basic_closures["H2"]
        assert not is_rectangular_band(s)
        assert not is_anti_commutative(s)
        assert not is_grid_direct_product(s)

    def test_c2_group_is_commutative(self, basic_closures):
        assert not is_anti_commutative(basic_closures["C2"])

    def test_single_idempotent(self):
        s = closure_of((0, 0, 2), labels="a")
        assert is_rectangular_band(s)

    def test_all_idempotent_ordering_property(self, closure_sample):
        # a(aba) = (aba)a = aba whenever everything is idempotent
        for s in closure_sample:
            if any(s.cayley[i][i] != i for i in range(s.size)):
                continue
            for a in range(s.size):
                for b in range(s.size):
                    aba = s.cayley[s.cayley[a][b]][a]
                    assert s.cayley[a][aba] == aba == s.cayley[aba][a]


class TestGrid:
    def test_l2_grid_shape(self, basic_closures):
        grid = build_idempotent_grid(basic_closures["L2"])
        assert (len(grid.rows), len(grid.cols)) == (2, 1)
        assert grid.total

    def test_r2_grid_shape(self, basic_closures):
        grid = build_idempotent_grid(basic_closures["R2"])
        assert (len(grid.rows), len(grid.cols)) == (1, 2)
        assert grid.total

    def test_h2_grid_is_partial(self, basic_closures):
        grid = build_idempotent_grid(basic_closures["H2"])
        assert (len(grid.rows), len(grid.cols)) == (2, 2)
        assert not grid.total

    def test_semidirect_grid(self, semidirect_closure):
        grid = build_idempotent_grid(semidirect_closure)
        assert (len(grid.rows), len(grid.cols)) == (2, 2)
        assert grid.total

    def test_rows_and_columns_partition_idempotents(self, closure_sample):
        for s in closure_sample[:150]:
            grid = build_idempotent_grid(s)
            ids = grid.idempotents
            assert sorted(e for row in grid.rows for e in row) == ids
            assert sorted(e for col in grid.cols for e in col) == ids


class TestMaxSubgroups:
    def test_group_closure_is_its_own_subgroup(self, basic_closures):
        s = basic_closures["C2"]
        e = idempotents(s)[0]
        assert max_subgroup(s, e).order == 2

    def test_l2_subgroups_trivial(self, basic_closures):
        s = basic_closures["L2"]
        for e in idempotents(s):
            assert max_subgroup(s, e).members == [e]

    def test_u2_excludes_aperiodic_generator(self):
        s = closure_of((0, 0, 1), labels="a")
        zero = s.index_of(StateTransform((0, 0, 0)))
        assert max_subgroup(s, zero).members == [zero]

    def test_semidirect_subgroups_have_order_two(self, semidirect_closure):
        s = semidirect_closure
        for e in idempotents(s):
            assert max_subgroup(s, e).order == 2

    def test_simple_closures_are_partitioned(self, closure_sample):
        for s in closure_sample:
            if not is_simple(s):
                continue
            sizes = [max_subgroup(s, e).order for e in idempotents(s)]
            assert sum(sizes) == s.size

    def test_aSa_equals_subgroup_on_simple_closures(self, closure_sample):
        for s in closure_sample[:150]:
            if not is_simple(s):
                continue
            for e in idempotents(s):
                members = set(max_subgroup(s, e).members)
                conjugates = {s.cayley[s.cayley[e][x]][e] for x in range(s.size)}
                assert conjugates == members


class TestSummarizeGroup:
    def test_cyclic_group(self):
        s = closure_of((1, 2, 0), labels="a")
        e = idempotents(s)[0]
        summary = summarize_group(s, max_subgroup(s, e))
        assert summary.order == 3
        assert summary.abelian
        assert summary.element_orders == (1, 3, 3)

    def test_symmetric_group_on_three_states(self):
        s = closure_of((1, 0, 2), (1, 2, 0), labels="ab")
        e = next(i for i in idempotents(s))
        summary = summarize_group(s, max_subgroup(s, e))
        assert summary.order == 6
        assert not summary.abelian
        assert summary.element_orders == (1, 2, 2, 2, 3, 3)


class TestSubgroupIsomorphism:
    def test_r2_trivial_groups(self, basic_closures):
        s = basic_closures["R2"]
        a, b = idempotents(s)
        assert subgroup_isomorphism(s, a, b) == {b: a}

    def test_band_diagonal_collapse(self, band_closure):
        s = band_closure
        ids = idempotents(s)
        for a in ids:
            for b in ids:
                mapping = subgroup_isomorphism(s, a, b)
                assert mapping == {b: a}

    def test_semidirect_order_two_groups(self, semidirect_closure):
        s = semidirect_closure
        ids = idempotents(s)
        for a in ids:
            for b in ids:
                mapping = subgroup_isomorphism(s, a, b)
                assert len(mapping) == 2

    def test_rejects_inequivalent(self, basic_closures):
        s = basic_closures["H2"]
        a, b = idempotents(s)
        with pytest.raises(ValueError, match="not equivalent"):
            subgroup_isomorphism(s, a, b)


class TestSimpleClosureInvariants:
    def test_no_idempotent_pair_commutes(self, closure_sample):
        found_simple = 0
        for s in closure_sample:
            if not is_simple(s):
                continue
            found_simple += 1
            ids = idempotents(s)
            for a in ids:
                for b in ids:
                    if a != b:
                        assert order_invariants(s, a, b) is InvariantOrder.NON_COMMUTING
        assert found_simple > 0

    def test_direct_equivalences_are_transitive(self, closure_sample):
        from crsm.algebra_analyzer import _direct_l, _direct_r

        for s in closure_sample[:150]:
            ids = idempotents(s)
            for rel in (_direct_l, _direct_r):
                for a in ids:
                    for b in ids:
                        for c in ids:
                            if rel(s, a, b) and rel(s, b, c):
                                assert rel(s, a, c)


class TestPeriodicity:
    def test_simple_closures_have_no_tails(self, basic_closures):
        for name in ("C2", "L2", "R2"):
            assert all(t == 0 for t, _ in periodicity_report(basic_closures[name]))

    def test_u2_generator_has_tail(self, basic_closures):
        report = periodicity_report(basic_closures["U2"])
        assert report[0] == (1, 1)

    def test_idempotent_only_closure(self, band_closure):
        assert periodicity_report(band_closure) == [(0, 1)] * band_closure.size


class TestBandConditionEquivalences:
    def test_five_conditions_agree(self, closure_sample):
        checked = 0
        for s in closure_sample:
            if any(s.cayley[i][i] != i for i in range(s.size)):
                continue
            checked += 1
            ids = idempotents(s)
            conds = [
                is_anti_commutative(s),
                is_constant_rank(s),
                all(
                    s.cayley[s.cayley[a][b]][a] == a
                    for a in range(s.size)
                    for b in range(s.size)
                ),
                all(
                    equivalence(s, a, b) is not EquivalenceKind.NONE
                    for a in ids
                    for b in ids
                ),
                is_grid_direct_product(s),
            ]
            assert len(set(conds)) == 1, (s.machine, conds)
        assert checked > 0
