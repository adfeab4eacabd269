import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cstardom.cantor import (
    DIAGONAL,
    FULL,
    TriRel,
    dense_chain_witness,
    is_full,
    max_offdiag_width,
    midpoint_witness,
    relation_R,
    relation_S,
    sample_to_grid,
    stage_intervals,
    tri_join,
    tri_meet,
    verify_counterexample,
)
from cstardom.errors import AssertionFailed, BadParameters, DepthLimit, GridTooCoarse
from cstardom.partitions import join as eqrel_join


def F(a, b=1):
    return Fraction(a, b)


@st.composite
def triadic_relations(draw, resolution=3):
    """Random block relation with endpoints on the 3^resolution grid."""
    grid = 3**resolution
    cuts = draw(
        st.lists(st.integers(0, grid), min_size=0, max_size=8, unique=True)
    )
    cuts = sorted(cuts)
    blocks = []
    for a, b in zip(cuts[::2], cuts[1::2]):
        if a < b:
            blocks.append((F(a, grid), F(b, grid)))
    return TriRel(blocks)


class TestStageIntervals:
    def test_root(self):
        assert stage_intervals("") == (F(0), F(1, 3), F(2, 3), F(1))

    def test_left_child(self):
        assert stage_intervals("0") == (F(0), F(1, 9), F(2, 9), F(1, 3))

    def test_right_child(self):
        assert stage_intervals("1") == (F(2, 3), F(7, 9), F(8, 9), F(1))

    def test_rejects_non_binary(self):
        with pytest.raises(BadParameters):
            stage_intervals("02")

    @pytest.mark.parametrize("depth", range(11))
    def test_endpoint_sanity_and_span(self, depth):
        for bits in itertools.product("01", repeat=depth):
            a, b, c, d = stage_intervals("".join(bits))
            assert F(0) <= a < b < c < d <= F(1)
            assert d - a == F(1, 3**depth)


class TestRelationConstruction:
    def test_s1_blocks(self):
        assert relation_S(1).blocks == ((F(0), F(1, 3)), (F(2, 3), F(1)))

    def test_s2_matches_ninths(self):
        expected = ((F(0), F(1, 9)), (F(2, 9), F(3, 9)), (F(6, 9), F(7, 9)), (F(8, 9), F(1)))
        assert relation_S(2).blocks == expected

    def test_r1_blocks(self):
        assert relation_R(1).blocks == (
            (F(1, 9), F(2, 9)),
            (F(1, 3), F(2, 3)),
            (F(7, 9), F(8, 9)),
        )

    def test_r_block_count(self):
        assert len(relation_R(6).blocks) == 127
        for depth in range(7):
            assert len(relation_R(depth).blocks) == 2 ** (depth + 1) - 1

    def test_s_zero_is_full(self):
        assert is_full(relation_S(0))

    def test_depth_limit(self):
        with pytest.raises(DepthLimit):
            relation_R(11)
        with pytest.raises(DepthLimit):
            relation_S(-1)

    @pytest.mark.parametrize("n", range(9))
    def test_s_family_nests(self, n):
        assert relation_S(n + 1).blocks != relation_S(n).blocks
        assert relation_S(n).contains(relation_S(n + 1))

    def test_touching_blocks_rejected(self):
        with pytest.raises(BadParameters):
            TriRel([(F(0), F(1, 3)), (F(1, 3), F(1, 2))])

    def test_degenerate_block_rejected(self):
        with pytest.raises(BadParameters):
            TriRel([(F(1, 2), F(1, 2))])


class TestJoinMeet:
    def test_join_r1_s1_is_full(self):
        assert is_full(tri_join(relation_R(1), relation_S(1)))

    def test_join_with_diagonal(self):
        r = relation_R(2)
        assert tri_join(r, DIAGONAL) == r

    def test_join_nested(self):
        assert tri_join(relation_S(2), relation_S(1)) == relation_S(1)

    def test_meet_nested(self):
        assert tri_meet(relation_S(1), relation_S(2)) == relation_S(2)

    @pytest.mark.parametrize("n", range(1, 10))
    def test_width_is_exact_power(self, n):
        assert max_offdiag_width(relation_S(n)) == F(1, 3**n)

    def test_width_of_diagonal(self):
        assert max_offdiag_width(DIAGONAL) == 0

    def test_is_full(self):
        assert is_full(FULL)
        assert not is_full(relation_R(1))
        assert is_full(tri_join(relation_R(1), relation_S(1)))

    @settings(max_examples=60, deadline=None)
    @given(triadic_relations(), triadic_relations())
    def test_join_commutative_idempotent(self, x, y):
        assert tri_join(x, y) == tri_join(y, x)
        assert tri_join(x, x) == x
        assert tri_join(x, y).contains(x)

    @settings(max_examples=40, deadline=None)
    @given(triadic_relations(), triadic_relations(), triadic_relations())
    def test_join_associative_and_monotone(self, x, y, z):
        assert tri_join(tri_join(x, y), z) == tri_join(x, tri_join(y, z))
        if y.contains(x):
            assert tri_join(y, z).contains(tri_join(x, z))

    @settings(max_examples=50, deadline=None)
    @given(triadic_relations(2), triadic_relations(2))
    def test_join_matches_grid_oracle(self, x, y):
        resolution = 2
        sampled = sample_to_grid(tri_join(x, y), resolution)
        joined = eqrel_join(sample_to_grid(x, resolution), sample_to_grid(y, resolution))
        assert sampled == joined

    @settings(max_examples=50, deadline=None)
    @given(triadic_relations(2), triadic_relations(2))
    def test_meet_is_the_greatest_lower_bound(self, x, y):
        m = tri_meet(x, y)
        assert x.contains(m) and y.contains(m)


class TestCounterexample:
    def test_depth_one(self):
        report = verify_counterexample(1)
        assert report.passed and report.r_blocks == 3

    def test_depth_zero_vacuous(self):
        report = verify_counterexample(0)
        assert report.passed and report.r_blocks == 1
        assert [c.name for c in report.checks] == ["join_diagonal_is_r"]

    @pytest.mark.parametrize("depth", [2, 3, 4])
    def test_mid_depths(self, depth):
        report = verify_counterexample(depth)
        assert report.passed
        names = [c.name for c in report.checks]
        assert f"join_full:n={depth}" in names
        assert f"chain_level:{depth - 1}" in names

    def test_depth_limit(self):
        with pytest.raises(DepthLimit):
            verify_counterexample(11)

    def test_broken_family_aborts_with_the_offending_stage(self, monkeypatch):
        import cstardom.cantor as cantor_module

        # degrade the shrinking family to the diagonal: the very first
        # fullness assertion must abort and name its check
        monkeypatch.setattr(
            cantor_module, "relation_S", lambda n, max_depth=10: DIAGONAL
        )
        with pytest.raises(AssertionFailed) as info:
            cantor_module.verify_counterexample(1)
        assert "join_full:n=1" in str(info.value.detail)

    def test_json_schema(self):
        data = verify_counterexample(2).to_json_dict()
        assert set(data) == {"depth", "r_blocks", "checks"}
        assert all(set(c) == {"name", "pass", "witness"} for c in data["checks"])


class TestGrid:
    def test_s1_on_the_coarse_grid(self):
        sampled = sample_to_grid(relation_S(1), 1)
        nontrivial = [c for c in sampled.classes if len(c) > 1]
        assert nontrivial == [(F(0), F(1, 3)), (F(2, 3), F(1))]

    def test_r1_on_the_ninths_grid(self):
        sampled = sample_to_grid(relation_R(1), 2)
        nontrivial = {c for c in sampled.classes if len(c) > 1}
        assert nontrivial == {
            (F(1, 9), F(2, 9)),
            (F(3, 9), F(4, 9), F(5, 9), F(6, 9)),
            (F(7, 9), F(8, 9)),
        }

    def test_join_functorial_at_sufficient_resolution(self):
        r, s = relation_R(1), relation_S(1)
        sampled = sample_to_grid(tri_join(r, s), 2)
        assert sampled == eqrel_join(sample_to_grid(r, 2), sample_to_grid(s, 2))
        assert len(sampled.classes) == 1

    def test_too_coarse(self):
        with pytest.raises(GridTooCoarse):
            sample_to_grid(relation_S(2), 1)


class TestDenseChain:
    def test_two_witnesses(self):
        first, second = dense_chain_witness(2)
        assert first.blocks == ((F(1, 3), F(1)),)
        assert second.blocks == ((F(2, 3), F(1)),)

    def test_three_witnesses(self):
        chain = dense_chain_witness(3)
        assert [w.blocks[0][0] for w in chain] == [F(1, 4), F(2, 4), F(3, 4)]

    @pytest.mark.parametrize("n", range(2, 17))
    def test_strictly_decreasing_with_midpoints(self, n):
        chain = dense_chain_witness(n)
        for earlier, later in zip(chain, chain[1:]):
            assert earlier.contains(later) and earlier != later
            middle = midpoint_witness(earlier, later)
            assert earlier.contains(middle) and middle.contains(later)
            assert middle not in (earlier, later)

    def test_midpoint_of_named_pair(self):
        a = TriRel(((F(1, 3), F(1)),))
        b = TriRel(((F(2, 3), F(1)),))
        assert midpoint_witness(a, b).blocks == ((F(1, 2), F(1)),)

    def test_needs_two(self):
        with pytest.raises(BadParameters):
            dense_chain_witness(1)
