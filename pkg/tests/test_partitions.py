import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cstardom.errors import BadParameters, GroundMismatch, OutOfRange, SizeLimit
from cstardom.order import glb, lub
from cstardom.partitions import (
    ORIENT_REFINEMENT,
    ORIENT_SUBALGEBRA,
    EqRel,
    all_partitions,
    bell_number,
    collapse,
    join,
    label_of,
    meet,
    partition_lattice,
    quotient,
)


def rel(n, *classes):
    return EqRel(range(1, n + 1), classes)


@st.composite
def eqrels(draw, n=5):
    assignment = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    buckets = {}
    for x, cls in zip(range(1, n + 1), assignment):
        buckets.setdefault(cls, []).append(x)
    return EqRel(range(1, n + 1), buckets.values())


class TestEqRel:
    def test_canonical_form(self):
        a = EqRel(range(1, 4), [[3], [2, 1]])
        b = EqRel(range(1, 4), [[1, 2], [3]])
        assert a == b and hash(a) == hash(b)
        assert a.classes == ((1, 2), (3,))

    def test_rejects_overlap(self):
        with pytest.raises(BadParameters):
            rel(3, [1, 2], [2, 3])

    def test_rejects_partial_cover(self):
        with pytest.raises(BadParameters):
            rel(3, [1, 2])

    def test_relates(self):
        r = rel(3, [1, 2], [3])
        assert r.relates(1, 2) and not r.relates(1, 3)

    def test_refines(self):
        finer = rel(4, [1, 2], [3], [4])
        coarser = rel(4, [1, 2, 3], [4])
        assert finer.refines(coarser)
        assert not coarser.refines(finer)
        with pytest.raises(GroundMismatch):
            finer.refines(rel(3, [1, 2], [3]))


class TestJoinMeet:
    def test_join_collapses(self):
        assert join(rel(3, [1, 2], [3]), rel(3, [1], [2, 3])) == rel(3, [1, 2, 3])

    def test_join_with_diagonal_is_identity(self):
        r = rel(4, [1, 3], [2], [4])
        assert join(r, EqRel.diagonal(range(1, 5))) == r

    def test_join_on_four_matches_brute_force(self):
        r = rel(4, [1, 2], [3], [4])
        s = rel(4, [1], [2], [3, 4])
        joined = join(r, s)
        # brute force: the refinement-least partition containing both
        containing = [
            p for p in all_partitions(range(1, 5)) if r.refines(p) and s.refines(p)
        ]
        least = [p for p in containing if all(p.refines(q) for q in containing)]
        assert least == [joined]
        assert joined == rel(4, [1, 2], [3, 4])

    def test_meet_examples(self):
        assert meet(rel(3, [1, 2, 3]), rel(3, [1, 2], [3])) == rel(3, [1, 2], [3])
        r = rel(3, [1, 3], [2])
        assert meet(r, r) == r
        assert meet(rel(4, [1, 2], [3, 4]), rel(4, [1, 3], [2, 4])) == EqRel.diagonal(
            range(1, 5)
        )

    def test_ground_mismatch(self):
        with pytest.raises(GroundMismatch):
            join(rel(3, [1, 2, 3]), rel(4, [1, 2, 3, 4]))

    @settings(max_examples=60, deadline=None)
    @given(eqrels(), eqrels())
    def test_join_meet_are_lattice_bounds(self, r, s):
        j, m = join(r, s), meet(r, s)
        assert r.refines(j) and s.refines(j)
        assert m.refines(r) and m.refines(s)
        # absorption
        assert join(r, meet(r, s)) == r
        assert meet(r, join(r, s)) == r

    @settings(max_examples=40, deadline=None)
    @given(eqrels(), eqrels(), eqrels())
    def test_monotone(self, r, s, t):
        if r.refines(s):
            assert join(r, t).refines(join(s, t))
            assert meet(r, t).refines(meet(s, t))


class TestPartitionLattice:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_sizes(self, n, count):
        poset = partition_lattice(n, ORIENT_SUBALGEBRA)
        assert poset.n == count == bell_number(n)

    def test_size_limit(self):
        with pytest.raises(SizeLimit):
            partition_lattice(9, ORIENT_SUBALGEBRA)
        with pytest.raises(SizeLimit):
            partition_lattice(0, ORIENT_SUBALGEBRA)

    def test_orientation_required(self):
        with pytest.raises(BadParameters):
            partition_lattice(3, "upside-down")

    def test_subalgebra_bottom_is_one_block(self):
        poset = partition_lattice(3, ORIENT_SUBALGEBRA)
        assert poset.elements[poset.bottom()] == "{1,2,3}"
        assert poset.elements[poset.top()] == "{1}|{2}|{3}"

    def test_singleton_lattice(self):
        poset = partition_lattice(1, ORIENT_SUBALGEBRA)
        assert poset.n == 1 and poset.bottom() == poset.top()

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_orientations_are_order_duals(self, n):
        sub = partition_lattice(n, ORIENT_SUBALGEBRA)
        ref = partition_lattice(n, ORIENT_REFINEMENT)
        assert sub.up == ref.dn and sub.dn == ref.up

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_atom_count_is_two_block_partitions(self, n):
        poset = partition_lattice(n, ORIENT_SUBALGEBRA)
        bottom = poset.bottom()
        atoms = [j for i, j in poset.covers() if i == bottom]
        assert len(atoms) == 2 ** (n - 1) - 1
        for j in atoms:
            assert len(poset.payloads[j].classes) == 2

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_join_meet_agree_with_order_bounds(self, n):
        poset = partition_lattice(n, ORIENT_REFINEMENT)
        index = {p: i for i, p in enumerate(poset.payloads)}
        for a, b in itertools.product(poset.payloads, repeat=2):
            assert lub(poset, [index[a], index[b]]) == index[join(a, b)]
            assert glb(poset, [index[a], index[b]]) == index[meet(a, b)]

    def test_anti_isomorphism_against_relation_inclusion(self):
        # relation containment (refinement) flips into subalgebra order
        poset = partition_lattice(4, ORIENT_SUBALGEBRA)
        rels = poset.payloads
        for i, j in itertools.product(range(poset.n), repeat=2):
            assert poset.leq(i, j) == rels[j].refines(rels[i])


class TestCollapseQuotient:
    def test_collapse_pair(self):
        assert collapse(3, {1, 2}) == rel(3, [1, 2], [3])

    def test_collapse_empty_is_diagonal(self):
        assert collapse(3, set()) == EqRel.diagonal(range(1, 4))
        assert collapse(3, {2}) == EqRel.diagonal(range(1, 4))

    def test_collapse_triple(self):
        assert collapse(4, {1, 2, 3}) == rel(4, [1, 2, 3], [4])

    def test_collapse_out_of_range(self):
        with pytest.raises(OutOfRange):
            collapse(3, {1, 9})

    def test_quotient_shapes(self):
        points, projection = quotient(3, rel(3, [1, 2], [3]))
        assert len(points) == 2
        assert projection[1] == projection[2] != projection[3]
        points, projection = quotient(3, EqRel.diagonal(range(1, 4)))
        assert len(points) == 3
        points, _ = quotient(4, EqRel.full(range(1, 5)))
        assert len(points) == 1


class TestSerialization:
    def test_json_round_trip(self):
        r = rel(4, [1, 3], [2], [4])
        data = r.to_json_dict()
        assert data == {"n": 4, "classes": [[1, 3], [2], [4]]}
        assert EqRel(range(1, data["n"] + 1), data["classes"]) == r

    def test_label(self):
        assert label_of(rel(3, [1, 2], [3])) == "{1,2}|{3}"
