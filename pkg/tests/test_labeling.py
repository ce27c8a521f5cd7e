"""Element enumeration, coordinated labeling, meet/join, duality."""

import pytest

from linespace import (
    GeometryModel,
    IncidenceStructure,
    Kind,
    LabelInconsistencyError,
    MissingElementError,
    PreconditionError,
    coordinate_labels,
    dualize,
    enumerate_secondary_elements,
    gen_negative,
    incident_pairs,
    join_plane,
    meet_point,
    perp,
)
from linespace.labeling import labeled_sigma_classes

from conftest import names_for


def named_family(s, family):
    return sorted(sorted(s.labels[i] for i in e) for e in family)


class TestEnumeration:
    def test_tetra_eight_elements(self, tetra):
        elements = enumerate_secondary_elements(tetra)
        assert len(elements) == 8
        expected = [
            ["a", "b", "c"],
            ["a", "b", "ch"],
            ["a", "bh", "c"],
            ["a", "bh", "ch"],
            ["ah", "b", "c"],
            ["ah", "b", "ch"],
            ["ah", "bh", "c"],
            ["ah", "bh", "ch"],
        ]
        assert sorted(names_for(tetra, e) for e in elements) == expected

    def test_pg2_thirty_elements_of_seven(self, pg2):
        elements = enumerate_secondary_elements(pg2)
        assert len(elements) == 30
        assert all(len(e) == 7 for e in elements)

    def test_no_incident_pairs_no_elements(self):
        s = IncidenceStructure.from_skew_pairs(3, [(0, 1), (0, 2), (1, 2)])
        assert enumerate_secondary_elements(s) == []

    def test_elements_are_perp_closed(self, tetra, pg2):
        for s in (tetra, pg2):
            for e in enumerate_secondary_elements(s):
                assert perp(s, e) == e


class TestCoordinateLabels:
    def test_tetra_seeded_vertices_as_points(self, tetra):
        m = coordinate_labels(tetra, (0, 1, 1))
        assert named_family(tetra, m.points) == [
            ["a", "b", "ch"],
            ["a", "bh", "c"],
            ["ah", "b", "c"],
            ["ah", "bh", "ch"],
        ]
        assert named_family(tetra, m.planes) == [
            ["a", "b", "c"],
            ["a", "bh", "ch"],
            ["ah", "b", "ch"],
            ["ah", "bh", "c"],
        ]

    def test_default_seed_deterministic(self, tetra):
        m1 = coordinate_labels(tetra)
        m2 = coordinate_labels(tetra)
        assert m1 == m2
        assert m1.seed == (0, 1, 0)

    def test_swapped_seed_swaps_kinds(self, tetra):
        m0 = coordinate_labels(tetra, (0, 1, 0))
        m1 = coordinate_labels(tetra, (0, 1, 1))
        assert m0.points == m1.planes
        assert m0.planes == m1.points

    def test_pg2_counts(self, pg2_model):
        assert len(pg2_model.points) == 15
        assert len(pg2_model.planes) == 15
        assert all(len(e) == 7 for e in pg2_model.points + pg2_model.planes)

    def test_empty_structure_empty_model(self):
        s = IncidenceStructure.from_skew_pairs(2, [(0, 1)])
        m = coordinate_labels(s)
        assert m.points == () and m.planes == () and m.seed is None

    def test_two_components_inconsistent(self):
        # Everything in the far component misses the seed point, so both
        # sigma classes of its pairs land on the plane side; the pair
        # coverage check trips first, on the least second-component pair.
        s = gen_negative("two_components")
        with pytest.raises(LabelInconsistencyError) as exc:
            coordinate_labels(s)
        witness = exc.value.witness
        assert witness["issue"] == "pair_classes_same_kind"
        assert witness["pair"] == ["a2", "b2"]
        assert witness["kind"] == "plane"

    def test_bad_seed_rejected(self, tetra):
        with pytest.raises(PreconditionError):
            coordinate_labels(tetra, (0, 0, 0))
        with pytest.raises(PreconditionError):
            coordinate_labels(tetra, (0, 3, 0))  # skew pair
        with pytest.raises(PreconditionError):
            coordinate_labels(tetra, (0, 1, 2))

    def test_every_pair_covered_one_point_one_plane(self, pg2, pg2_model):
        from linespace import sigma_partition, bracket

        point_set = {frozenset(e) for e in pg2_model.points}
        plane_set = {frozenset(e) for e in pg2_model.planes}
        for a, b in incident_pairs(pg2):
            part = sigma_partition(pg2, a, b)
            kinds = set()
            for cls in part.classes:
                fs = bracket(pg2, a, b, min(cls))
                kinds.add("point" if fs in point_set else "plane" if fs in plane_set else "?")
            assert kinds == {"point", "plane"}


class TestMeetJoin:
    def test_tetra_examples(self, tetra):
        m = coordinate_labels(tetra, (0, 1, 1))
        assert names_for(tetra, meet_point(m, 0, 1).lines) == ["a", "b", "ch"]
        assert names_for(tetra, join_plane(m, 0, 1).lines) == ["a", "b", "c"]
        assert meet_point(m, 0, 1).kind is Kind.POINT
        assert join_plane(m, 0, 1).kind is Kind.PLANE

    def test_meet_size_pg2(self, pg2, pg2_model):
        for a, b in incident_pairs(pg2)[:25]:
            assert len(meet_point(pg2_model, a, b).lines) == 7

    def test_pencil_size_pg2(self, pg2, pg2_model):
        for a, b in incident_pairs(pg2)[:25]:
            pencil = set(meet_point(pg2_model, a, b).lines) & set(
                join_plane(pg2_model, a, b).lines
            )
            assert len(pencil) == 3
            assert pencil == perp(pg2, perp(pg2, (a, b)))

    def test_skew_pair_rejected(self, tetra):
        m = coordinate_labels(tetra)
        with pytest.raises(PreconditionError, match="skew"):
            meet_point(m, 0, 3)

    def test_identical_rejected(self, tetra):
        m = coordinate_labels(tetra)
        with pytest.raises(PreconditionError, match="distinct"):
            join_plane(m, 0, 0)

    def test_missing_element_on_corrupt_model(self, tetra):
        m = coordinate_labels(tetra)
        broken = GeometryModel(
            structure=tetra, points=(), planes=m.planes, seed=m.seed
        )
        with pytest.raises(MissingElementError):
            meet_point(broken, 0, 1)


class TestDualize:
    def test_involution(self, tetra, pg2_model):
        m = coordinate_labels(tetra)
        assert dualize(dualize(m)) == m
        assert dualize(dualize(pg2_model)) == pg2_model

    def test_swaps_families(self, pg2_model):
        d = dualize(pg2_model)
        assert d.points == pg2_model.planes
        assert d.planes == pg2_model.points
        assert len(d.points) == 15 and len(d.planes) == 15

    def test_seed_class_flips(self, pg2_model):
        a, b, k = pg2_model.seed
        assert dualize(pg2_model).seed == (a, b, 1 - k)

    def test_empty_model(self):
        s = IncidenceStructure.from_skew_pairs(2, [(0, 1)])
        m = coordinate_labels(s)
        assert dualize(m) == m

    def test_dual_rejects_corrupt_model(self, tetra):
        m = coordinate_labels(tetra)
        # Drop one plane: the swapped families no longer verify.
        broken = GeometryModel(
            structure=tetra, points=m.points, planes=m.planes[:-1], seed=m.seed
        )
        with pytest.raises(LabelInconsistencyError):
            dualize(broken)


class TestLabeledClasses:
    def test_point_class_matches_meet(self, pg2, pg2_model):
        for a, b in incident_pairs(pg2)[:15]:
            pc, qc = labeled_sigma_classes(pg2_model, a, b)
            meet = set(meet_point(pg2_model, a, b).lines)
            join = set(join_plane(pg2_model, a, b).lines)
            pencil = meet & join
            assert pc == frozenset(meet - pencil)
            assert qc == frozenset(join - pencil)
