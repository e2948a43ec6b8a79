import math

import pytest
from hypothesis import given, strategies as st

from mordell_lab.exceptions import DegenerateTriangleError, InteriorityError, GeometryError
from mordell_lab.geometry import Triangle, Point2, BarycentricPoint, orient2d, point_quantities, quantities, \
    cartesian_to_barycentric, barycentric_to_cartesian, bisector_lengths_oracle, tangent_distance_identity, \
    ray_segment_intersection, relative_error, pedal_distances, vertex_distances, apex_angles, tangent_distances


class TestTriangle:
    def test_sides_and_area(self, right_triangle):
        tri = right_triangle["triangle"]
        assert tri.sides == pytest.approx((5.0, 3.0, 4.0), rel=1e-15)
        assert tri.area == pytest.approx(6.0)

    def test_clockwise_input_is_normalized(self):
        tri = Triangle((0, 0), (0, 3), (4, 0))
        assert orient2d(*tri.vertices) > 0
        assert tri.B == Point2(4.0, 0.0)
        assert tri.C == Point2(0.0, 3.0)

    @pytest.mark.parametrize("vertices", [
        ((0, 0), (1, 1), (2, 2)),
        ((0, 0), (1, 0), (2, 1e-13)),
        ((1, 1), (1, 1), (1, 1)),
    ])
    def test_degenerate_rejected(self, vertices):
        with pytest.raises(DegenerateTriangleError):
            Triangle(*vertices)

    def test_non_finite_vertex(self):
        with pytest.raises(GeometryError):
            Triangle((0, 0), (1, 0), (float("nan"), 1))

    def test_equilateral(self):
        tri = Triangle.equilateral(2.0)
        assert tri.sides == pytest.approx((2.0, 2.0, 2.0))
        assert tri.angles == pytest.approx((math.pi / 3,) * 3)

    def test_from_angles(self):
        angles = (0.3, 1.1, math.pi - 1.4)
        tri = Triangle.from_angles(*angles)
        assert max(tri.sides) == pytest.approx(1.0, rel=1e-15)
        assert tri.angles == pytest.approx(angles, abs=1e-12)

    def test_circumcircle(self, right_triangle):
        center, radius = right_triangle["triangle"].circumcircle
        assert center.x == pytest.approx(2.0)
        assert center.y == pytest.approx(1.5)
        assert radius == pytest.approx(2.5)

    def test_scaled(self, right_triangle):
        tri = right_triangle["triangle"].scaled(2.0)
        assert tri.sides == pytest.approx((10.0, 6.0, 8.0))


class TestBarycentric:
    def test_centroid(self):
        assert BarycentricPoint.centroid().coordinates == pytest.approx((1 / 3,) * 3)

    @pytest.mark.parametrize("coords", [(0.5, 0.5, 0.0), (0.6, 0.6, -0.2), (0.5, 0.2, 0.2), (1.0, float("nan"), 0.0)])
    def test_invalid(self, coords):
        with pytest.raises(InteriorityError):
            BarycentricPoint(*coords)

    def test_margin(self):
        with pytest.raises(InteriorityError):
            BarycentricPoint(0.5, 0.5 - 1e-7, 1e-7)
        assert BarycentricPoint(0.5, 0.5 - 1e-7, 1e-7, margin=1e-9).coordinates[2] == 1e-7

    def test_cartesian_conversion(self, right_triangle):
        tri = right_triangle["triangle"]
        bary = cartesian_to_barycentric(tri, Point2(1.0, 1.0))
        # areas of PBC, PCA, PAB over the area 6
        assert bary.coordinates == pytest.approx((2.5 / 6, 1.5 / 6, 2.0 / 6))
        assert tuple(barycentric_to_cartesian(tri, bary)) == pytest.approx((1.0, 1.0))

    @pytest.mark.parametrize("point", [(5.0, 5.0), (2.0, 0.0), (0.0, 0.0), (-1.0, 1.0)])
    def test_not_interior(self, right_triangle, point):
        with pytest.raises(InteriorityError):
            cartesian_to_barycentric(right_triangle["triangle"], Point2(*point))
        with pytest.raises(InteriorityError):
            point_quantities(right_triangle["triangle"], point)

    @pytest.mark.parametrize("function", [pedal_distances, vertex_distances, apex_angles, tangent_distances,
                                          bisector_lengths_oracle])
    @pytest.mark.parametrize("point", [(5.0, 5.0), (2.0, 0.0), (0.0, 0.0)])
    def test_per_point_functions_need_an_interior_point(self, right_triangle, function, point):
        with pytest.raises(InteriorityError):
            function(right_triangle["triangle"], point)


class TestQuantities:
    def test_reference_values(self, reference):
        q = point_quantities(reference["triangle"], reference["point"], check=True)
        values = q.as_dict()
        for name, expected in reference["expected"].items():
            assert values[name] == pytest.approx(expected, rel=1e-10, abs=1e-14), name

    def test_rounded_bisectors(self, right_triangle):
        q = point_quantities(right_triangle["triangle"], right_triangle["point"])
        assert q.bisector_lengths == pytest.approx((1.002515, 1.013081, 1.027478), abs=1e-5)

    def test_tangent_identity_fixture(self, right_triangle):
        assert tangent_distance_identity(5.0, 3.0, 4.0, 1.0, 1.0, 1.0) == pytest.approx((1.4, 3.0, 2.0), abs=1e-12)
        q = point_quantities(right_triangle["triangle"], right_triangle["point"])
        assert q.tangent_distances == pytest.approx((1.4, 3.0, 2.0), abs=1e-12)

    def test_dual_paths_agree(self, samples):
        for sample in samples:
            tri = sample.triangle
            P = barycentric_to_cartesian(tri, sample.point)
            q = point_quantities(tri, P)
            oracle = bisector_lengths_oracle(tri, P)
            identity = tangent_distance_identity(*tri.sides, *q.pedal_distances)
            assert max(relative_error(x, y) for x, y in zip(q.bisector_lengths, oracle)) <= 1e-9
            assert max(relative_error(x, y) for x, y in zip(q.tangent_distances, identity)) <= 1e-9

    def test_invariants(self, samples):
        for sample in samples:
            q = quantities(sample.triangle, sample.point)
            q.check_invariants()
            assert sum(q.apex_angles) == pytest.approx(2 * math.pi, abs=1e-12)
            assert all(d <= l * (1 + 1e-12) for d, l in zip(q.pedal_distances, q.bisector_lengths))
            assert all(R <= s * (1 + 1e-12) for R, s in zip(q.tangent_distances, q.vertex_distances))

    def test_area_decomposition(self, samples):
        for sample in samples:
            tri = sample.triangle
            q = quantities(tri, sample.point)
            weighted = sum(side * d for side, d in zip(tri.sides, q.pedal_distances))
            assert weighted == pytest.approx(2 * tri.area, rel=1e-11)

    @pytest.mark.parametrize("t", [2.0, 0.5])
    def test_similarity(self, samples, t):
        for sample in samples[:200]:
            q = quantities(sample.triangle, sample.point).as_dict()
            scaled = quantities(sample.triangle.scaled(t), sample.point).as_dict()
            for name, value in q.items():
                expected = value if name in ("alpha", "beta", "gamma") else t * value
                assert scaled[name] == pytest.approx(expected, rel=1e-9), name

    def test_circumcenter_is_equidistant(self, samples):
        for sample in samples:
            center, radius = sample.triangle.circumcircle
            for V in sample.triangle.vertices:
                assert math.hypot(V.x - center.x, V.y - center.y) == pytest.approx(radius, rel=1e-10)

    def test_ray_parallel_to_segment(self):
        with pytest.raises(GeometryError):
            ray_segment_intersection(Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(2, 1))

    @given(st.floats(-4.0, 4.0), st.floats(-4.0, 4.0))
    def test_apex_angles_sum(self, s, t):
        weights = [math.exp(s), math.exp(t), 1.0]
        total = sum(weights)
        bary = BarycentricPoint(weights[0] / total, weights[1] / total, 1.0 - (weights[0] + weights[1]) / total,
                                margin=0.0)
        q = quantities(Triangle((0, 0), (4, 0), (0, 3)), bary)
        assert sum(q.apex_angles) == pytest.approx(2 * math.pi, abs=1e-12)
        assert all(0 < angle < math.pi for angle in q.apex_angles)
