import math

import numpy as np
import pytest

from mordell_lab.catalog import InequalityId, evaluate, WeightVector
from mordell_lab.exceptions import ImproperlyConfigured, GeometryError
from mordell_lab.geometry import Triangle, orient2d, barycentric_to_cartesian, quantities
from mordell_lab.report import dumps
from mordell_lab.verify import ShapeMode, SamplerConfig, sample_rng, sample_triangle, sample_interior_point, \
    sample_weights, sample_locus_point, draw_sample, run_suite, check_identities, histogram_edges, BRIDGES, \
    _reduce, _chunks


class TestSamplerConfig:
    @pytest.mark.parametrize("options", [{"n_samples": 0}, {"seed": -1}, {"seed": 2 ** 64}, {"weight_log_std": 6.0},
                                         {"eps_interior": 0.5}, {"shape_mode": "bogus"}, {"locus_vertex": "D"},
                                         {"tolerance_rel": -1.0}])
    def test_invalid(self, options):
        with pytest.raises(ImproperlyConfigured):
            SamplerConfig(**options)

    def test_shape_spellings(self):
        assert SamplerConfig(shape_mode="near-degenerate").shape_mode is ShapeMode.NEAR_DEGENERATE
        assert SamplerConfig(shape_mode="uniform").shape_mode is ShapeMode.UNIFORM_ANGLES
        assert SamplerConfig(locus_vertex="b").locus_vertex == "B"

    def test_to_dict(self):
        data = SamplerConfig(seed=3).to_dict()
        assert data["seed"] == 3
        assert data["shape_mode"] == "uniform_angles"


class TestSamplers:
    def test_draws_are_reproducible(self):
        cfg = SamplerConfig(seed=11)
        first, second = draw_sample(cfg, 5), draw_sample(cfg, 5)
        assert first.triangle == second.triangle
        assert first.point == second.point
        assert first.weights == second.weights
        assert draw_sample(cfg, 6).point != first.point

    def test_uniform_triangles(self):
        cfg = SamplerConfig()
        for index in range(2000):
            tri = sample_triangle(sample_rng(1, index), cfg)
            assert max(tri.sides) == pytest.approx(1.0, rel=1e-12)
            assert min(tri.angles) >= 0.05 - 1e-9
            assert orient2d(*tri.vertices) > 0

    def test_near_degenerate_triangles(self):
        cfg = SamplerConfig(shape_mode="near_degenerate")
        angles = [min(sample_triangle(sample_rng(2, index), cfg).angles) for index in range(2000)]
        assert min(angles) >= 1e-3 - 1e-9
        assert min(angles) < 0.05

    def test_near_equilateral_without_noise(self):
        cfg = SamplerConfig(shape_mode="near_equilateral", equilateral_std=0.0)
        tri = sample_triangle(sample_rng(0, 0), cfg)
        assert tri.angles == pytest.approx((math.pi / 3,) * 3, abs=1e-12)

    def test_interior_points(self):
        cfg = SamplerConfig(eps_interior=1e-6)
        coords = np.array([sample_interior_point(sample_rng(4, index), cfg).coordinates for index in range(20000)])
        assert coords.min() >= 1e-6
        assert coords.mean(axis=0) == pytest.approx([1 / 3] * 3, abs=0.01)

    def test_weights(self):
        assert sample_weights(sample_rng(0, 0), SamplerConfig(weight_log_std=0.0)) == WeightVector.unit()
        w = sample_weights(sample_rng(0, 1), SamplerConfig(weight_log_std=2.0))
        assert w.log_x + w.log_y + w.log_z == 0.0
        assert w.log_u + w.log_v + w.log_w == 0.0

    def test_locus_point_lies_on_the_circumcenter_line(self):
        tri = Triangle((0, 0), (4, 0), (1, 3))
        center = tri.circumcircle.center
        rng = sample_rng(0, 0)
        for vertex, V in zip("ABC", tri.vertices):
            for _ in range(20):
                P = barycentric_to_cartesian(tri, sample_locus_point(rng, tri, vertex))
                assert orient2d(V, center, P) == pytest.approx(0.0, abs=1e-12)

    def test_locus_point_needs_an_interior_line(self):
        obtuse = Triangle((0, 0), (4, 0), (0.5, 0.5))
        with pytest.raises(GeometryError):
            sample_locus_point(sample_rng(0, 0), obtuse, "A")


class TestSuite:
    def test_classical_inequalities_hold(self):
        cfg = SamplerConfig(seed=1, n_samples=2000)
        report = run_suite(cfg, "EM,BARROW,DNP")
        assert report.passed
        for ident in ("EM", "BARROW", "DNP"):
            record = report[ident]
            assert record["samples"] == 2000
            assert record["errors"] == 0
            assert record["min_rel_slack"] >= -1e-9
            assert sum(record["histogram"]) == 2000
            assert record["argmin_configuration"]["index"] == record["argmin"]
            assert record["worst_offender"] is None

    @pytest.mark.parametrize("shape", ["uniform_angles", "near_degenerate", "near_equilateral"])
    def test_whole_catalog(self, shape):
        report = run_suite(SamplerConfig(seed=2, n_samples=300, shape_mode=shape), bridges=True)
        assert report.passed, report.to_dict()
        assert list(report.records)[-len(BRIDGES):] == list(BRIDGES)
        assert report.errors == 0

    def test_lemma_on_its_equality_line(self):
        cfg = SamplerConfig(seed=1, n_samples=500, locus_vertex="A")
        report = run_suite(cfg, [InequalityId.LEMMA_A])
        assert report.passed
        assert abs(report["LEMMA_A"]["min_rel_slack"]) <= 1e-9
        for index in range(100):
            sample = draw_sample(cfg, index)
            result = evaluate("LEMMA_A", quantities(sample.triangle, sample.point), sample.weights,
                              sample.triangle.sides)
            assert abs(result.rel_slack) <= 1e-9

    def test_report_is_deterministic(self):
        cfg = SamplerConfig(seed=5, n_samples=400)
        assert dumps(run_suite(cfg, "EM,WEM,PROD_BARROW")) == dumps(run_suite(cfg, "EM,WEM,PROD_BARROW"))

    def test_workers_do_not_change_the_report(self):
        cfg = SamplerConfig(seed=5, n_samples=400)
        serial = run_suite(cfg, "EM,WDNP,WBARROW_STRONG", workers=1)
        parallel = run_suite(cfg, "EM,WDNP,WBARROW_STRONG", workers=4)
        assert dumps(serial) == dumps(parallel)

    def test_rows(self):
        rows = run_suite(SamplerConfig(seed=1, n_samples=50), "EM").to_rows()
        assert [row["id"] for row in rows] == ["EM"]
        assert rows[0]["samples"] == 50
        assert "lambda_A" in rows[0] and "log_w" in rows[0]


class TestReduction:
    def test_reduce_counts_errors_and_violations(self):
        record = _reduce(np.array([np.nan, 0.5, -1.0, 1e-20]), 10, 1e-9)
        assert record["samples"] == 3
        assert record["errors"] == 1
        assert record["violations"] == 1
        assert record["min_rel_slack"] == -1.0
        assert record["argmin"] == 12
        assert sum(record["histogram"]) == 3
        assert record["histogram"][0] == 2

    def test_histogram_layout(self):
        edges = histogram_edges()
        assert len(edges) == 63
        assert edges[0] == pytest.approx(1e-16)
        assert edges[-1] == pytest.approx(1.0)

    def test_chunks_cover_every_sample(self):
        chunks = _chunks(1001, 3)
        assert chunks[0][0] == 0 and chunks[-1][1] == 1001
        assert all(lo == prev_hi for (lo, _), (_, prev_hi) in zip(chunks[1:], chunks[:-1]))


class TestIdentities:
    def test_identities_hold(self):
        report = check_identities(SamplerConfig(seed=1, n_samples=1000))
        assert report.passed, report.to_dict()
        for name, record in report.records.items():
            assert record["max_rel_disagreement"] <= record["tolerance"], name

    def test_workers_do_not_change_the_report(self):
        cfg = SamplerConfig(seed=3, n_samples=300)
        assert dumps(check_identities(cfg)) == dumps(check_identities(cfg, workers=4))
