"""
    verify.py - Seeded randomized property runs over the whole catalog.

Every sample owns an independent PCG64 stream derived from (seed, sample index), so a run gives the same report
whatever the number of workers: chunks are reduced with sums and index tie-broken minima only.
"""
import logging
import math
import os
from collections import OrderedDict, namedtuple
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict
from enum import Enum

import numpy as np

from . import conf
from .catalog import get_inequality, parse_ids, summed_coefficients, wolstenholme_slack, wolstenholme_decomposition, \
    chain_identity, EvaluationResult, WeightVector
from .exceptions import ImproperlyConfigured, GeometryError, MordellLabError
from .geometry import Triangle, BarycentricPoint, Point2, quantities, tangent_distance_identity, \
    bisector_lengths_oracle, barycentric_to_cartesian, ray_segment_intersection, relative_error


__all__ = ["ShapeMode", "SamplerConfig", "Sample", "SuiteReport", "IdentityReport", "BRIDGES",
           "sample_rng", "sample_triangle", "sample_interior_point", "sample_weights", "sample_locus_point",
           "sample_configuration", "draw_sample", "run_suite", "check_identities", "histogram_edges",
           "chain_identity_disagreement", "wolstenholme_disagreement"]


logger = logging.getLogger(__name__)


class ShapeMode(str, Enum):
    UNIFORM_ANGLES = "uniform_angles"
    NEAR_DEGENERATE = "near_degenerate"
    NEAR_EQUILATERAL = "near_equilateral"

    @classmethod
    def parse(cls, value):
        """Accept enum values and the command line spellings ("uniform", "near-degenerate", ...)."""
        if isinstance(value, cls):
            return value
        name = str(value).strip().lower().replace("-", "_")
        if name == "uniform":
            name = cls.UNIFORM_ANGLES.value
        try:
            return cls(name)
        except ValueError:
            raise ImproperlyConfigured("Unknown shape mode %r" % (value,)) from None

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SamplerConfig(object):
    """Configuration of the random configuration generator.

    Args:
        seed (int)[0]: Master seed (unsigned 64 bit).
        n_samples (int)[10000]: Number of sampled configurations.
        weight_log_std (float)[0.5]: Standard deviation of the free log-weights, at most 5.
        shape_mode (ShapeMode/str)[uniform_angles]: Triangle shape distribution.
        eps_interior (float)[1e-6]: Barycentric interior margin.
        tolerance_rel (float)[1e-9]: rel_slack below -tolerance_rel is a violation.
        locus_vertex (str)[None]: "A", "B" or "C" to draw P on the line through that vertex and the circumcenter.
        equilateral_std (float)[0.05]: Angle perturbation of the near_equilateral mode.
    """
    seed: int = 0
    n_samples: int = 10000
    weight_log_std: float = conf.DEFAULT_WEIGHT_LOG_STD
    shape_mode: ShapeMode = ShapeMode.UNIFORM_ANGLES
    eps_interior: float = conf.DEFAULT_EPS_INTERIOR
    tolerance_rel: float = conf.DEFAULT_TOLERANCE_REL
    locus_vertex: str = None
    equilateral_std: float = conf.NEAR_EQUILATERAL_STD

    def __post_init__(self):
        object.__setattr__(self, "shape_mode", ShapeMode.parse(self.shape_mode))
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ImproperlyConfigured("seed must be an unsigned 64 bit integer, got %r" % (self.seed,))
        if not isinstance(self.n_samples, int) or self.n_samples < 1:
            raise ImproperlyConfigured("n_samples must be a positive integer, got %r" % (self.n_samples,))
        if not 0 <= self.weight_log_std <= conf.MAX_WEIGHT_LOG_STD:
            raise ImproperlyConfigured("weight_log_std must lie in [0, %g], got %r"
                                       % (conf.MAX_WEIGHT_LOG_STD, self.weight_log_std))
        if not 0 <= self.eps_interior < 1 / 3:
            raise ImproperlyConfigured("eps_interior must lie in [0, 1/3), got %r" % (self.eps_interior,))
        if not self.tolerance_rel >= 0:
            raise ImproperlyConfigured("tolerance_rel must be non-negative, got %r" % (self.tolerance_rel,))
        if self.locus_vertex is not None:
            vertex = str(self.locus_vertex).upper()
            if vertex not in ("A", "B", "C"):
                raise ImproperlyConfigured("locus_vertex must be A, B or C, got %r" % (self.locus_vertex,))
            object.__setattr__(self, "locus_vertex", vertex)
        if not self.equilateral_std >= 0:
            raise ImproperlyConfigured("equilateral_std must be non-negative, got %r" % (self.equilateral_std,))

    def to_dict(self):
        data = asdict(self)
        data["shape_mode"] = self.shape_mode.value
        return data


class Sample(namedtuple("Sample", "index triangle point weights")):
    __slots__ = ()

    def to_dict(self):
        return OrderedDict([("index", self.index),
                            ("triangle", self.triangle.as_list()),
                            ("barycentric", self.point.as_list()),
                            ("log_weights", self.weights.as_list())])


# ========== Samplers ==========
def sample_rng(seed, index):
    """Independent generator for one sample: PCG64 seeded by SeedSequence(seed, spawn_key=(index,))."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _angles(rng, cfg):
    mode = cfg.shape_mode
    if mode is ShapeMode.NEAR_EQUILATERAL:
        for _ in range(conf.MAX_RESAMPLES):
            alpha, beta = math.pi / 3 + rng.normal(0.0, cfg.equilateral_std, 2)
            gamma = math.pi - alpha - beta
            if min(alpha, beta, gamma) >= conf.UNIFORM_MIN_ANGLE:
                return float(alpha), float(beta), float(gamma)
        logger.warning("near_equilateral angles rejected %d times; using the equilateral triangle",
                       conf.MAX_RESAMPLES)
        return math.pi / 3, math.pi / 3, math.pi / 3

    if mode is ShapeMode.NEAR_DEGENERATE:
        floor, concentration = conf.NEAR_DEGENERATE_MIN_ANGLE, conf.NEAR_DEGENERATE_CONCENTRATION
    else:
        floor, concentration = conf.UNIFORM_MIN_ANGLE, 1.0
    weights = rng.dirichlet((concentration,) * 3)
    return tuple(float(floor + (math.pi - 3 * floor) * wt) for wt in weights)


def sample_triangle(rng, cfg):
    """Random counterclockwise triangle with longest side 1, drawn by angles according to cfg.shape_mode."""
    for _ in range(conf.MAX_RESAMPLES):
        try:
            return Triangle.from_angles(*_angles(rng, cfg))
        except GeometryError:
            logger.debug("Rejected a degenerate triangle sample")
    return Triangle.equilateral(1.0)


def _squeeze(weights, eps):
    """Map a point of the open simplex into the eps-interior: eps + (1 - 3 eps) * weights."""
    la, lb = (eps + (1 - 3 * eps) * float(wt) for wt in weights[:2])
    # 1 - la - lb can round just below eps
    return BarycentricPoint(la, lb, max(1.0 - la - lb, eps), margin=eps)


def sample_interior_point(rng, cfg):
    """Barycentrics as normalized exponentials of three standard normals, kept eps_interior inside."""
    g = rng.standard_normal(3)
    e = np.exp(g - g.max())
    return _squeeze(e / e.sum(), cfg.eps_interior)


def sample_weights(rng, cfg):
    g = rng.normal(0.0, cfg.weight_log_std, 4)
    return WeightVector.from_free(*(float(v) for v in g))


def _locus_foot(tri, vertex):
    """Where the ray from `vertex` through the circumcenter leaves the triangle, as (U, W, t) on side UW."""
    A, B, C = tri.vertices
    V, U, W = {"A": (A, B, C), "B": (B, C, A), "C": (C, A, B)}[vertex]
    s, t = ray_segment_intersection(V, tri.circumcircle.center - V, U, W)
    return V, U, W, s, t


def sample_locus_point(rng, tri, vertex, eps=conf.DEFAULT_EPS_INTERIOR):
    """Point on the line through `vertex` and the circumcenter, strictly inside `tri`.

    Raises:
        GeometryError: If that line does not cross the interior (the triangle is not acute at the other two
            vertices) or the point would violate the interior margin.
    """
    V, U, W, s, t = _locus_foot(tri, vertex)
    if not (s > 0 and 0 < t < 1):
        raise GeometryError("The %s-circumcenter line misses the opposite side" % vertex)
    h = float(rng.uniform(0.05, 0.95))
    P = V + (U + (W - U) * t - V) * h
    weights = {"A": (1 - h, h * (1 - t), h * t), "B": (h * t, 1 - h, h * (1 - t)), "C": (h * (1 - t), h * t, 1 - h)}
    la, lb, lc = weights[vertex]
    point = BarycentricPoint(la, lb, 1.0 - la - lb, margin=eps)
    assert relative_error(barycentric_to_cartesian(tri, point).norm(), Point2(*P).norm()) < 1e-9
    return point


def sample_configuration(rng, cfg, index=0):
    """Draw (triangle, point, weights) in that order from one generator."""
    if cfg.locus_vertex is None:
        tri = sample_triangle(rng, cfg)
        point = sample_interior_point(rng, cfg)
    else:
        for _ in range(conf.MAX_RESAMPLES):
            tri = sample_triangle(rng, cfg)
            try:
                point = sample_locus_point(rng, tri, cfg.locus_vertex, cfg.eps_interior)
                break
            except GeometryError:
                continue
        else:
            raise GeometryError("Could not draw a triangle whose %s-circumcenter line is interior"
                                % cfg.locus_vertex)
    return Sample(index, tri, point, sample_weights(rng, cfg))


def draw_sample(cfg, index):
    return sample_configuration(sample_rng(cfg.seed, index), cfg, index)


# ========== Bridge checks ==========
def _product_bridge_upper(q, w, sides):
    terms = (q.PA + q.d_a, q.PB + q.d_b, q.PC + q.d_c)
    return EvaluationResult.from_sides((sum(terms) / 3) ** 3, terms[0] * terms[1] * terms[2])


def _product_bridge_lower(q, w, sides):
    return EvaluationResult.from_sides((q.PA + q.d_a) * (q.PB + q.d_b) * (q.PC + q.d_c),
                                       (q.d_a + q.d_b + q.d_c) ** 3)


def _summed_bound(q, w, sides):
    x, y, z, u, v, ww = w.values
    lhs = x * (q.PA + u ** 3 * q.d_a) + y * (q.PB + v ** 3 * q.d_b) + z * (q.PC + ww ** 3 * q.d_c)
    k_a, k_b, k_c = summed_coefficients(w, sides)
    return EvaluationResult.from_sides(lhs, k_a * q.d_a + k_b * q.d_b + k_c * q.d_c)


def _coefficient_amgm(q, w, sides):
    # worst of the three AM-GM steps k_a >= 3u, k_b >= 3v, k_c >= 3w
    k = summed_coefficients(w, sides)
    return min((EvaluationResult.from_sides(k_s, 3 * t) for k_s, t in zip(k, (w.u, w.v, w.w))),
               key=lambda res: res.rel_slack)


BRIDGES = OrderedDict([
    ("product_bridge_lower", _product_bridge_lower),
    ("product_bridge_upper", _product_bridge_upper),
    ("summed_bound", _summed_bound),
    ("coefficient_amgm", _coefficient_amgm),
])


# ========== Suite ==========
def histogram_edges():
    """Inner bin edges: bin 0 is below 1e-16 (zero and negatives included), the last bin is >= 1."""
    low, high = conf.HISTOGRAM_LOG_RANGE
    return np.logspace(low, high, conf.HISTOGRAM_BINS - 1)


def _reduce(rel, start, tolerance):
    """Reduce one check's rel_slack array (NaN marks an error) for samples start, start+1, ..."""
    ok = np.isfinite(rel)
    values = rel[ok]
    record = OrderedDict(samples=int(ok.sum()), errors=int((~ok).sum()), violations=0,
                         min_rel_slack=None, argmin=None,
                         histogram=[0] * conf.HISTOGRAM_BINS)
    if values.size:
        idx = int(np.argmin(np.where(ok, rel, np.inf)))
        record["min_rel_slack"] = float(rel[idx])
        record["argmin"] = start + idx
        record["violations"] = int((values < -tolerance).sum())
        bins = np.searchsorted(histogram_edges(), values, side="right")
        record["histogram"] = np.bincount(bins, minlength=conf.HISTOGRAM_BINS).tolist()
    return record


def _merge(first, second):
    """Merge two chunk records; `first` holds the lower sample indices."""
    merged = OrderedDict(first)
    for key in ("samples", "errors", "violations"):
        merged[key] = first[key] + second[key]
    merged["histogram"] = [m + n for m, n in zip(first["histogram"], second["histogram"])]
    if second["min_rel_slack"] is not None and (first["min_rel_slack"] is None or
                                                second["min_rel_slack"] < first["min_rel_slack"]):
        merged["min_rel_slack"] = second["min_rel_slack"]
        merged["argmin"] = second["argmin"]
    return merged


def _checks(ids, bridges):
    checks = OrderedDict((str(ident), get_inequality(ident).evaluate) for ident in ids)
    if bridges:
        checks.update(BRIDGES)
    return checks


def _run_chunk(cfg, ids, bridges, start, stop):
    checks = _checks(ids, bridges)
    rel = {name: np.full(stop - start, np.nan) for name in checks}
    for i, index in enumerate(range(start, stop)):
        try:
            sample = draw_sample(cfg, index)
            q = quantities(sample.triangle, sample.point)
        except (MordellLabError, ArithmeticError, AssertionError) as err:
            logger.debug("Sample %d failed: %s", index, err)
            continue
        sides = sample.triangle.sides
        for name, check in checks.items():
            try:
                rel[name][i] = check(q, sample.weights, sides).rel_slack
            except (MordellLabError, ArithmeticError) as err:
                logger.debug("Check %s failed on sample %d: %s", name, index, err)
    return OrderedDict((name, _reduce(values, start, cfg.tolerance_rel)) for name, values in rel.items())


def _chunks(n, workers):
    count = max(1, min(n, workers * 4))
    bounds = np.linspace(0, n, count + 1).astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def _resolve_workers(workers):
    if workers is None or workers == 1:
        return 1
    if workers == 0:
        return os.cpu_count() or 1
    if workers < 0:
        raise ImproperlyConfigured("workers must be >= 0, got %r" % (workers,))
    return workers


def _map_chunks(func, args, chunks, workers):
    if workers == 1 or len(chunks) == 1:
        return [func(*args, lo, hi) for lo, hi in chunks]
    logger.debug("Running %d chunks on %d workers", len(chunks), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(func, *args, lo, hi) for lo, hi in chunks]
        return [future.result() for future in futures]


class SuiteReport(object):
    """Per-check records of a suite run.

    Each record holds samples, errors, violations, min_rel_slack, the argmin sample (index and configuration),
    the worst offender when there are violations and the 64-bin rel_slack histogram.
    """

    def __init__(self, cfg, records):
        self.cfg = cfg
        self.records = records

    @property
    def violations(self):
        return sum(record["violations"] for record in self.records.values())

    @property
    def errors(self):
        return sum(record["errors"] for record in self.records.values())

    @property
    def passed(self):
        return self.violations == 0

    def __getitem__(self, name):
        return self.records[str(name)]

    def to_dict(self):
        low, high = conf.HISTOGRAM_LOG_RANGE
        return OrderedDict([
            ("passed", self.passed),
            ("violations", self.violations),
            ("errors", self.errors),
            ("histogram_edges_log10", [low, high]),
            ("records", [OrderedDict([("id", name)] + list(record.items()))
                         for name, record in self.records.items()]),
        ])

    def to_rows(self):
        """Flat rows for CSV output, one per check."""
        rows = []
        for name, record in self.records.items():
            argmin = record["argmin_configuration"] or {}
            row = OrderedDict([("id", name), ("samples", record["samples"]), ("errors", record["errors"]),
                               ("violations", record["violations"]), ("min_rel_slack", record["min_rel_slack"]),
                               ("argmin_index", record["argmin"])])
            triangle = argmin.get("triangle") or [[None, None]] * 3
            for label, vertex in zip("ABC", triangle):
                row["%s_x" % label], row["%s_y" % label] = vertex
            for label, value in zip(("lambda_A", "lambda_B", "lambda_C"), argmin.get("barycentric") or [None] * 3):
                row[label] = value
            for label, value in zip(("log_x", "log_y", "log_z", "log_u", "log_v", "log_w"),
                                    argmin.get("log_weights") or [None] * 6):
                row[label] = value
            rows.append(row)
        return rows


def run_suite(cfg, ids=None, bridges=False, workers=1):
    """Evaluate every check on cfg.n_samples sampled configurations.

    Args:
        cfg (SamplerConfig): Sampler configuration.
        ids (list)[None]: Inequality ids (or a comma separated string); None means the whole catalog.
        bridges (bool)[False]: Also run the intermediate bounds of the weighted proof (BRIDGES).
        workers (int)[1]: Worker processes; 0 means one per CPU.

    Returns:
        report (SuiteReport): Report whose records follow the order of `ids`, then BRIDGES.
    """
    ids = parse_ids(ids)
    workers = _resolve_workers(workers)
    logger.info("Suite: %d check(s), %d samples, seed %d, %s", len(ids) + (len(BRIDGES) if bridges else 0),
                cfg.n_samples, cfg.seed, cfg.shape_mode)

    parts = _map_chunks(_run_chunk, (cfg, ids, bridges), _chunks(cfg.n_samples, workers), workers)
    records = parts[0]
    for part in parts[1:]:
        records = OrderedDict((name, _merge(records[name], part[name])) for name in records)

    for name, record in records.items():
        argmin = record["argmin"]
        record["argmin_configuration"] = draw_sample(cfg, argmin).to_dict() if argmin is not None else None
        record["worst_offender"] = (OrderedDict(index=argmin, rel_slack=record["min_rel_slack"])
                                    if record["violations"] else None)
        if record["violations"]:
            logger.warning("%s: %d violation(s), worst rel_slack %.3e at sample %d",
                           name, record["violations"], record["min_rel_slack"], argmin)
    return SuiteReport(cfg, records)


# ========== Identities ==========
IDENTITY_TOLERANCES = OrderedDict([
    ("tangent_identity", conf.GEOMETRY_RTOL),
    ("bisector_dual_path", conf.GEOMETRY_RTOL),
    ("chain_identity", 1e-12),
    ("wolstenholme_decomposition", 1e-12),
    ("weighted_tangent_sum", conf.GEOMETRY_RTOL),
    ("bisector_rescaling", 1e-12),
])


def chain_identity_disagreement(p, q, r):
    """|lhs - rhs| of the Barrow chain identity relative to the largest product it cancels."""
    lhs, rhs = chain_identity(p, q, r)
    scale = max(abs(lhs), abs(rhs), (p + q + r) * (p + q) * (q + r) * (r + p))
    return abs(lhs - rhs) / scale if scale else 0.0


def wolstenholme_disagreement(xw, yw, zw, A, B, C):
    """|slack - sum of squares| relative to xw^2 + yw^2 + zw^2."""
    slack = wolstenholme_slack(xw, yw, zw, A, B, C)
    squares = wolstenholme_decomposition(xw, yw, zw, A, B, C)
    scale = max(abs(slack), abs(squares), xw * xw + yw * yw + zw * zw)
    return abs(slack - squares) / scale if scale else 0.0


def _identity_errors(sample, q):
    tri, w = sample.triangle, sample.weights
    sides = tri.sides
    identity = tangent_distance_identity(*sides, *q.pedal_distances)
    oracle = bisector_lengths_oracle(tri, barycentric_to_cartesian(tri, sample.point))

    x, y, z, u, v, ww = w.values
    tangent_sum = x * (q.R_A + u ** 3 * q.d_a) + y * (q.R_B + v ** 3 * q.d_b) + z * (q.R_C + ww ** 3 * q.d_c)
    k = summed_coefficients(w, sides)

    rescaling = 0.0
    for angle, s, t, l in ((q.alpha, q.PB, q.PC, q.l_a), (q.beta, q.PC, q.PA, q.l_b), (q.gamma, q.PA, q.PB, q.l_c)):
        rescaling = max(rescaling, relative_error(2 * math.sqrt(s * t) * math.cos(angle / 2),
                                                  (math.sqrt(s / t) + math.sqrt(t / s)) * l))

    return OrderedDict([
        ("tangent_identity", max(relative_error(g, a) for g, a in zip(q.tangent_distances, identity))),
        ("bisector_dual_path", max(relative_error(c, o) for c, o in zip(q.bisector_lengths, oracle))),
        ("chain_identity", chain_identity_disagreement(q.PA, q.PB, q.PC)),
        ("wolstenholme_decomposition", wolstenholme_disagreement(
            math.sqrt(x * q.PA), math.sqrt(y * q.PB), math.sqrt(z * q.PC),
            q.alpha / 2, q.beta / 2, math.pi - q.alpha / 2 - q.beta / 2)),
        ("weighted_tangent_sum", relative_error(tangent_sum, k[0] * q.d_a + k[1] * q.d_b + k[2] * q.d_c)),
        ("bisector_rescaling", rescaling),
    ])


def _identity_chunk(cfg, start, stop):
    worst = OrderedDict((name, [0.0, None]) for name in IDENTITY_TOLERANCES)
    errors = 0
    for index in range(start, stop):
        try:
            sample = draw_sample(cfg, index)
            values = _identity_errors(sample, quantities(sample.triangle, sample.point))
        except (MordellLabError, ArithmeticError, AssertionError) as err:
            logger.debug("Sample %d failed: %s", index, err)
            errors += 1
            continue
        for name, value in values.items():
            # NaN never compares greater, so flag it explicitly
            if value > worst[name][0] or (math.isnan(value) and not math.isnan(worst[name][0])):
                worst[name] = [value, index]
    return worst, errors


class IdentityReport(object):
    """Maximum relative disagreement of each identity, with the sample index where it occurs."""

    def __init__(self, cfg, worst, errors):
        self.cfg = cfg
        self.errors = errors
        self.records = OrderedDict()
        for name, (value, index) in worst.items():
            tolerance = IDENTITY_TOLERANCES[name]
            self.records[name] = OrderedDict([
                ("samples", cfg.n_samples - errors), ("max_rel_disagreement", value), ("argmax", index),
                ("tolerance", tolerance), ("passed", bool(value <= tolerance))])

    @property
    def passed(self):
        return self.errors == 0 and all(record["passed"] for record in self.records.values())

    def __getitem__(self, name):
        return self.records[name]

    def to_dict(self):
        return OrderedDict([("passed", self.passed), ("errors", self.errors),
                            ("records", [OrderedDict([("id", name)] + list(record.items()))
                                         for name, record in self.records.items()])])

    def to_rows(self):
        return [OrderedDict([("id", name)] + [(key, value) for key, value in record.items()])
                for name, record in self.records.items()]


def check_identities(cfg, workers=1):
    """Measure every exact identity of the family over cfg.n_samples sampled configurations."""
    workers = _resolve_workers(workers)
    parts = _map_chunks(_identity_chunk, (cfg,), _chunks(cfg.n_samples, workers), workers)
    worst, errors = parts[0]
    for part, part_errors in parts[1:]:
        errors += part_errors
        for name, (value, index) in part.items():
            if value > worst[name][0] or (math.isnan(value) and not math.isnan(worst[name][0])):
                worst[name] = [value, index]
    report = IdentityReport(cfg, worst, errors)
    logger.info("Identities: %s", ", ".join("%s=%.2e" % (name, record["max_rel_disagreement"])
                                            for name, record in report.records.items()))
    return report
