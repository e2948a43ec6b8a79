"""
    tighten.py - Multistart Nelder-Mead minimization of slack and equality-set probes.

A search vector theta has 8 coordinates: two shape logits, two barycentric logits, two free log-weights of
(x, y, z) and two of (u, v, w). `decode` maps every finite theta to a valid configuration and theta = 0 to the
canonical one (unit equilateral triangle, centroid, unit weights).
"""
import logging
import math
from collections import OrderedDict, namedtuple
from dataclasses import dataclass, asdict

import numpy as np
from scipy.optimize import minimize

from . import conf
from .catalog import get_inequality, WeightVector
from .exceptions import ImproperlyConfigured, DomainError, SearchError, MordellLabError
from .geometry import Triangle, cartesian_to_barycentric, quantities
from .verify import SamplerConfig, sample_rng, sample_triangle, sample_interior_point, draw_sample, \
    _squeeze, _resolve_workers, _map_chunks


__all__ = ["SearchConfig", "Configuration", "TightnessResult", "EqualityReport", "SEARCH_DIMENSION",
           "decode", "active_indices", "slack_of", "distance_to_canonical", "minimize_slack",
           "verify_equality_locus"]


logger = logging.getLogger(__name__)

SEARCH_DIMENSION = 8
SHAPE_INDICES = (0, 1, 2, 3)
WEIGHT_INDICES = {"xyz": (4, 5), "uvw": (6, 7)}

CANONICAL_SLACK = 1e-12
ISOLATED_PROBE_SLACK = 1e-10
LOCUS_PROBE_SLACK = 1e-9
# Final slacks closer than this to the best one are ties, which the lowest start index wins
TIE_SLACK = 1e-12


@dataclass(frozen=True)
class SearchConfig(object):
    """Options of `minimize_slack` and `verify_equality_locus`.

    Args:
        n_starts (int)[16]: Random starts, run in addition to the canonical start.
        max_iter (int)[2000]: Nelder-Mead iteration cap per start.
        seed (int)[7]: Master seed; start i draws from SeedSequence(seed, spawn_key=(i,)).
        min_angle_floor (float)[0.02]: Smallest triangle angle `decode` can produce (radians).
        eps_interior (float)[1e-6]: Barycentric interior margin.
        start_std (float)[0.5]: Standard deviation of random starting vectors.
        simplex_step (float)[0.1]: Edge length of the initial simplex along each active axis.
        fatol (float)[1e-12]: Stop once the simplex values spread less than this.
    """
    n_starts: int = conf.DEFAULT_STARTS
    max_iter: int = conf.DEFAULT_ITERATIONS
    seed: int = 7
    min_angle_floor: float = conf.DEFAULT_MIN_ANGLE_FLOOR
    eps_interior: float = conf.DEFAULT_EPS_INTERIOR
    start_std: float = 0.5
    simplex_step: float = 0.1
    fatol: float = 1e-12

    def __post_init__(self):
        if not isinstance(self.n_starts, int) or self.n_starts < 0:
            raise ImproperlyConfigured("n_starts must be a non-negative integer, got %r" % (self.n_starts,))
        if not isinstance(self.max_iter, int) or self.max_iter < 1:
            raise ImproperlyConfigured("max_iter must be a positive integer, got %r" % (self.max_iter,))
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ImproperlyConfigured("seed must be an unsigned 64 bit integer, got %r" % (self.seed,))
        if not 0 <= self.min_angle_floor < math.pi / 3:
            raise ImproperlyConfigured("min_angle_floor must lie in [0, pi/3), got %r" % (self.min_angle_floor,))
        if not 0 <= self.eps_interior < 1 / 3:
            raise ImproperlyConfigured("eps_interior must lie in [0, 1/3), got %r" % (self.eps_interior,))
        if not self.start_std >= 0:
            raise ImproperlyConfigured("start_std must be non-negative, got %r" % (self.start_std,))
        if not self.simplex_step > 0:
            raise ImproperlyConfigured("simplex_step must be positive, got %r" % (self.simplex_step,))
        if not self.fatol >= 0:
            raise ImproperlyConfigured("fatol must be non-negative, got %r" % (self.fatol,))

    def to_dict(self):
        return asdict(self)


class Configuration(namedtuple("Configuration", "triangle point weights")):
    __slots__ = ()

    def to_dict(self):
        return OrderedDict([("triangle", self.triangle.as_list()),
                            ("barycentric", self.point.as_list()),
                            ("log_weights", self.weights.as_list())])


def _softmax3(s, t):
    logits = np.array([s, t, 0.0])
    e = np.exp(logits - logits.max())
    return e / e.sum()


def decode(theta, min_angle_floor=conf.DEFAULT_MIN_ANGLE_FLOOR, eps_interior=conf.DEFAULT_EPS_INTERIOR,
           weights="xyzuvw"):
    """Map a search vector to (Triangle, BarycentricPoint, WeightVector).

    Angles are floor + (pi - 3 floor) * softmax(t0, t1, 0) and the triangle is scaled to longest side 1.
    Barycentrics are eps + (1 - 3 eps) * softmax(t2, t3, 0). t4, t5 are the free logs of x, y and t6, t7
    those of u, v.

    Args:
        theta (array): Vector of length 8.
        min_angle_floor (float)[0.02]: Smallest angle of the decoded triangle.
        eps_interior (float)[1e-6]: Barycentric margin of the decoded point.
        weights (str)["xyzuvw"]: Weight triples read from theta; the others are 1 whatever theta holds.

    Raises:
        DomainError: If theta does not have 8 finite entries.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (SEARCH_DIMENSION,) or not np.all(np.isfinite(theta)):
        raise DomainError("Search vector must hold %d finite values, got %r" % (SEARCH_DIMENSION, theta))

    angles = min_angle_floor + (math.pi - 3 * min_angle_floor) * _softmax3(theta[0], theta[1])
    tri = Triangle.from_angles(*(float(angle) for angle in angles))

    point = _squeeze(_softmax3(theta[2], theta[3]), eps_interior)

    g_x, g_y = (float(g) for g in theta[4:6]) if "xyz" in weights else (0.0, 0.0)
    g_u, g_v = (float(g) for g in theta[6:8]) if "uvw" in weights else (0.0, 0.0)
    return Configuration(tri, point, WeightVector.from_free(g_x, g_y, g_u, g_v))


def active_indices(ident):
    """Indices of theta the search moves for this inequality: shape and point, plus its searched weights."""
    searched = get_inequality(ident).searched_weights
    indices = list(SHAPE_INDICES)
    for triple, positions in WEIGHT_INDICES.items():
        if triple in searched:
            indices.extend(positions)
    return indices


def slack_of(ident, configuration):
    """EvaluationResult of one inequality at a configuration."""
    tri, point, weights = configuration
    return get_inequality(ident).evaluate(quantities(tri, point), weights, tri.sides)


def distance_to_canonical(configuration):
    """Euclidean norm of (angles - pi/3, barycentrics - 1/3, log-weights)."""
    tri, point, weights = configuration
    deviations = [angle - math.pi / 3 for angle in tri.angles]
    deviations += [lam - 1 / 3 for lam in point.coordinates]
    deviations += list(weights.logs)
    return math.sqrt(sum(dev * dev for dev in deviations))


# ========== Minimization ==========
class TightnessResult(object):
    """Best configuration found over all starts of `minimize_slack`.

    `history` holds one record per start: its index, initial and final slack, iterations, whether the simplex
    converged and the best simplex value after every iteration (non-increasing).
    """

    def __init__(self, ident, cfg, best, history):
        self.id = ident
        self.cfg = cfg
        self.history = history
        self.min_slack = best["slack"]
        self.argmin_start = best["start"]
        self.argmin_theta = best["theta"]
        self.argmin = decode(best["theta"], cfg.min_angle_floor, cfg.eps_interior,
                             get_inequality(ident).searched_weights)
        self.distance_to_canonical = distance_to_canonical(self.argmin)

    @property
    def starts(self):
        return len(self.history)

    @property
    def converged_starts(self):
        return sum(1 for record in self.history if record["converged"])

    def to_dict(self, trace=False):
        data = OrderedDict([
            ("id", str(self.id)),
            ("min_slack", self.min_slack),
            ("starts", self.starts),
            ("converged_starts", self.converged_starts),
            ("distance_to_canonical", self.distance_to_canonical),
            ("min_angle_floor", self.cfg.min_angle_floor),
            ("argmin_start", self.argmin_start),
            ("argmin_theta", list(self.argmin_theta)),
            ("argmin", self.argmin.to_dict()),
        ])
        data["history"] = [OrderedDict((key, value) for key, value in record.items() if trace or key != "trace")
                           for record in self.history]
        return data


def _objective(ident, cfg, indices):
    inequality = get_inequality(ident)
    searched = inequality.searched_weights

    def slack(active):
        theta = np.zeros(SEARCH_DIMENSION)
        theta[indices] = active
        try:
            tri, point, weights = decode(theta, cfg.min_angle_floor, cfg.eps_interior, searched)
            value = inequality.evaluate(quantities(tri, point), weights, tri.sides).slack
        except (MordellLabError, ArithmeticError):
            return np.inf
        return value if math.isfinite(value) else np.inf
    return slack


def _run_start(ident, cfg, start):
    indices = active_indices(ident)
    dims = len(indices)
    objective = _objective(ident, cfg, indices)
    x0 = np.zeros(dims) if start == 0 else sample_rng(cfg.seed, start).normal(0.0, cfg.start_std, dims)
    simplex = np.vstack([x0, x0 + cfg.simplex_step * np.eye(dims)])
    trace = []

    def callback(intermediate_result):
        trace.append(float(intermediate_result.fun))

    initial = objective(x0)
    result = minimize(objective, x0, method="Nelder-Mead", callback=callback,
                      options=dict(maxiter=cfg.max_iter, initial_simplex=simplex, xatol=np.inf, fatol=cfg.fatol))
    x, fun = result.x, result.fun
    # the canonical start keeps theta = 0 unless the search beat it by more than the tie slack
    if start == 0 and initial <= CANONICAL_SLACK and fun >= initial - TIE_SLACK:
        x, fun = x0, initial
    theta = np.zeros(SEARCH_DIMENSION)
    theta[indices] = x
    logger.debug("%s start %d: slack %.3e -> %.3e in %d iterations", ident, start, initial, fun, result.nit)
    return OrderedDict([("start", start), ("initial_slack", float(initial)), ("slack", float(fun)),
                        ("iterations", int(result.nit)), ("converged", bool(result.success)),
                        ("theta", [float(t) for t in theta]), ("trace", trace)])


def _start_chunk(ident, cfg, lo, hi):
    return [_run_start(ident, cfg, start) for start in range(lo, hi)]


def _best(history):
    finite = [record for record in history if math.isfinite(record["slack"])]
    if not finite:
        return None
    lowest = min(record["slack"] for record in finite)
    return min((record for record in finite if record["slack"] <= lowest + TIE_SLACK),
               key=lambda record: record["start"])


def minimize_slack(ident, cfg=None, workers=1, **options):
    """Minimize the slack of one inequality from the canonical start and cfg.n_starts random starts.

    Start 0 is theta = 0; start i > 0 is drawn from its own generator, so the result does not depend on
    `workers`.

    Args:
        ident (InequalityId/str): Catalog identifier.
        cfg (SearchConfig)[None]: Search options; keyword `options` build one when omitted.
        workers (int)[1]: Worker processes for the starts; 0 means one per CPU.

    Returns:
        result (TightnessResult): Minimum over starts. Slacks within 1e-12 of the minimum tie and the lowest
            start index wins.

    Raises:
        SearchError: If every start ends at a non-finite slack.
    """
    ident = get_inequality(ident).id
    cfg = cfg or SearchConfig(**options)
    workers = _resolve_workers(workers)
    total = cfg.n_starts + 1
    chunks = [(start, start + 1) for start in range(total)] if workers > 1 else [(0, total)]
    history = [record for part in _map_chunks(_start_chunk, (ident, cfg), chunks, workers) for record in part]

    best = _best(history)
    if best is None:
        raise SearchError("Every start of the %s search diverged" % ident)
    result = TightnessResult(ident, cfg, best, history)
    logger.info("%s: min slack %.3e at start %d, distance to canonical %.3e (%d/%d converged)",
                ident, result.min_slack, result.argmin_start, result.distance_to_canonical,
                result.converged_starts, result.starts)
    return result


# ========== Equality sets ==========
class EqualityReport(object):
    """Outcome of `verify_equality_locus`.

    Probes depend on the inequality's locus: "isolated" and "nonnegative" perturb the shape and point around
    the canonical configuration (strictly positive slack, respectively no negative slack, is required);
    "equilateral", "line" and "circumcenter" sample the equality set itself and require vanishing slack.
    """

    def __init__(self, ident, mode, canonical_slack, probe_slacks, radius):
        self.id = ident
        self.mode = mode
        self.canonical_slack = canonical_slack
        self.probe_slacks = probe_slacks
        self.radius = radius

    @property
    def canonical_ok(self):
        return abs(self.canonical_slack) <= CANONICAL_SLACK

    def _probe_ok(self, slack):
        if self.mode == "isolated":
            return slack > ISOLATED_PROBE_SLACK
        if self.mode == "nonnegative":
            return slack >= -LOCUS_PROBE_SLACK
        return abs(slack) <= LOCUS_PROBE_SLACK

    @property
    def failures(self):
        return sum(1 for slack in self.probe_slacks if not self._probe_ok(slack))

    @property
    def passed(self):
        return self.canonical_ok and self.failures == 0

    def to_dict(self):
        slacks = self.probe_slacks
        return OrderedDict([
            ("id", str(self.id)), ("mode", self.mode), ("passed", self.passed),
            ("canonical_slack", self.canonical_slack), ("radius", self.radius), ("probes", len(slacks)),
            ("failures", self.failures),
            ("min_probe_slack", min(slacks) if slacks else None),
            ("max_abs_probe_slack", max(abs(s) for s in slacks) if slacks else None),
        ])


def _neighbourhood_probes(ident, cfg, radius, n_probes, seed):
    # Weights stay at 1: the weighted equality sets are curves through the canonical configuration
    rng = sample_rng(seed, 0)
    slacks = []
    for _ in range(n_probes):
        direction = rng.standard_normal(len(SHAPE_INDICES))
        theta = np.zeros(SEARCH_DIMENSION)
        theta[list(SHAPE_INDICES)] = radius * direction / np.linalg.norm(direction)
        slacks.append(slack_of(ident, decode(theta, cfg.min_angle_floor, cfg.eps_interior, "")).slack)
    return slacks


def _equilateral_probes(ident, cfg, n_probes, seed):
    sampler = SamplerConfig(seed=seed, eps_interior=cfg.eps_interior)
    tri = Triangle.equilateral(1.0)
    return [slack_of(ident, (tri, sample_interior_point(sample_rng(seed, index), sampler),
                             WeightVector.unit())).rel_slack
            for index in range(n_probes)]


def _line_probes(ident, cfg, n_probes, seed):
    sampler = SamplerConfig(seed=seed, eps_interior=cfg.eps_interior, locus_vertex=str(ident)[-1])
    slacks = []
    for index in range(n_probes):
        sample = draw_sample(sampler, index)
        slacks.append(slack_of(ident, (sample.triangle, sample.point, WeightVector.unit())).rel_slack)
    return slacks


def _circumcenter_probes(ident, cfg, n_probes, seed):
    sampler = SamplerConfig(seed=seed)
    slacks = []
    index = 0
    while len(slacks) < n_probes:
        tri = sample_triangle(sample_rng(seed, index), sampler)
        index += 1
        try:
            point = cartesian_to_barycentric(tri, tri.circumcircle.center, margin=cfg.eps_interior)
        except MordellLabError:
            continue  # not acute
        slacks.append(slack_of(ident, (tri, point, WeightVector.unit())).rel_slack)
    return slacks


def verify_equality_locus(ident, radius=conf.DEFAULT_PROBE_RADIUS, n_probes=1000, seed=7, cfg=None):
    """Check the slack vanishes at the equality configuration, then probe around it or along its equality set.

    Args:
        ident (InequalityId/str): Catalog identifier.
        radius (float)[1e-2]: Norm of the theta perturbations of the neighbourhood probes.
        n_probes (int)[1000]: Number of probes.
        seed (int)[7]: Seed of the probe directions or locus samples.
        cfg (SearchConfig)[None]: Supplies the decode floor and the interior margin.

    Returns:
        report (EqualityReport): Canonical slack and every probe slack (relative for locus samples).
    """
    inequality = get_inequality(ident)
    cfg = cfg or SearchConfig(seed=seed)
    if not radius > 0:
        raise ImproperlyConfigured("radius must be positive, got %r" % (radius,))
    if not isinstance(n_probes, int) or n_probes < 0:
        raise ImproperlyConfigured("n_probes must be a non-negative integer, got %r" % (n_probes,))

    equality = inequality.equality_configuration()
    canonical = slack_of(inequality.id, (equality.triangle, equality.point, equality.weights)).slack

    mode = inequality.locus
    if mode in ("isolated", "nonnegative"):
        slacks = _neighbourhood_probes(inequality.id, cfg, radius, n_probes, seed)
    elif mode == "equilateral":
        slacks = _equilateral_probes(inequality.id, cfg, n_probes, seed)
    elif mode == "line":
        slacks = _line_probes(inequality.id, cfg, n_probes, seed)
    else:
        slacks = _circumcenter_probes(inequality.id, cfg, n_probes, seed)

    report = EqualityReport(inequality.id, mode, canonical, slacks, radius)
    if report.passed:
        logger.info("%s: equality at slack %.3e, %d %s probe(s) passed", inequality.id, canonical, len(slacks), mode)
    else:
        logger.warning("%s: equality check failed (canonical slack %.3e, %d of %d probes off)",
                       inequality.id, canonical, report.failures, len(slacks))
    return report
