"""
    geometry.py - Planar triangle geometry for an interior point.

Every length the inequalities talk about is computed here. Side labels follow the usual convention: a = |BC|,
b = |CA|, c = |AB|, and d_a, d_b, d_c are the distances from P to the lines BC, CA, AB respectively. The angle
bisector lengths and the tangent distances are each computed two independent ways (closed form and construction)
so one path can check the other.
"""
import math
from collections import namedtuple
from dataclasses import dataclass, field, asdict

from .conf import DEFAULT_EPS_INTERIOR, DEGENERACY_RATIO, GEOMETRY_RTOL
from .exceptions import GeometryError, DegenerateTriangleError, InteriorityError


__all__ = ["Point2", "Triangle", "BarycentricPoint", "CircumCircle", "PointQuantities",
           "side_lengths", "barycentric_to_cartesian", "cartesian_to_barycentric", "circumcircle",
           "pedal_distances", "vertex_distances", "apex_angles", "bisector_lengths", "bisector_lengths_oracle",
           "tangent_distances", "tangent_distance_identity", "quantities", "point_quantities", "relative_error",
           "ray_segment_intersection", "orient2d"]


TWO_PI = 2.0 * math.pi


class Point2(namedtuple("Point2", "x y")):
    __slots__ = ()

    def __new__(cls, x, y):
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GeometryError("Point coordinates must be finite, got (%r, %r)" % (x, y))
        return super().__new__(cls, x, y)

    def __add__(self, other):
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def __mul__(self, t):
        return Point2(self.x * t, self.y * t)

    __rmul__ = __mul__

    def norm(self):
        return math.hypot(self.x, self.y)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _dist(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])


def orient2d(pa, pb, pc):
    """Twice the signed area of (pa, pb, pc); positive when counterclockwise."""
    return (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])


def relative_error(value, reference):
    """Relative disagreement |value - reference| / max(|value|, |reference|) (0 when both are 0)."""
    scale = max(abs(value), abs(reference))
    if scale == 0.0:
        return 0.0
    return abs(value - reference) / scale


CircumCircle = namedtuple("CircumCircle", "center radius")


class Triangle(object):
    """Non-degenerate triangle with counterclockwise vertices A, B, C.

    Clockwise input is normalized by swapping B and C.

    Args:
        A (Point2/tuple): First vertex.
        B (Point2/tuple): Second vertex.
        C (Point2/tuple): Third vertex.

    Raises:
        DegenerateTriangleError: If |area| < 1e-12 * (max side)**2.
    """
    __slots__ = ("A", "B", "C", "_sides", "_area", "_circumcircle")

    def __init__(self, A, B, C):
        A, B, C = Point2(*A), Point2(*B), Point2(*C)
        area2 = orient2d(A, B, C)
        max_side = max(_dist(B, C), _dist(C, A), _dist(A, B))
        if not max_side > 0 or abs(area2) / 2 < DEGENERACY_RATIO * max_side ** 2:
            raise DegenerateTriangleError("Degenerate triangle %s, %s, %s" % (tuple(A), tuple(B), tuple(C)))
        if area2 < 0:
            B, C = C, B

        self.A = A
        self.B = B
        self.C = C
        self._sides = (_dist(B, C), _dist(C, A), _dist(A, B))
        self._area = abs(area2) / 2
        self._circumcircle = None

    @classmethod
    def equilateral(cls, side=1.0):
        """Equilateral triangle with A at the origin and AB on the x axis."""
        return cls((0.0, 0.0), (side, 0.0), (side / 2, side * math.sqrt(3) / 2))

    @classmethod
    def from_angles(cls, alpha, beta, gamma):
        """Build the triangle with the given vertex angles (radians) whose longest side has length 1."""
        sines = (math.sin(alpha), math.sin(beta), math.sin(gamma))
        scale = max(sines)
        b = sines[1] / scale
        c = sines[2] / scale
        return cls((0.0, 0.0), (c, 0.0), (b * math.cos(alpha), b * math.sin(alpha)))

    @property
    def vertices(self):
        return self.A, self.B, self.C

    @property
    def sides(self):
        return self._sides

    @property
    def area(self):
        return self._area

    @property
    def angles(self):
        """Vertex angles (A, B, C) in radians."""
        A, B, C = self.vertices
        return (math.atan2(abs(_cross(B - A, C - A)), _dot(B - A, C - A)),
                math.atan2(abs(_cross(C - B, A - B)), _dot(C - B, A - B)),
                math.atan2(abs(_cross(A - C, B - C)), _dot(A - C, B - C)))

    @property
    def circumcircle(self):
        if self._circumcircle is None:
            self._circumcircle = circumcircle(self)
        return self._circumcircle

    def scaled(self, t):
        """Return the triangle scaled by t about the origin."""
        return Triangle(self.A * t, self.B * t, self.C * t)

    def as_list(self):
        return [list(self.A), list(self.B), list(self.C)]

    def __eq__(self, other):
        return isinstance(other, Triangle) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "Triangle(A=%r, B=%r, C=%r)" % (tuple(self.A), tuple(self.B), tuple(self.C))


@dataclass(frozen=True)
class BarycentricPoint(object):
    """Strictly interior point given by barycentric coordinates.

    Args:
        lambda_A (float): Weight of vertex A.
        lambda_B (float): Weight of vertex B.
        lambda_C (float): Weight of vertex C.
        margin (float)[1e-6]: Every coordinate must be at least this large.
    """
    lambda_A: float
    lambda_B: float
    lambda_C: float
    margin: float = field(default=DEFAULT_EPS_INTERIOR, compare=False, repr=False)

    def __post_init__(self):
        coords = self.coordinates
        if not all(math.isfinite(lam) for lam in coords):
            raise InteriorityError("Barycentric coordinates must be finite, got %r" % (coords,))
        if abs(sum(coords) - 1.0) > 1e-12:
            raise InteriorityError("Barycentric coordinates must sum to 1, got %r" % (coords,))
        if min(coords) < self.margin:
            raise InteriorityError("Point is not interior: min coordinate %r < margin %r" % (min(coords), self.margin))

    @classmethod
    def centroid(cls):
        return cls(1 / 3, 1 / 3, 1 / 3)

    @property
    def coordinates(self):
        return self.lambda_A, self.lambda_B, self.lambda_C

    def as_list(self):
        return list(self.coordinates)


@dataclass(frozen=True)
class PointQuantities(object):
    """Every per-point scalar of the Erdos-Mordell family for one (triangle, point) pair.

    alpha, beta, gamma are the apex angles BPC, CPA, APB.
    """
    PA: float
    PB: float
    PC: float
    d_a: float
    d_b: float
    d_c: float
    l_a: float
    l_b: float
    l_c: float
    R_A: float
    R_B: float
    R_C: float
    alpha: float
    beta: float
    gamma: float

    # p, q, r are the names used for PA, PB, PC in the algebraic identities
    @property
    def p(self):
        return self.PA

    @property
    def q(self):
        return self.PB

    @property
    def r(self):
        return self.PC

    @property
    def vertex_distances(self):
        return self.PA, self.PB, self.PC

    @property
    def pedal_distances(self):
        return self.d_a, self.d_b, self.d_c

    @property
    def bisector_lengths(self):
        return self.l_a, self.l_b, self.l_c

    @property
    def tangent_distances(self):
        return self.R_A, self.R_B, self.R_C

    @property
    def apex_angles(self):
        return self.alpha, self.beta, self.gamma

    def as_dict(self):
        return asdict(self)

    def check_invariants(self, rtol=GEOMETRY_RTOL):
        """Raise GeometryError if a structural invariant fails (angle closure, d <= l, R <= PS)."""
        if abs(sum(self.apex_angles) - TWO_PI) > rtol:
            raise GeometryError("Apex angles sum to %r, not 2*pi" % sum(self.apex_angles))
        for d, l in zip(self.pedal_distances, self.bisector_lengths):
            if d > l * (1 + rtol):
                raise GeometryError("Pedal distance %r exceeds bisector length %r" % (d, l))
        for R, ps in zip(self.tangent_distances, self.vertex_distances):
            if R > ps * (1 + rtol):
                raise GeometryError("Tangent distance %r exceeds vertex distance %r" % (R, ps))
        return True


# ========== Operations ==========
def side_lengths(tri):
    """Return (a, b, c) = (|BC|, |CA|, |AB|)."""
    return tri.sides


def barycentric_to_cartesian(tri, bary):
    la, lb, lc = bary.coordinates
    A, B, C = tri.vertices
    return Point2(la * A.x + lb * B.x + lc * C.x, la * A.y + lb * B.y + lc * C.y)


def cartesian_to_barycentric(tri, P, margin=0.0):
    """Barycentric coordinates of P from sub-triangle areas.

    Raises:
        InteriorityError: If P is not strictly interior (or closer than `margin` in barycentric terms).
    """
    A, B, C = tri.vertices
    area2 = 2 * tri.area
    la = orient2d(P, B, C) / area2
    lb = orient2d(P, C, A) / area2
    lc = 1.0 - la - lb
    if min(la, lb, lc) <= 0 or min(la, lb, lc) < margin:
        raise InteriorityError("Point %r is not interior to %r" % (tuple(P), tri))
    return BarycentricPoint(la, lb, lc, margin=margin)


def circumcircle(tri):
    """Circumcenter and circumradius, computed relative to A to limit cancellation."""
    A, B, C = tri.vertices
    b = B - A
    c = C - A
    d = 2 * _cross(b, c)
    bb = _dot(b, b)
    cc = _dot(c, c)
    ux = (c.y * bb - b.y * cc) / d
    uy = (b.x * cc - c.x * bb) / d
    center = Point2(A.x + ux, A.y + uy)
    return CircumCircle(center, math.hypot(ux, uy))


def _require_interior(tri, P):
    P = Point2(*P)
    A, B, C = tri.vertices
    if min(orient2d(P, B, C), orient2d(P, C, A), orient2d(P, A, B)) <= 0:
        raise InteriorityError("Point %r is not interior to %r" % (tuple(P), tri))
    return P


def pedal_distances(tri, P):
    """Perpendicular distances (d_a, d_b, d_c) from P to the lines BC, CA, AB."""
    P = _require_interior(tri, P)
    A, B, C = tri.vertices
    a, b, c = tri.sides
    return orient2d(P, B, C) / a, orient2d(P, C, A) / b, orient2d(P, A, B) / c


def vertex_distances(tri, P):
    """Return (PA, PB, PC)."""
    P = _require_interior(tri, P)
    return _dist(P, tri.A), _dist(P, tri.B), _dist(P, tri.C)


def _angle_at(P, U, V):
    u = U - P
    v = V - P
    return math.atan2(abs(_cross(u, v)), _dot(u, v))


def apex_angles(tri, P):
    """Angles (BPC, CPA, APB) at P, via atan2(|cross|, dot) which stays accurate near pi."""
    P = _require_interior(tri, P)
    A, B, C = tri.vertices
    return _angle_at(P, B, C), _angle_at(P, C, A), _angle_at(P, A, B)


def bisector_lengths(PA, PB, PC, alpha, beta, gamma):
    """Closed-form lengths of the bisectors of the apex angles, l_a = 2 PB PC cos(alpha/2) / (PB + PC)."""
    return (2 * PB * PC * math.cos(alpha / 2) / (PB + PC),
            2 * PC * PA * math.cos(beta / 2) / (PC + PA),
            2 * PA * PB * math.cos(gamma / 2) / (PA + PB))


def ray_segment_intersection(origin, direction, U, V):
    """Solve origin + s * direction = U + t * (V - U).

    Returns:
        (s, t) (tuple): Ray and segment parameters; the hit lies on the segment when 0 < t < 1.
    """
    edge = V - U
    offset = U - origin
    denom = _cross(direction, edge)
    if denom == 0.0:
        raise GeometryError("Ray is parallel to the segment")
    return _cross(offset, edge) / denom, _cross(offset, direction) / denom


def _bisector_to_side(P, U, V):
    pu = U - P
    pv = V - P
    direction = pu * (1 / pu.norm()) + pv * (1 / pv.norm())
    s, t = ray_segment_intersection(P, direction, U, V)
    assert 0.0 < t < 1.0, "bisector ray from an interior point must cross the opposite side"
    return s * direction.norm()


def bisector_lengths_oracle(tri, P):
    """Bisector lengths by construction: intersect the bisector ray of each apex angle with its side."""
    P = _require_interior(tri, P)
    A, B, C = tri.vertices
    return _bisector_to_side(P, B, C), _bisector_to_side(P, C, A), _bisector_to_side(P, A, B)


def tangent_distances(tri, P):
    """Distances (R_A, R_B, R_C) from P to the circumcircle tangents at A, B, C."""
    P = _require_interior(tri, P)
    center, radius = tri.circumcircle
    return tuple(abs(_dot(P - V, V - center)) / radius for V in tri.vertices)


def tangent_distance_identity(a, b, c, d_a, d_b, d_c):
    """Tangent distances from side lengths and pedal distances alone, R_A = (b d_c + c d_b) / a."""
    return (b * d_c + c * d_b) / a, (c * d_a + a * d_c) / b, (a * d_b + b * d_a) / c


def point_quantities(tri, P, check=False):
    """Compute every PointQuantities field for a cartesian point.

    Args:
        tri (Triangle): Triangle.
        P (Point2): Strictly interior point.
        check (bool)[False]: Also run the constructive bisector oracle and the tangent identity and raise
            GeometryError when either path disagrees by more than 1e-9 relative, or an invariant fails.
    """
    P = _require_interior(tri, P)
    PA, PB, PC = vertex_distances(tri, P)
    d_a, d_b, d_c = pedal_distances(tri, P)
    alpha, beta, gamma = apex_angles(tri, P)
    l_a, l_b, l_c = bisector_lengths(PA, PB, PC, alpha, beta, gamma)
    R_A, R_B, R_C = tangent_distances(tri, P)
    q = PointQuantities(PA, PB, PC, d_a, d_b, d_c, l_a, l_b, l_c, R_A, R_B, R_C, alpha, beta, gamma)

    if check:
        oracle = bisector_lengths_oracle(tri, P)
        identity = tangent_distance_identity(*tri.sides, d_a, d_b, d_c)
        for name, first, second in (("bisector", q.bisector_lengths, oracle),
                                    ("tangent", q.tangent_distances, identity)):
            worst = max(relative_error(x, y) for x, y in zip(first, second))
            if worst > GEOMETRY_RTOL:
                raise GeometryError("%s paths disagree by %.3e relative" % (name, worst))
        q.check_invariants()
    return q


def quantities(tri, bary, check=False):
    """Compute every PointQuantities field for the point with the given barycentric coordinates."""
    return point_quantities(tri, barycentric_to_cartesian(tri, bary), check=check)
