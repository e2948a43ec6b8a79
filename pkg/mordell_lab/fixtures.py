"""
    fixtures.py - Reference configurations with every quantity, printed by the `fixture` command.
"""
from collections import OrderedDict

from .geometry import Triangle, Point2, point_quantities, cartesian_to_barycentric


__all__ = ["REFERENCE_CONFIGURATIONS", "reference_fixture", "reference_fixtures"]


REFERENCE_CONFIGURATIONS = OrderedDict([
    ("right_triangle", (((0.0, 0.0), (4.0, 0.0), (0.0, 3.0)), (1.0, 1.0))),
    ("equilateral_center", (((0.0, 0.0), (1.0, 0.0), (0.5, 3 ** 0.5 / 2)), (0.5, 3 ** 0.5 / 6))),
])


def reference_fixture(name):
    """Sides, circumcircle, barycentrics and every PointQuantities field of one reference configuration."""
    vertices, point = REFERENCE_CONFIGURATIONS[name]
    tri = Triangle(*vertices)
    P = Point2(*point)
    q = point_quantities(tri, P, check=True)
    center, radius = tri.circumcircle

    values = OrderedDict(zip(("a", "b", "c"), tri.sides))
    values.update(zip(("lambda_A", "lambda_B", "lambda_C"), cartesian_to_barycentric(tri, P).coordinates))
    values.update([("circumcenter_x", center.x), ("circumcenter_y", center.y), ("circumradius", radius)])
    values.update(q.as_dict())
    return OrderedDict([("name", name), ("triangle", tri.as_list()), ("point", list(P)), ("quantities", values)])


def reference_fixtures():
    return [reference_fixture(name) for name in REFERENCE_CONFIGURATIONS]
