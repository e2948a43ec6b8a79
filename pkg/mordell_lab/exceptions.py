__all__ = ["MordellLabError", "ImproperlyConfigured", "GeometryError", "DegenerateTriangleError",
           "InteriorityError", "DomainError", "CatalogError", "SearchError"]


class MordellLabError(Exception):
    """Base class for every error raised by mordell_lab."""


class ImproperlyConfigured(MordellLabError, ValueError):
    """A run or sampler configuration is invalid."""


class GeometryError(MordellLabError, ValueError):
    pass


class DegenerateTriangleError(GeometryError):
    """The three vertices are (numerically) collinear."""


class InteriorityError(GeometryError):
    """The point is outside the triangle, on its boundary or inside the interior margin."""


class DomainError(MordellLabError, ValueError):
    """Arguments outside the domain of a formula (angle sums, non-finite search vectors)."""


class CatalogError(MordellLabError, KeyError):
    """Unknown inequality identifier."""

    def __str__(self):
        # KeyError quotes its argument
        return str(self.args[0]) if self.args else ""


class SearchError(MordellLabError, RuntimeError):
    """Every start of a slack minimization produced a non-finite value."""
