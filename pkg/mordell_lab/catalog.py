"""
    catalog.py - Registry of every inequality of the weighted Erdos-Mordell family as a slack function.

Each entry is a class with an inner `Meta` (id, lhs/rhs description, reference, weight triples) and `lhs`/`rhs`
methods. Declaring the class registers it.
"""
import math
from collections import OrderedDict, namedtuple
from dataclasses import dataclass, field
from enum import Enum

from .conf import TINY
from .exceptions import CatalogError, DomainError
from .geometry import Point2, Triangle, BarycentricPoint, cartesian_to_barycentric


__all__ = ["InequalityId", "WeightVector", "EvaluationResult", "EqualityConfiguration", "CatalogEntry",
           "Inequality", "ERRATA", "get_inequality", "parse_ids", "all_ids", "evaluate", "equality_configuration",
           "catalog_entries", "wolstenholme_slack", "wolstenholme_decomposition", "chain_identity",
           "summed_coefficients", "circumcenter_weights", "dar_gueron_weights"]


class InequalityId(str, Enum):
    EM = "EM"
    BARROW = "BARROW"
    DNP = "DNP"
    WEM = "WEM"
    WEM_U1 = "WEM_U1"
    WEM_X1 = "WEM_X1"
    WDNP = "WDNP"
    WDNP_U1 = "WDNP_U1"
    WDNP_X1 = "WDNP_X1"
    WBARROW = "WBARROW"
    WBARROW_U1 = "WBARROW_U1"
    WBARROW_X1 = "WBARROW_X1"
    PROD_EM = "PROD_EM"
    PROD_EM_1 = "PROD_EM_1"
    PROD_DNP = "PROD_DNP"
    PROD_DNP_1 = "PROD_DNP_1"
    PROD_BARROW = "PROD_BARROW"
    PROD_BARROW_1 = "PROD_BARROW_1"
    WBARROW_STRONG = "WBARROW_STRONG"
    BARROW_CHAIN_A = "BARROW_CHAIN_A"
    BARROW_CHAIN_B = "BARROW_CHAIN_B"
    DARGUERON = "DARGUERON"
    LEMMA_A = "LEMMA_A"
    LEMMA_B = "LEMMA_B"
    LEMMA_C = "LEMMA_C"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class WeightVector(object):
    """Weights (x, y, z, u, v, w) with xyz = uvw = 1, stored as logarithms.

    Build it with `from_free`, which takes the two free logs of each triple and stores the negated sum as the
    third, so each log triple sums to exactly 0.
    """
    log_x: float
    log_y: float
    log_z: float
    log_u: float
    log_v: float
    log_w: float
    values: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        logs = self.logs
        if not all(math.isfinite(g) for g in logs):
            raise DomainError("Log-weights must be finite, got %r" % (logs,))
        if abs(logs[0] + logs[1] + logs[2]) > 1e-12 or abs(logs[3] + logs[4] + logs[5]) > 1e-12:
            raise DomainError("Log-weights must sum to 0 within each triple, got %r" % (logs,))
        object.__setattr__(self, "values", tuple(math.exp(g) for g in logs))

    @classmethod
    def from_free(cls, g_x=0.0, g_y=0.0, g_u=0.0, g_v=0.0):
        return cls(g_x, g_y, -(g_x + g_y), g_u, g_v, -(g_u + g_v))

    @classmethod
    def unit(cls):
        return cls.from_free()

    @property
    def logs(self):
        return self.log_x, self.log_y, self.log_z, self.log_u, self.log_v, self.log_w

    @property
    def free(self):
        """The four free coordinates (log_x, log_y, log_u, log_v)."""
        return self.log_x, self.log_y, self.log_u, self.log_v

    x = property(lambda self: self.values[0])
    y = property(lambda self: self.values[1])
    z = property(lambda self: self.values[2])
    u = property(lambda self: self.values[3])
    v = property(lambda self: self.values[4])
    w = property(lambda self: self.values[5])

    def norm(self):
        return math.sqrt(sum(g * g for g in self.logs))

    def as_list(self):
        return list(self.logs)


class EvaluationResult(namedtuple("EvaluationResult", "lhs rhs slack rel_slack")):
    __slots__ = ()

    @classmethod
    def from_sides(cls, lhs, rhs):
        slack = lhs - rhs
        return cls(lhs, rhs, slack, slack / max(abs(lhs), abs(rhs), TINY))


EqualityConfiguration = namedtuple("EqualityConfiguration", "triangle point weights note")


class CatalogEntry(dict):
    """Machine readable description of one catalog inequality. Keys are also attributes."""
    def __init__(self, id, title="", lhs="", rhs="", reference="", weights="", locus="isolated", note=None):
        super().__init__(id=str(id), title=title, lhs=lhs, rhs=rhs, reference=reference,
                         weights=weights, weight_arity=2 * (len(weights) // 3), locus=locus, note=note)

    def __setattr__(self, key, value):
        self[key] = value

    def __dir__(self):
        return self.keys()

    def __getattr__(self, key):
        try:
            return self[key]
        except KeyError:
            raise AttributeError(key)


# ========== Registry ==========
registry = OrderedDict()


class InequalityOptions(object):
    def __init__(self, options=None):
        self.id = getattr(options, "id", None)
        self.title = getattr(options, "title", "")
        self.lhs = getattr(options, "lhs", "")
        self.rhs = getattr(options, "rhs", "")
        self.reference = getattr(options, "reference", "")

        # Weight triples the inequality reads: "", "xyz", "uvw" or "xyzuvw"
        self.weights = getattr(options, "weights", "")
        self.search_weights = getattr(options, "search_weights", False)

        self.equality = getattr(options, "equality", "canonical")
        # How the equality set looks near that configuration: "isolated", "equilateral" (every interior P of the
        # equilateral triangle), "line", "circumcenter" or "nonnegative" (a curved family, only positivity is probed)
        self.locus = getattr(options, "locus", "isolated")
        self.note = getattr(options, "note", None)


class InequalityMetaclass(type):
    def __new__(cls, name, bases, attrs):
        new_class = super(InequalityMetaclass, cls).__new__(cls, name, bases, attrs)
        new_class._meta = InequalityOptions(getattr(new_class, "Meta", None))

        # Only classes that declare their own Meta.id are catalog entries
        ident = new_class._meta.id
        if ident is not None and "Meta" in attrs:
            ident = InequalityId(ident)
            assert ident not in registry, "Inequality %s is registered twice." % ident
            new_class._meta.id = ident
            registry[ident] = new_class()
        return new_class


class BaseInequality(object):
    """One displayed inequality, lhs >= rhs, evaluated on precomputed point quantities.

    Subclasses declare a `Meta` class (id, title, lhs, rhs, reference, weights, equality) and implement `lhs` and
    `rhs`. Both receive the PointQuantities `q`, the WeightVector `w` and the side lengths `(a, b, c)`.
    """

    def lhs(self, q, w, sides):
        raise NotImplementedError

    def rhs(self, q, w, sides):
        raise NotImplementedError

    @property
    def id(self):
        return self._meta.id

    @property
    def weights(self):
        return self._meta.weights

    @property
    def weight_blind(self):
        return not self._meta.weights

    @property
    def search_weights(self):
        return self._meta.search_weights

    @property
    def searched_weights(self):
        """Weight triples a tightness search moves: "" when the weights are frozen at 1."""
        return self._meta.weights if self._meta.search_weights else ""

    @property
    def locus(self):
        return self._meta.locus

    def evaluate(self, q, w, sides):
        """Return the EvaluationResult. Negative slack is reported as is."""
        return EvaluationResult.from_sides(self.lhs(q, w, sides), self.rhs(q, w, sides))

    def equality_configuration(self):
        return _EQUALITY_CONFIGURATIONS[self._meta.equality](self)

    def entry(self):
        meta = self._meta
        return CatalogEntry(meta.id, meta.title, meta.lhs, meta.rhs, meta.reference, meta.weights, meta.locus,
                            meta.note)


class Inequality(BaseInequality, metaclass=InequalityMetaclass):
    pass


# ========== Base inequalities ==========
class ErdosMordell(Inequality):
    class Meta:
        id = "EM"
        title = "Erdos-Mordell inequality"
        lhs = "PA+PB+PC"
        rhs = "2(d_a+d_b+d_c)"
        reference = "Erdos-Mordell inequality: conjectured by Erdos (1935), proved by Mordell (1937)"

    def lhs(self, q, w, sides):
        return q.PA + q.PB + q.PC

    def rhs(self, q, w, sides):
        return 2 * (q.d_a + q.d_b + q.d_c)


class Barrow(Inequality):
    class Meta:
        id = "BARROW"
        title = "Barrow's inequality"
        lhs = "PA+PB+PC"
        rhs = "2(l_a+l_b+l_c)"
        reference = "Barrow's inequality (Barrow, 1937): bisectors of the angles BPC, CPA, APB"

    def lhs(self, q, w, sides):
        return q.PA + q.PB + q.PC

    def rhs(self, q, w, sides):
        return 2 * (q.l_a + q.l_b + q.l_c)


class DaoNguyenPham(Inequality):
    class Meta:
        id = "DNP"
        locus = "equilateral"
        title = "Dao-Nguyen-Pham inequality"
        lhs = "R_A+R_B+R_C"
        rhs = "2(d_a+d_b+d_c)"
        reference = "Dao-Nguyen-Pham inequality (2016): distances to the circumcircle tangents at A, B, C"

    def lhs(self, q, w, sides):
        return q.R_A + q.R_B + q.R_C

    def rhs(self, q, w, sides):
        return 2 * (q.d_a + q.d_b + q.d_c)


# ========== Weighted sums ==========
class WeightedSum(Inequality):
    """x(S_A + u^3 t_a) + y(S_B + v^3 t_b) + z(S_C + w^3 t_c) >= 3(u t_a + v t_b + w t_c).

    `vertex_terms` picks S (PA.. or R_A..), `side_terms` picks t (d_a.. or l_a..). The _U1 and _X1 variants
    override `weight_values` to pin one triple at 1.
    """

    def vertex_terms(self, q):
        return q.PA, q.PB, q.PC

    def side_terms(self, q):
        return q.d_a, q.d_b, q.d_c

    def weight_values(self, w):
        return w.values

    def lhs(self, q, w, sides):
        x, y, z, u, v, ww = self.weight_values(w)
        SA, SB, SC = self.vertex_terms(q)
        ta, tb, tc = self.side_terms(q)
        return x * (SA + u ** 3 * ta) + y * (SB + v ** 3 * tb) + z * (SC + ww ** 3 * tc)

    def rhs(self, q, w, sides):
        x, y, z, u, v, ww = self.weight_values(w)
        ta, tb, tc = self.side_terms(q)
        return 3 * (u * ta + v * tb + ww * tc)


class UnitUWeights(object):
    def weight_values(self, w):
        return w.x, w.y, w.z, 1.0, 1.0, 1.0


class CubicSideWeights(object):
    """x = y = z = 1: S_A + S_B + S_C >= sum of (3u - u^3) t_a. The coefficients may be negative."""

    def lhs(self, q, w, sides):
        return sum(self.vertex_terms(q))

    def rhs(self, q, w, sides):
        ta, tb, tc = self.side_terms(q)
        u, v, ww = w.u, w.v, w.w
        return (3 * u - u ** 3) * ta + (3 * v - v ** 3) * tb + (3 * ww - ww ** 3) * tc


class TangentTerms(object):
    def vertex_terms(self, q):
        return q.R_A, q.R_B, q.R_C


class BisectorTerms(object):
    def side_terms(self, q):
        return q.l_a, q.l_b, q.l_c


class WeightedErdosMordell(WeightedSum):
    class Meta:
        id = "WEM"
        title = "Weighted Erdos-Mordell inequality"
        lhs = "x(PA+u^3 d_a)+y(PB+v^3 d_b)+z(PC+w^3 d_c)"
        rhs = "3(u d_a+v d_b+w d_c)"
        reference = ("weighted Erdos-Mordell theorem: Dar-Gueron lemma summed with weights x, y, z, then AM-GM "
                     "3u <= u^3+2")
        weights = "xyzuvw"
        search_weights = True


class WeightedErdosMordellU1(UnitUWeights, WeightedSum):
    class Meta:
        id = "WEM_U1"
        title = "Weighted Erdos-Mordell inequality, u=v=w=1"
        lhs = "x(PA+d_a)+y(PB+d_b)+z(PC+d_c)"
        rhs = "3(d_a+d_b+d_c)"
        reference = "weighted Erdos-Mordell theorem at u=v=w=1 (remark following it)"
        weights = "xyz"


class WeightedErdosMordellX1(CubicSideWeights, WeightedSum):
    class Meta:
        id = "WEM_X1"
        title = "Weighted Erdos-Mordell inequality, x=y=z=1"
        lhs = "PA+PB+PC"
        rhs = "(3u-u^3)d_a+(3v-v^3)d_b+(3w-w^3)d_c"
        reference = "weighted Erdos-Mordell theorem at x=y=z=1, rhs sum (3u-u^3)d_a (remark following it)"
        weights = "uvw"


class WeightedDaoNguyenPham(TangentTerms, WeightedSum):
    class Meta:
        id = "WDNP"
        locus = "equilateral"
        title = "Weighted Dao-Nguyen-Pham inequality"
        lhs = "x(R_A+u^3 d_a)+y(R_B+v^3 d_b)+z(R_C+w^3 d_c)"
        rhs = "3(u d_a+v d_b+w d_c)"
        reference = "weighted Dao-Nguyen-Pham theorem: tangent identity R_A=(b d_c+c d_b)/a summed with weights x, y, z"
        weights = "xyzuvw"
        search_weights = True


class WeightedDaoNguyenPhamU1(UnitUWeights, TangentTerms, WeightedSum):
    class Meta:
        id = "WDNP_U1"
        locus = "equilateral"
        title = "Weighted Dao-Nguyen-Pham inequality, u=v=w=1"
        lhs = "x(R_A+d_a)+y(R_B+d_b)+z(R_C+d_c)"
        rhs = "3(d_a+d_b+d_c)"
        reference = "weighted Dao-Nguyen-Pham theorem at u=v=w=1 (remark following it)"
        weights = "xyz"


class WeightedDaoNguyenPhamX1(CubicSideWeights, TangentTerms, WeightedSum):
    class Meta:
        id = "WDNP_X1"
        locus = "equilateral"
        title = "Weighted Dao-Nguyen-Pham inequality, x=y=z=1"
        lhs = "R_A+R_B+R_C"
        rhs = "(3u-u^3)d_a+(3v-v^3)d_b+(3w-w^3)d_c"
        reference = "weighted Dao-Nguyen-Pham theorem at x=y=z=1 (remark following it)"
        weights = "uvw"


class WeightedBarrow(BisectorTerms, WeightedSum):
    class Meta:
        id = "WBARROW"
        title = "Weighted Barrow inequality"
        lhs = "x(PA+u^3 l_a)+y(PB+v^3 l_b)+z(PC+w^3 l_c)"
        rhs = "3(u l_a+v l_b+w l_c)"
        reference = "weighted Barrow theorem: Wolstenholme's inequality at the half apex angles, then AM-GM on u^3"
        weights = "xyzuvw"
        search_weights = True


class WeightedBarrowU1(UnitUWeights, BisectorTerms, WeightedSum):
    class Meta:
        id = "WBARROW_U1"
        title = "Weighted Barrow inequality, u=v=w=1"
        lhs = "x(PA+l_a)+y(PB+l_b)+z(PC+l_c)"
        rhs = "3(l_a+l_b+l_c)"
        reference = "weighted Barrow theorem at u=v=w=1 (remark following it)"
        weights = "xyz"


class WeightedBarrowX1(CubicSideWeights, BisectorTerms, WeightedSum):
    class Meta:
        id = "WBARROW_X1"
        title = "Weighted Barrow inequality, x=y=z=1"
        lhs = "PA+PB+PC"
        rhs = "(3u-u^3)l_a+(3v-v^3)l_b+(3w-w^3)l_c"
        reference = "weighted Barrow theorem at x=y=z=1 (remark following it)"
        weights = "uvw"


# ========== Products ==========
class WeightedProduct(Inequality):
    """(S_A + u^3 t_a)(S_B + v^3 t_b)(S_C + w^3 t_c) >= (u t_a + v t_b + w t_c)^3."""
    unit_weights = False

    def vertex_terms(self, q):
        return q.PA, q.PB, q.PC

    def side_terms(self, q):
        return q.d_a, q.d_b, q.d_c

    def cube_weights(self, w):
        if self.unit_weights:
            return 1.0, 1.0, 1.0
        return w.u, w.v, w.w

    def lhs(self, q, w, sides):
        u, v, ww = self.cube_weights(w)
        SA, SB, SC = self.vertex_terms(q)
        ta, tb, tc = self.side_terms(q)
        return (SA + u ** 3 * ta) * (SB + v ** 3 * tb) * (SC + ww ** 3 * tc)

    def rhs(self, q, w, sides):
        u, v, ww = self.cube_weights(w)
        ta, tb, tc = self.side_terms(q)
        return (u * ta + v * tb + ww * tc) ** 3


class ProductErdosMordell(WeightedProduct):
    class Meta:
        id = "PROD_EM"
        title = "Product form of the weighted Erdos-Mordell inequality"
        lhs = "(PA+u^3 d_a)(PB+v^3 d_b)(PC+w^3 d_c)"
        rhs = "(u d_a+v d_b+w d_c)^3"
        reference = "product corollary of the weighted Erdos-Mordell theorem, x = cbrt(product)/(PA+u^3 d_a) cyclic"
        weights = "uvw"
        search_weights = True


class ProductErdosMordellUnit(WeightedProduct):
    unit_weights = True

    class Meta:
        id = "PROD_EM_1"
        title = "Strengthened Erdos-Mordell inequality"
        lhs = "(PA+d_a)(PB+d_b)(PC+d_c)"
        rhs = "(d_a+d_b+d_c)^3"
        reference = "product corollary of the weighted Erdos-Mordell theorem at u=v=w=1 (strengthened Erdos-Mordell)"


class ProductDaoNguyenPham(TangentTerms, WeightedProduct):
    class Meta:
        id = "PROD_DNP"
        locus = "equilateral"
        title = "Product form of the weighted Dao-Nguyen-Pham inequality"
        lhs = "(R_A+u^3 d_a)(R_B+v^3 d_b)(R_C+w^3 d_c)"
        rhs = "(u d_a+v d_b+w d_c)^3"
        reference = "product corollary of the weighted Dao-Nguyen-Pham theorem, x = cbrt(product)/(R_A+u^3 d_a) cyclic"
        weights = "uvw"
        search_weights = True
        note = ("The stated equality condition is 'P coincides with a vertex', which is a limit for interior P; "
                "the equilateral triangle, its center and unit weights give slack 0 as well.")


class ProductDaoNguyenPhamUnit(TangentTerms, WeightedProduct):
    unit_weights = True

    class Meta:
        id = "PROD_DNP_1"
        locus = "equilateral"
        title = "Strengthened Dao-Nguyen-Pham inequality"
        lhs = "(R_A+d_a)(R_B+d_b)(R_C+d_c)"
        rhs = "(d_a+d_b+d_c)^3"
        reference = ("product corollary of the weighted Dao-Nguyen-Pham theorem at u=v=w=1 (strengthened "
                     "Dao-Nguyen-Pham)")


class ProductBarrow(BisectorTerms, WeightedProduct):
    class Meta:
        id = "PROD_BARROW"
        title = "Product form of the weighted Barrow inequality"
        lhs = "(PA+u^3 l_a)(PB+v^3 l_b)(PC+w^3 l_c)"
        rhs = "(u l_a+v l_b+w l_c)^3"
        reference = "product corollary of the weighted Barrow theorem, x = cbrt(product)/(PA+u^3 l_a) cyclic"
        weights = "uvw"
        search_weights = True


class ProductBarrowUnit(BisectorTerms, WeightedProduct):
    unit_weights = True

    class Meta:
        id = "PROD_BARROW_1"
        title = "Strengthened Barrow inequality"
        lhs = "(PA+l_a)(PB+l_b)(PC+l_c)"
        rhs = "(l_a+l_b+l_c)^3"
        reference = "product corollary of the weighted Barrow theorem at u=v=w=1 (strengthened Barrow)"


# ========== Barrow refinements ==========
def _balance(s, t):
    return math.sqrt(s / t) + math.sqrt(t / s)


def _chain_ratio(q):
    p, qq, r = q.PA, q.PB, q.PC
    num = p ** 2 * (qq + r) ** 2 + qq ** 2 * (r + p) ** 2 + r ** 2 * (p + qq) ** 2
    return num / ((qq + r) * (r + p) * (p + qq))


class StrongWeightedBarrow(Inequality):
    class Meta:
        id = "WBARROW_STRONG"
        locus = "nonnegative"
        title = "Strengthened weighted Barrow inequality"
        lhs = "xPA+yPB+zPC"
        rhs = "sqrt(yz)(sqrt(PB/PC)+sqrt(PC/PB))l_a + cyclic"
        reference = ("strengthened weighted Barrow theorem: Wolstenholme's inequality with 2 sqrt(PB PC) "
                     "cos(alpha/2) rewritten through l_a")
        weights = "xyz"
        search_weights = True
        note = "Homogeneous of degree 1 in (x, y, z); normalizing xyz = 1 loses no generality."

    def lhs(self, q, w, sides):
        return w.x * q.PA + w.y * q.PB + w.z * q.PC

    def rhs(self, q, w, sides):
        x, y, z = w.x, w.y, w.z
        return (math.sqrt(y * z) * _balance(q.PB, q.PC) * q.l_a +
                math.sqrt(z * x) * _balance(q.PC, q.PA) * q.l_b +
                math.sqrt(x * y) * _balance(q.PA, q.PB) * q.l_c)


class BarrowChainA(Inequality):
    class Meta:
        id = "BARROW_CHAIN_A"
        title = "Barrow chain, first step"
        lhs = "(PA+PB+PC)/2"
        rhs = "[PA^2(PB+PC)^2+PB^2(PC+PA)^2+PC^2(PA+PB)^2]/[(PB+PC)(PC+PA)(PA+PB)]"
        reference = "second strengthened Barrow theorem, first inequality: pq(p-q)^2+qr(q-r)^2+rp(r-p)^2 >= 0"
        equality = "circumcenter"
        locus = "circumcenter"

    def lhs(self, q, w, sides):
        return (q.PA + q.PB + q.PC) / 2

    def rhs(self, q, w, sides):
        return _chain_ratio(q)


class BarrowChainB(Inequality):
    class Meta:
        id = "BARROW_CHAIN_B"
        locus = "nonnegative"
        title = "Barrow chain, second step"
        lhs = "[PA^2(PB+PC)^2+PB^2(PC+PA)^2+PC^2(PA+PB)^2]/[(PB+PC)(PC+PA)(PA+PB)]"
        rhs = "l_a+l_b+l_c"
        reference = ("second strengthened Barrow theorem, second inequality: strengthened weighted Barrow "
                     "at x = (sqrt(PB/PC)+sqrt(PC/PB))^2 cyclic")

    def lhs(self, q, w, sides):
        return _chain_ratio(q)

    def rhs(self, q, w, sides):
        return q.l_a + q.l_b + q.l_c


class DarGueron(Inequality):
    class Meta:
        id = "DARGUERON"
        title = "Dar-Gueron weighted Erdos-Mordell inequality"
        lhs = "PA/u^2+PB/v^2+PC/w^2"
        rhs = "2(u d_a+v d_b+w d_c)"
        reference = ("Dar-Gueron weighted Erdos-Mordell inequality (2001): weighted Erdos-Mordell theorem at "
                     "x=1/u^2, y=1/v^2, z=1/w^2")
        weights = "uvw"
        search_weights = True

    def lhs(self, q, w, sides):
        return q.PA / w.u ** 2 + q.PB / w.v ** 2 + q.PC / w.w ** 2

    def rhs(self, q, w, sides):
        return 2 * (w.u * q.d_a + w.v * q.d_b + w.w * q.d_c)


# ========== Dar-Gueron lemma ==========
class LemmaA(Inequality):
    class Meta:
        id = "LEMMA_A"
        title = "Dar-Gueron lemma at A"
        lhs = "PA"
        rhs = "(b d_c+c d_b)/a"
        reference = "Dar-Gueron lemma (2001), recalled in the weighted Erdos-Mordell proof"
        equality = "lemma"
        locus = "line"

    def lhs(self, q, w, sides):
        return q.PA

    def rhs(self, q, w, sides):
        a, b, c = sides
        return (b * q.d_c + c * q.d_b) / a


class LemmaB(Inequality):
    class Meta:
        id = "LEMMA_B"
        title = "Dar-Gueron lemma at B"
        lhs = "PB"
        rhs = "(c d_a+a d_c)/b"
        reference = "Dar-Gueron lemma (2001), cyclic form at B"
        equality = "lemma"
        locus = "line"

    def lhs(self, q, w, sides):
        return q.PB

    def rhs(self, q, w, sides):
        a, b, c = sides
        return (c * q.d_a + a * q.d_c) / b


class LemmaC(Inequality):
    class Meta:
        id = "LEMMA_C"
        title = "Dar-Gueron lemma at C"
        lhs = "PC"
        rhs = "(a d_b+b d_a)/c"
        reference = "Dar-Gueron lemma (2001), cyclic form at C"
        equality = "lemma"
        locus = "line"

    def lhs(self, q, w, sides):
        return q.PC

    def rhs(self, q, w, sides):
        a, b, c = sides
        return (a * q.d_b + b * q.d_a) / c


# ========== Equality configurations ==========
RIGHT_TRIANGLE = ((0.0, 0.0), (4.0, 0.0), (0.0, 3.0))
ACUTE_TRIANGLE = ((0.0, 0.0), (4.0, 0.0), (1.0, 3.0))  # circumcenter (2, 1)
ISOSCELES_TRIANGLE = ((0.0, 0.0), (4.0, 0.0), (2.0, 3.0))  # circumcenter (2, 5/6)

# Midpoints of the vertex-circumcenter segments; the lemma is tight along the whole line
LEMMA_POINTS = {
    InequalityId.LEMMA_A: (RIGHT_TRIANGLE, (1.0, 0.75)),
    InequalityId.LEMMA_B: (ACUTE_TRIANGLE, (3.0, 0.5)),
    InequalityId.LEMMA_C: (ACUTE_TRIANGLE, (1.5, 2.0)),
}


def _canonical(inequality):
    return EqualityConfiguration(Triangle.equilateral(1.0), BarycentricPoint.centroid(), WeightVector.unit(),
                                 inequality._meta.note)


def _lemma(inequality):
    vertices, point = LEMMA_POINTS[inequality.id]
    tri = Triangle(*vertices)
    return EqualityConfiguration(tri, cartesian_to_barycentric(tri, Point2(*point)), WeightVector.unit(), None)


def _circumcenter(inequality):
    tri = Triangle(*ISOSCELES_TRIANGLE)
    return EqualityConfiguration(tri, cartesian_to_barycentric(tri, tri.circumcircle.center), WeightVector.unit(),
                                 None)


_EQUALITY_CONFIGURATIONS = {
    "canonical": _canonical,
    "lemma": _lemma,
    "circumcenter": _circumcenter,
}


# ========== Errata ==========
ERRATA = [
    {"topic": "d-index convention",
     "note": "Some statements list d_a, d_b, d_c as distances to AB, BC, CA; the defining convention is BC, CA, AB. "
             "That convention is the one under which the lemma and the tangent identity hold and "
             "is used throughout."},
    {"topic": "bisector formula",
     "note": "The printed bisector formula lacks the factor 2: l_a = 2 PB PC cos(alpha/2) / (PB + PC) is the form "
             "consistent with the rescaled identity that follows it."},
    {"topic": "weighted Barrow right-hand side",
     "note": "The statement prints (3u l_a + v l_b + w l_c); the proof ends with 3(u l_a + v l_b + w l_c), which "
             "is implemented."},
    {"topic": "summed lemma coefficients",
     "note": "The summed display has typos; the valid coefficients are y c/b + z b/c + x u^3 for d_a, "
             "x c/a + z a/c + y v^3 for d_b and x b/a + y a/b + z w^3 for d_c."},
    {"topic": "AM-GM steps in the Barrow proof",
     "note": "The v^3 and w^3 factors are dropped in two displays; the bounds 3u, 3v, 3w need them."},
    {"topic": "Wolstenholme step",
     "note": "The first term lacks the sqrt(yz) factor; Wolstenholme's inequality is applied with "
             "sqrt(x PA), sqrt(y PB), sqrt(z PC)."},
    {"topic": "product Dao-Nguyen-Pham equality",
     "note": "'P coincides with a vertex' describes a limit of interior points; the equilateral center with "
             "unit weights also attains slack 0."},
    {"topic": "Dao-Nguyen-Pham equality set",
     "note": "R_A + R_B + R_C - 2(d_a + d_b + d_c) = d_a (b-c)^2/(bc) + d_b (c-a)^2/(ca) + d_c (a-b)^2/(ab), so "
             "in the equilateral triangle every interior P is an equality case, not only the center. The same "
             "holds for the weighted and product tangent forms at unit weights."},
    {"topic": "weighted equality sets",
     "note": "The weighted Erdos-Mordell bound is also an equality at the circumcenter of any acute triangle "
             "with x:y:z = a^2:b^2:c^2 and u^3 = bc/a^2, v^3 = ca/b^2, w^3 = ab/c^2 (see circumcenter_weights); "
             "the weighted tangent form with the same weights is an equality at every interior P. The "
             "Dar-Gueron form is an equality at the circumcenter of any acute triangle with u:v:w = 1/a:1/b:1/c "
             "(see dar_gueron_weights)."},
    {"topic": "strengthened Barrow equality sets",
     "note": "BARROW_CHAIN_B and WBARROW_STRONG are stated with equality only at the equilateral center, but "
             "searches from random starts end at slack near 1e-13 at configurations 0.2 to 1.2 away from it "
             "in search space, along curved families. Their equality probes only check that slack stays "
             "nonnegative."},
]


# ========== Lookup ==========
def get_inequality(ident):
    """Return the registered Inequality for an id or id string.

    Raises:
        CatalogError: If the identifier is unknown.
    """
    try:
        return registry[InequalityId(str(ident).strip().upper())]
    except (ValueError, KeyError):
        raise CatalogError("Unknown inequality id %r" % (ident,)) from None


def parse_ids(value):
    """Parse a comma separated id list (or an iterable of ids); None or "all" means the whole catalog."""
    if value is None:
        return all_ids()
    if isinstance(value, str):
        if value.strip().lower() == "all":
            return all_ids()
        value = [v for v in value.split(",") if v.strip()]
    ids = [get_inequality(v).id for v in value]
    if not ids:
        raise CatalogError("Empty inequality id list")
    return ids


def all_ids():
    return list(registry.keys())


def evaluate(ident, q, w, sides):
    return get_inequality(ident).evaluate(q, w, sides)


def equality_configuration(ident):
    return get_inequality(ident).equality_configuration()


def catalog_entries():
    return [inequality.entry() for inequality in registry.values()]


# ========== Algebraic companions ==========
def wolstenholme_slack(xw, yw, zw, A, B, C):
    """Slack of Wolstenholme's inequality for angles A + B + C = pi.

    xw^2 + yw^2 + zw^2 - 2 yw zw cos A - 2 zw xw cos B - 2 xw yw cos C

    Raises:
        DomainError: If an angle is not positive or the angles do not sum to pi within 1e-9.
    """
    if min(A, B, C) <= 0 or abs(A + B + C - math.pi) > 1e-9:
        raise DomainError("Wolstenholme angles must be positive and sum to pi, got %r" % ((A, B, C),))
    return (xw * xw + yw * yw + zw * zw
            - 2 * yw * zw * math.cos(A) - 2 * zw * xw * math.cos(B) - 2 * xw * yw * math.cos(C))


def wolstenholme_decomposition(xw, yw, zw, A, B, C):
    """Sum-of-squares form of `wolstenholme_slack`: (xw - yw cos C - zw cos B)^2 + (yw sin C - zw sin B)^2."""
    if min(A, B, C) <= 0 or abs(A + B + C - math.pi) > 1e-9:
        raise DomainError("Wolstenholme angles must be positive and sum to pi, got %r" % ((A, B, C),))
    return (xw - yw * math.cos(C) - zw * math.cos(B)) ** 2 + (yw * math.sin(C) - zw * math.sin(B)) ** 2


def chain_identity(p, q, r):
    """Both sides of the identity behind the first Barrow chain step.

    (p+q+r)(p+q)(q+r)(r+p) - 2p^2(q+r)^2 - 2q^2(r+p)^2 - 2r^2(p+q)^2 = pq(p-q)^2 + qr(q-r)^2 + rp(r-p)^2
    """
    lhs = ((p + q + r) * (p + q) * (q + r) * (r + p)
           - 2 * p ** 2 * (q + r) ** 2 - 2 * q ** 2 * (r + p) ** 2 - 2 * r ** 2 * (p + q) ** 2)
    rhs = p * q * (p - q) ** 2 + q * r * (q - r) ** 2 + r * p * (r - p) ** 2
    return lhs, rhs


def summed_coefficients(w, sides):
    """Coefficients of d_a, d_b, d_c after summing the weighted lemma bounds; each is >= 3u, 3v, 3w by AM-GM."""
    a, b, c = sides
    x, y, z, u, v, ww = w.values
    return (y * c / b + z * b / c + x * u ** 3,
            x * c / a + z * a / c + y * v ** 3,
            x * b / a + y * a / b + z * ww ** 3)


def circumcenter_weights(sides):
    """Weights x:y:z = a^2:b^2:c^2, u^3 = bc/a^2 (cyclic) at which the weighted sums have no AM-GM loss."""
    la, lb, lc = (math.log(s) for s in sides)
    mean = (la + lb + lc) / 3
    return WeightVector.from_free(2 * (la - mean), 2 * (lb - mean), (lb + lc - 2 * la) / 3, (lc + la - 2 * lb) / 3)


def dar_gueron_weights(sides):
    """Weights u:v:w = 1/a:1/b:1/c (x, y, z unit) at which the Dar-Gueron form has no AM-GM loss."""
    la, lb, lc = (math.log(s) for s in sides)
    mean = (la + lb + lc) / 3
    return WeightVector.from_free(0.0, 0.0, mean - la, mean - lb)
