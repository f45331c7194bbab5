"""Geometric objects in hyperbolic n-space and their pairwise invariants.

Points, horospheres, cooriented hyperplanes, hyperspheres and equidistant
branches all carry a coordinate representative in R^{n,1}.  Cooriented
Euclidean spheres live separately in R^n and only meet the Lorentzian world
through the lift in the models module.

Conventions fixed here:

* a horosphere is the level set {x : <x, rep> = -1/sqrt(2)} of a forward
  lightlike representative, so the representative is unique (not just up to
  scale) and lambda lengths come straight from inner products;
* hyperplane coorientation is the choice of unit spacelike normal;
* an equidistant branch is one component {x : <x, normal> = offset} with
  offset != 0 of the equidistant locus around the hyperplane <x, normal> = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatch, InvalidInput, NoCommonTangent
from .lorentz import DEFAULT_TOL, SignClass, as_vector, classify, inner, norm_sq

HOROSPHERE_LEVEL = -1.0 / math.sqrt(2.0)

# validation slack for object invariants (unit norms, hyperboloid membership)
_CHECK_TOL = 1e-9
# arccosh/arcsinh arguments may sit this far outside their domain before we
# refuse to clamp
_DOMAIN_SLACK = 1e-7


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.flags.writeable = False
    return out


def _safe_acosh(x: float) -> float:
    if x < 1.0 - _DOMAIN_SLACK:
        raise InvalidInput(f"arccosh argument {x} is below 1 beyond tolerance")
    return math.acosh(max(x, 1.0))


def _safe_sqrt(x: float, scale: float = 1.0) -> float:
    if x < -_DOMAIN_SLACK * max(scale, 1.0):
        raise InvalidInput(f"sqrt argument {x} is negative beyond tolerance")
    return math.sqrt(max(x, 0.0))


@dataclass(frozen=True, eq=False)
class HPoint:
    """Point on the forward hyperboloid sheet {<x,x> = -1, x_last > 0}."""

    coords: np.ndarray

    def __init__(self, coords):
        v = as_vector(coords)
        scale = 1.0 + float(np.max(np.abs(v))) ** 2
        if abs(norm_sq(v) + 1.0) > _CHECK_TOL * scale:
            raise InvalidInput("point is not on the unit hyperboloid")
        if v[-1] <= 0:
            raise InvalidInput("point is on the backward sheet")
        object.__setattr__(self, "coords", _frozen(v))

    @property
    def n(self) -> int:
        return self.coords.shape[0] - 1


@dataclass(frozen=True, eq=False)
class Horosphere:
    """Horosphere encoded by its forward lightlike representative.

    The surface is {x on the hyperboloid : <x, rep> = -1/sqrt(2)}.  Scaling
    the representative moves the horosphere among the concentric family
    around the same ideal centre.
    """

    rep: np.ndarray

    def __init__(self, rep):
        v = as_vector(rep)
        if classify(v, _CHECK_TOL) is not SignClass.LIGHTLIKE:
            raise InvalidInput("representative must be lightlike")
        if v[-1] <= 0:
            raise InvalidInput("representative must be forward pointing")
        object.__setattr__(self, "rep", _frozen(v))

    @property
    def n(self) -> int:
        return self.rep.shape[0] - 1


@dataclass(frozen=True, eq=False)
class CoHyperplane:
    """Cooriented hyperplane {x : <x, normal> = 0} with unit spacelike normal."""

    normal: np.ndarray

    def __init__(self, normal):
        v = as_vector(normal)
        scale = 1.0 + float(np.max(np.abs(v))) ** 2
        if abs(norm_sq(v) - 1.0) > _CHECK_TOL * scale:
            raise InvalidInput("normal must be unit spacelike")
        object.__setattr__(self, "normal", _frozen(v))

    @property
    def n(self) -> int:
        return self.normal.shape[0] - 1

    def flipped(self) -> "CoHyperplane":
        return CoHyperplane(-self.normal)


@dataclass(frozen=True, eq=False)
class Hypersphere:
    """Metric sphere of given radius around a point of hyperbolic space."""

    centre: HPoint
    radius: float

    def __init__(self, centre: HPoint, radius: float):
        if not isinstance(centre, HPoint):
            centre = HPoint(centre)
        if not (radius > 0):
            raise InvalidInput("radius must be positive")
        object.__setattr__(self, "centre", centre)
        object.__setattr__(self, "radius", float(radius))

    @property
    def n(self) -> int:
        return self.centre.n


@dataclass(frozen=True, eq=False)
class EquidistantBranch:
    """One branch {x : <x, normal> = offset} of an equidistant hypersurface."""

    normal: np.ndarray
    offset: float

    def __init__(self, normal, offset: float):
        v = as_vector(normal)
        scale = 1.0 + float(np.max(np.abs(v))) ** 2
        if abs(norm_sq(v) - 1.0) > _CHECK_TOL * scale:
            raise InvalidInput("normal must be unit spacelike")
        if offset == 0:
            raise InvalidInput("offset must be nonzero (zero offset is the hyperplane itself)")
        object.__setattr__(self, "normal", _frozen(v))
        object.__setattr__(self, "offset", float(offset))

    @property
    def n(self) -> int:
        return self.normal.shape[0] - 1


@dataclass(frozen=True, eq=False)
class CoSphereE:
    """Cooriented Euclidean hypersphere in R^n: centre, radius, sign eps."""

    centre: np.ndarray
    radius: float
    eps: int

    def __init__(self, centre, radius: float, eps: int = 1):
        c = np.asarray(centre, dtype=float)
        if c.ndim != 1 or c.shape[0] < 1:
            raise InvalidInput("centre must be a 1-d coordinate vector")
        if not np.all(np.isfinite(c)):
            raise InvalidInput("centre must be finite")
        if not (radius > 0):
            raise InvalidInput("radius must be positive")
        if eps not in (1, -1):
            raise InvalidInput("eps must be +1 or -1")
        object.__setattr__(self, "centre", _frozen(c))
        object.__setattr__(self, "radius", float(radius))
        object.__setattr__(self, "eps", int(eps))

    @property
    def n(self) -> int:
        return self.centre.shape[0]

    def with_eps(self, eps: int) -> "CoSphereE":
        return CoSphereE(self.centre, self.radius, eps)


@dataclass(frozen=True, eq=False)
class EuclideanPlane:
    """Affine hyperplane {x : x . normal = offset} in R^n, witness output only."""

    normal: np.ndarray
    offset: float

    def __init__(self, normal, offset: float):
        v = np.asarray(normal, dtype=float)
        nrm = float(np.linalg.norm(v))
        if nrm == 0:
            raise InvalidInput("plane normal must be nonzero")
        object.__setattr__(self, "normal", _frozen(v / nrm))
        object.__setattr__(self, "offset", float(offset) / nrm)


# ---------------------------------------------------------------------------
# pairwise quantities


def distance(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance, arccosh(-<p, q>)."""
    if p.coords.shape != q.coords.shape:
        raise DimensionMismatch("points live in different dimensions")
    # arccosh loses half the digits near 1, so equal inputs short-circuit
    if p is q or np.array_equal(p.coords, q.coords):
        return 0.0
    return _safe_acosh(-inner(p.coords, q.coords))


def half_dist_sinh_sq(p: HPoint, q: HPoint) -> float:
    """sinh^2 of half the distance, computed as -(<p, q> + 1)/2."""
    if p.coords.shape != q.coords.shape:
        raise DimensionMismatch("points live in different dimensions")
    return max(0.0, -(inner(p.coords, q.coords) + 1.0) / 2.0)


def same_centre(a: Horosphere, b: Horosphere, tol: float = DEFAULT_TOL) -> bool:
    """Do two horospheres share their ideal centre (parallel representatives)?"""
    u = a.rep / float(np.max(np.abs(a.rep)))
    v = b.rep / float(np.max(np.abs(b.rep)))
    return float(np.max(np.abs(u - v))) <= tol


def lambda_length(a: Horosphere, b: Horosphere) -> float:
    """Penner lambda length sqrt(-<rep_a, rep_b>); zero for concentric pairs."""
    if a.rep.shape != b.rep.shape:
        raise DimensionMismatch("horospheres live in different dimensions")
    if same_centre(a, b):
        return 0.0
    return _safe_sqrt(-inner(a.rep, b.rep), scale=float(np.max(np.abs(a.rep)) * np.max(np.abs(b.rep))))


def sigma(a: CoHyperplane, b: CoHyperplane) -> float:
    """Cooriented hyperplane invariant (<n_a, n_b> - 1)/2.

    The value encodes the mutual position piecewise: sinh^2 of half the
    common perpendicular length for disjoint pairs with coinciding
    coorientations, -cosh^2 of the half length for opposite coorientations,
    -sin^2 of half the dihedral angle for intersecting pairs, and 0 or -1
    for tangency at infinity.
    """
    if a.normal.shape != b.normal.shape:
        raise DimensionMismatch("hyperplanes live in different dimensions")
    if a is b or np.array_equal(a.normal, b.normal):
        return 0.0
    return (inner(a.normal, b.normal) - 1.0) / 2.0


class RelationKind(Enum):
    TANGENT_AT_INFINITY_SAME = "tangent_at_infinity_same"
    TANGENT_AT_INFINITY_OPPOSITE = "tangent_at_infinity_opposite"
    INTERSECTING = "intersecting"
    DISJOINT_SAME = "disjoint_same"
    DISJOINT_OPPOSITE = "disjoint_opposite"


@dataclass(frozen=True)
class HyperplaneRelation:
    """Decoded mutual position of two cooriented hyperplanes.

    value is the dihedral angle for intersecting pairs, the common
    perpendicular length for disjoint pairs, and None for tangency.
    """

    kind: RelationKind
    value: Optional[float]


def sigma_decode(value: float, tol: float = DEFAULT_TOL) -> HyperplaneRelation:
    """Invert the piecewise meaning of the sigma invariant."""
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    if abs(value) <= tol:
        return HyperplaneRelation(RelationKind.TANGENT_AT_INFINITY_SAME, None)
    if abs(value + 1.0) <= tol:
        return HyperplaneRelation(RelationKind.TANGENT_AT_INFINITY_OPPOSITE, None)
    if value > 0:
        return HyperplaneRelation(RelationKind.DISJOINT_SAME, 2.0 * math.asinh(math.sqrt(value)))
    if value > -1.0:
        return HyperplaneRelation(RelationKind.INTERSECTING, 2.0 * math.asin(math.sqrt(-value)))
    return HyperplaneRelation(RelationKind.DISJOINT_OPPOSITE, 2.0 * _safe_acosh(math.sqrt(-value)))


def inversive_distance(a: CoSphereE, b: CoSphereE) -> float:
    """Signed inversive distance of two cooriented Euclidean spheres."""
    if a.centre.shape != b.centre.shape:
        raise DimensionMismatch("spheres live in different dimensions")
    d2 = float(np.sum((a.centre - b.centre) ** 2))
    return a.eps * b.eps * (d2 - a.radius**2 - b.radius**2) / (2.0 * a.radius * b.radius)


def tau(a: CoSphereE, b: CoSphereE) -> float:
    """Quadratic tangency invariant eps_a eps_b (|c_a - c_b|^2 - (r_a - eps_a eps_b r_b)^2).

    Equals 2 r_a r_b (iota + 1) for the inversive distance iota, and is the
    squared length of the relevant common tangent segment when one exists.
    """
    if a.centre.shape != b.centre.shape:
        raise DimensionMismatch("spheres live in different dimensions")
    ee = a.eps * b.eps
    d2 = float(np.sum((a.centre - b.centre) ** 2))
    return ee * (d2 - (a.radius - ee * b.radius) ** 2)


def tangent_length(a: CoSphereE, b: CoSphereE) -> float:
    """Length of the common tangent segment selected by the coorientations.

    Coinciding signs select the external tangent, opposite signs the
    internal one.  Raises NoCommonTangent when that segment does not exist
    (the radicand eps_a eps_b tau is negative).
    """
    radicand = a.eps * b.eps * tau(a, b)
    if radicand < 0:
        raise NoCommonTangent("spheres admit no common tangent of the requested kind")
    return math.sqrt(radicand)


Surface = Union[Horosphere, Hypersphere, CoHyperplane, EquidistantBranch]


def contains(surface: Surface, p: HPoint, tol: float = DEFAULT_TOL) -> bool:
    """Membership of a point on a surface, up to tol on the defining equation."""
    if isinstance(surface, Horosphere):
        return abs(inner(surface.rep, p.coords) - HOROSPHERE_LEVEL) <= tol
    if isinstance(surface, Hypersphere):
        return abs(-inner(surface.centre.coords, p.coords) - math.cosh(surface.radius)) <= tol
    if isinstance(surface, CoHyperplane):
        return abs(inner(surface.normal, p.coords)) <= tol
    if isinstance(surface, EquidistantBranch):
        return abs(inner(surface.normal, p.coords) - surface.offset) <= tol
    raise InvalidInput(f"unsupported surface type {type(surface).__name__}")
