"""Conversions between the hyperboloid, ball and upper half-space models,
plus the two bridges the theorems rely on: flat charts on horospheres and
the lift of cooriented Euclidean spheres to hyperplane normals one
dimension up.
"""

from __future__ import annotations

import math
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatch, InvalidInput, OutsideBall
from .lorentz import as_vector, inner, metric_diag, null_basis
from .objects import (
    HOROSPHERE_LEVEL,
    CoHyperplane,
    CoSphereE,
    EuclideanPlane,
    Horosphere,
    HPoint,
)

_SQRT2 = math.sqrt(2.0)


def hyperboloid_to_ball(p: Union[HPoint, np.ndarray]) -> np.ndarray:
    """Stereographic projection to the open unit ball, b = spatial/(1 + last)."""
    x = p.coords if isinstance(p, HPoint) else HPoint(p).coords
    return x[:-1] / (1.0 + x[-1])


def ball_to_hyperboloid(b) -> HPoint:
    """Inverse projection; raises OutsideBall within 1e-12 of the boundary."""
    bv = np.asarray(b, dtype=float)
    if bv.ndim != 1:
        raise InvalidInput("ball point must be a 1-d coordinate vector")
    r2 = float(bv @ bv)
    if r2 >= (1.0 - 1e-12) ** 2:
        raise OutsideBall("point is not strictly inside the unit ball")
    denom = 1.0 - r2
    return HPoint(np.concatenate([2.0 * bv, [1.0 + r2]]) / denom)


def ball_distance(b1, b2) -> float:
    """Hyperbolic distance read off from ball coordinates."""
    b1 = np.asarray(b1, dtype=float)
    b2 = np.asarray(b2, dtype=float)
    d2 = float(np.sum((b1 - b2) ** 2))
    den = (1.0 - float(b1 @ b1)) * (1.0 - float(b2 @ b2))
    return math.acosh(1.0 + 2.0 * d2 / den)


def hyperboloid_to_halfspace(p: HPoint) -> tuple[np.ndarray, float]:
    """Upper half-space coordinates (z in R^{n-1}, t > 0).

    The distinguished ideal point sent to infinity is the direction
    (0, ..., 0, 1, 1).
    """
    x = p.coords if isinstance(p, HPoint) else HPoint(p).coords
    t = 1.0 / (x[-1] - x[-2])
    return x[:-2] * t, t


def halfspace_to_hyperboloid(z, t: float) -> HPoint:
    """Inverse of hyperboloid_to_halfspace."""
    zv = np.asarray(z, dtype=float)
    if not (t > 0):
        raise InvalidInput("half-space height must be positive")
    a = float(zv @ zv) + t * t
    return HPoint(np.concatenate([zv / t, [(a - 1.0) / (2.0 * t), (a + 1.0) / (2.0 * t)]]))


def _horosphere_frame(h: Horosphere) -> tuple[np.ndarray, np.ndarray]:
    """Adapted frame (m, F) for a horosphere representative ell = rep.

    m is the companion forward lightlike vector with <ell, m> = -1 and F has
    as columns a Lorentz-orthonormal spacelike basis of {ell, m}^perp.  The
    construction is deterministic in the representative.
    """
    ell = h.rep
    dim = ell.shape[0]
    d = ell[:-1] / ell[-1]
    m0 = np.concatenate([-d, [1.0]])
    m = m0 / (-inner(ell, m0))
    rows = np.stack([ell * metric_diag(dim), m * metric_diag(dim)])
    B = null_basis(rows, nullity=dim - 2)
    G = B.T @ (B * metric_diag(dim)[:, None])
    # G is positive definite because the complement of a lightlike pair is
    # spacelike; Cholesky then orthonormalizes the basis under the form
    L = np.linalg.cholesky((G + G.T) / 2.0)
    F = B @ np.linalg.inv(L).T
    return m, F


def horosphere_chart(h: Horosphere, p: HPoint) -> np.ndarray:
    """Flat chart of a horosphere, one coordinate array per point on it.

    Chart distances equal 2 sinh(rho/2) for the ambient hyperbolic distance
    rho between points of the horosphere, i.e. the chart realizes the
    intrinsic Euclidean metric.  The chart is unique up to a Euclidean
    isometry; this one is fixed by the frame construction.
    """
    if h.rep.shape != p.coords.shape:
        raise DimensionMismatch("horosphere and point live in different dimensions")
    _, F = _horosphere_frame(h)
    return F.T @ (p.coords * metric_diag(h.rep.shape[0]))


def horosphere_point(h: Horosphere, zeta) -> HPoint:
    """Point of the horosphere with the given chart coordinates (chart inverse)."""
    zv = np.asarray(zeta, dtype=float)
    m, F = _horosphere_frame(h)
    if zv.shape[0] != F.shape[1]:
        raise DimensionMismatch("chart coordinates have the wrong length")
    alpha = (float(zv @ zv) + 1.0) / _SQRT2
    beta = 1.0 / _SQRT2
    return HPoint(alpha * h.rep + beta * m + F @ zv)


def sphere_lift(s: CoSphereE) -> CoHyperplane:
    """Lift a cooriented sphere of R^n to a hyperplane normal in R^{n+1,1}.

    The normal is eps * (c, (|c|^2 - r^2 - 1)/2, (|c|^2 - r^2 + 1)/2) / r,
    a unit spacelike vector; inner products of lifts equal minus the
    inversive distance of the spheres.
    """
    c = s.centre
    a = float(c @ c) - s.radius**2
    v = np.concatenate([c, [(a - 1.0) / 2.0, (a + 1.0) / 2.0]]) * (s.eps / s.radius)
    return CoHyperplane(v)


def normal_to_sphere_or_plane(v, tol: float = 1e-9) -> Union[CoSphereE, EuclideanPlane]:
    """Invert sphere_lift on a unit spacelike normal of R^{n+1,1}.

    Normals whose last two coordinates agree (up to tol, relative) have no
    finite-sphere preimage and decode as an affine hyperplane of R^n.
    """
    w = as_vector(v)
    k = float(w[-1] - w[-2])
    scale = float(np.max(np.abs(w)))
    if abs(k) <= tol * max(scale, 1.0):
        return EuclideanPlane(w[:-2], (w[-2] + w[-1]) / 2.0)
    return CoSphereE(w[:-2] / k, 1.0 / abs(k), 1 if k > 0 else -1)


def lightlike_to_boundary(w, tol: float = 1e-12) -> Optional[np.ndarray]:
    """Boundary point of the half-space model named by a lightlike vector.

    Returns the point of R^n, or None for the point at infinity.  The
    vector (p, (|p|^2-1)/2, (|p|^2+1)/2) decodes to p.
    """
    v = as_vector(w)
    k = float(v[-1] - v[-2])
    scale = float(np.max(np.abs(v)))
    if abs(k) <= tol * max(scale, 1.0):
        return None
    return v[:-2] / k


def boundary_to_lightlike(p) -> np.ndarray:
    """Lightlike representative of a boundary point of R^n (inverse of above)."""
    pv = np.asarray(p, dtype=float)
    q = float(pv @ pv)
    return np.concatenate([pv, [(q - 1.0) / 2.0, (q + 1.0) / 2.0]])


def horosphere_ideal_centre(h: Horosphere) -> np.ndarray:
    """Ideal centre of a horosphere as a point of the unit sphere (ball model)."""
    return h.rep[:-1] / h.rep[-1]
