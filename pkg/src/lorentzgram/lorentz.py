"""Core linear algebra for the Lorentzian vector space R^{n,1}.

Vectors are plain numpy arrays of length n+1 holding coordinates
(x_1, ..., x_n, x_{n+1}).  The bilinear form is

    <x, y> = x_1 y_1 + ... + x_n y_n - x_{n+1} y_{n+1},

so the last coordinate carries the minus sign.  The hyperboloid model of
hyperbolic n-space is the sheet {<x, x> = -1, x_{n+1} > 0}.

The module also owns the degeneracy test used by every theorem in the
package: a symmetric matrix of inner products is "degenerate" when its
smallest singular value is negligible against the largest.  That ratio test
is scale-robust where a raw determinant threshold is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, GeometryError, InvalidInput, NotSymmetric

DEFAULT_TOL = 1e-9


def as_vector(x) -> np.ndarray:
    """Coerce to a float coordinate vector and check it is usable.

    Vectors must have length at least 3 (hyperbolic dimension at least 2)
    and finite entries.
    """
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise InvalidInput(f"expected a 1-d coordinate vector, got shape {v.shape}")
    if v.shape[0] < 3:
        raise InvalidInput(f"need at least 3 coordinates, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise InvalidInput("coordinates must be finite")
    return v


def metric_diag(dim: int) -> np.ndarray:
    """Diagonal of the bilinear form on R^{dim-1,1}: (+1, ..., +1, -1)."""
    d = np.ones(dim)
    d[-1] = -1.0
    return d


def inner(x, y) -> float:
    """Lorentzian inner product, minus sign on the last coordinate."""
    xv, yv = as_vector(x), as_vector(y)
    if xv.shape != yv.shape:
        raise DimensionMismatch(f"lengths {xv.shape[0]} and {yv.shape[0]} differ")
    return float(np.dot(xv[:-1], yv[:-1]) - xv[-1] * yv[-1])


def norm_sq(x) -> float:
    """Lorentzian square norm <x, x>."""
    return inner(x, x)


class SignClass(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def classify(x, tol: float = DEFAULT_TOL) -> SignClass:
    """Causal character of a vector.

    A vector counts as lightlike when |<x, x>| <= tol * (1 + |x|_inf^2),
    which keeps the decision invariant under rescaling of x up to the
    additive guard for near-zero vectors.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    v = as_vector(x)
    q = norm_sq(v)
    scale = 1.0 + float(np.max(np.abs(v))) ** 2
    if abs(q) <= tol * scale:
        return SignClass.LIGHTLIKE
    return SignClass.SPACELIKE if q > 0 else SignClass.TIMELIKE


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Matrix of pairwise inner products, stored exactly symmetric."""

    entries: np.ndarray
    n_ambient: int


def gram(vectors: Sequence) -> GramMatrix:
    """Gram matrix of a family of vectors under the Lorentzian form."""
    vs = [as_vector(v) for v in vectors]
    if not vs:
        raise InvalidInput("need at least one vector")
    dim = vs[0].shape[0]
    for v in vs[1:]:
        if v.shape[0] != dim:
            raise DimensionMismatch("vectors have mixed lengths")
    V = np.stack(vs)
    X = (V * metric_diag(dim)) @ V.T
    X = (X + X.T) / 2.0  # force exact symmetry in storage
    X.flags.writeable = False
    return GramMatrix(entries=X, n_ambient=dim - 1)


@dataclass(frozen=True, eq=False)
class DegeneracyVerdict:
    """Outcome of the singular-value degeneracy test.

    kernel is a unit coefficient vector with M @ kernel ~ 0; it is present
    exactly when is_degenerate holds.
    """

    is_degenerate: bool
    det_value: float
    sigma_min: float
    sigma_max: float
    kernel: Optional[np.ndarray]


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    """Flip sign so the largest-magnitude entry (earliest on ties) is positive."""
    k = int(np.argmax(np.abs(v)))
    return -v + 0.0 if v[k] < 0 else v + 0.0  # adding 0.0 clears negative zeros


def first_nonzero_positive(v: np.ndarray) -> np.ndarray:
    """Flip sign so the first non-negligible entry is positive."""
    scale = float(np.max(np.abs(v)))
    if scale == 0.0:
        return v + 0.0
    for entry in v:
        if abs(entry) > 1e-12 * scale:
            return -v + 0.0 if entry < 0 else v + 0.0
    return v + 0.0


def degeneracy(matrix: Union[GramMatrix, np.ndarray], tol: float = DEFAULT_TOL) -> DegeneracyVerdict:
    """Decide whether a symmetric matrix is singular up to tolerance.

    The verdict is sigma_min <= tol * max(sigma_max, 1), computed from a
    symmetric eigendecomposition.  Note the guard constant: matrices whose
    entries are uniformly tiny (sigma_max far below 1) are treated as
    degenerate, so the test is only scale-free while sigma_max stays of
    order 1 or larger.

    Raises NotSymmetric when the input is asymmetric beyond 1e-12 relative.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    M = matrix.entries if isinstance(matrix, GramMatrix) else np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise InvalidInput("matrix entries must be finite")
    scale = max(float(np.max(np.abs(M))), 1.0)
    if float(np.max(np.abs(M - M.T))) > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric within 1e-12 relative")
    S = (M + M.T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(S)
    sigmas = np.abs(eigvals)
    i_min = int(np.argmin(sigmas))
    sigma_min = float(sigmas[i_min])
    sigma_max = float(np.max(sigmas))
    det_value = float(np.prod(eigvals))
    is_degenerate = sigma_min <= tol * max(sigma_max, 1.0)
    kernel = _canonical_sign(eigvecs[:, i_min].copy()) if is_degenerate else None
    return DegeneracyVerdict(
        is_degenerate=is_degenerate,
        det_value=det_value,
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        kernel=kernel,
    )


def null_basis(rows: np.ndarray, nullity: Optional[int] = None, rtol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the Euclidean null space of `rows`.

    With `nullity` given, the basis is simply the right-singular vectors for
    the smallest `nullity` singular values, which is the right notion when
    the caller knows the rank deficiency from geometry.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    _, svals, vt = np.linalg.svd(rows)
    d = rows.shape[1]
    if nullity is None:
        smax = svals[0] if svals.size else 0.0
        rank = int(np.sum(svals > rtol * max(smax, 1.0)))
        nullity = d - rank
    if nullity <= 0:
        return np.zeros((d, 0))
    return vt[d - nullity:].T


def lemma_identity_gap(vectors: Sequence) -> tuple[float, float, float]:
    """Return (det of Gram, det of coordinate matrix, tolerated gap).

    For square families the Gram determinant must equal minus the squared
    coordinate determinant.  The tolerated gap combines a 1e-8 relative
    term with an absolute floor derived from the Hadamard bound, so the
    check stays meaningful for (near-)singular input.
    """
    vs = np.stack([as_vector(v) for v in vectors])
    if vs.shape[0] != vs.shape[1]:
        raise DimensionMismatch("identity needs as many vectors as coordinates")
    det_gram = float(np.linalg.det(gram(vs).entries))
    det_coord = float(np.linalg.det(vs))
    hadamard = float(np.prod(np.linalg.norm(vs, axis=1)))
    m = vs.shape[0]
    floor = 64.0 * m * np.finfo(float).eps * max(hadamard, 1e-30) ** 2
    allowed = max(1e-8 * max(abs(det_gram), det_coord**2), floor)
    return det_gram, det_coord, allowed


def codim1_test(vectors: Sequence, tol: float = DEFAULT_TOL) -> tuple[DegeneracyVerdict, Optional[np.ndarray]]:
    """Do n+1 vectors of R^{n,1} lie in a common codimension-1 subspace?

    Returns the degeneracy verdict of their Gram matrix and, when
    degenerate, a normal vector w with <v_i, w> ~ 0 for all i.  The normal
    is recovered from the Euclidean kernel of the coordinate matrix (the
    Lorentzian dual of a Euclidean-orthogonal vector is orthogonal under
    the form), has unit Euclidean length, and its first non-negligible
    entry is positive.
    """
    vs = np.stack([as_vector(v) for v in vectors])
    if vs.shape[0] != vs.shape[1]:
        raise DimensionMismatch(
            f"need {vs.shape[1]} vectors of length {vs.shape[1]}, got {vs.shape[0]}"
        )
    det_gram, det_coord, allowed = lemma_identity_gap(vs)
    if abs(det_gram + det_coord**2) > allowed:
        raise GeometryError(
            "Gram determinant disagrees with the squared coordinate determinant; "
            "input is numerically inconsistent"
        )
    verdict = degeneracy(gram(vs), tol)
    if not verdict.is_degenerate:
        return verdict, None
    h = null_basis(vs, nullity=1)[:, 0]
    w = h * metric_diag(vs.shape[1])
    w = first_nonzero_positive(w / np.linalg.norm(w))
    return verdict, w


def residual_scale(vectors: Sequence, w: np.ndarray) -> float:
    """Scale against which <v_i, w> residuals are judged."""
    vs = np.stack([as_vector(v) for v in vectors])
    return (1.0 + float(np.max(np.abs(vs)))) * float(np.max(np.abs(w)))
