"""Smooth example operations checked numerically on random samples.

Three families:

* unit sphere, ``x * y = 2 (x . y) y - x`` (point reflection through y);
* rotations, ``u * v`` rotates u by a fixed angle psi about the axis v in
  R^3 (psi = pi reproduces the sphere operation);
* linear subspaces of fixed dimension, ``U * W`` reflects U through W.

These live on manifolds, so the axioms are checked on random samples up to
a tolerance, with the maximum residual reported.  All three operations are
invertible by an operation of the same shape (reflections are involutions;
the inverse rotation uses 2*pi - psi), so right-invertibility is checked
directly instead of being reported as unsupported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InputError

Array = np.ndarray


def _unit(v: Array) -> Array:
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise InputError("cannot normalize a (near-)zero vector")
    return v / norm


# ---------------------------------------------------------------------------
# sphere
# ---------------------------------------------------------------------------

def sphere_point(rng: np.random.Generator, dim: int = 2) -> Array:
    """Uniform point on the sphere of dimension ``dim`` (ambient dim+1)."""
    if dim < 1:
        raise InputError("sphere dimension must be at least 1")
    return _unit(rng.normal(size=dim + 1))


def sphere_op(x: Array, y: Array) -> Array:
    """Reflect x through y on the unit sphere: ``2 (x.y) y - x``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return 2.0 * float(x @ y) * y - x


def rotation_op(psi: float, u: Array, v: Array) -> Array:
    """Rotate u about the unit axis v by angle psi (right-hand rule, R^3)."""
    if not 0 < psi < 2 * math.pi:
        raise InputError("rotation angle must lie in (0, 2*pi)")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (3,) or v.shape != (3,):
        raise InputError("rotation operation is defined on vectors in R^3")
    c, s = math.cos(psi), math.sin(psi)
    return u * c + np.cross(v, u) * s + v * float(v @ u) * (1.0 - c)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

def orthonormal_frame(rows: Array) -> Array:
    """Orthonormal rows spanning the same row space (QR-based)."""
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or rows.shape[0] > rows.shape[1]:
        raise InputError("expect an r x d matrix of rows with r <= d")
    q, r = np.linalg.qr(rows.T)
    if min(abs(np.diag(r))) < 1e-10:
        raise InputError("rows are (numerically) linearly dependent")
    return q.T


def random_frame(rng: np.random.Generator, r: int, d: int) -> Array:
    if not 1 <= r < d:
        raise InputError("need 1 <= r < d for a proper subspace")
    return orthonormal_frame(rng.normal(size=(r, d)))


def projector(frame: Array) -> Array:
    frame = np.asarray(frame, dtype=float)
    return frame.T @ frame


def grassmann_op(u: Array, w: Array) -> Array:
    """Reflect the subspace spanned by u's rows through w's subspace.

    Applies ``2 P_w - I`` to each row and re-orthonormalizes, so the result
    is again an orthonormal frame for the reflected subspace.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    if u.shape[1] != w.shape[1]:
        raise InputError("frames must share the ambient dimension")
    d = u.shape[1]
    reflected = u @ (2.0 * projector(w) - np.eye(d))
    return orthonormal_frame(reflected)


def subspace_distance(a: Array, b: Array) -> float:
    """Frobenius distance between orthogonal projectors; 0 iff same subspace."""
    return float(np.linalg.norm(projector(a) - projector(b)))


def vector_distance(a: Array, b: Array) -> float:
    return float(np.linalg.norm(np.asarray(a, float) - np.asarray(b, float)))


# ---------------------------------------------------------------------------
# sampled axiom checking
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampledAxiomReport:
    """Maximum residuals over sampled triples; None means not checked."""

    trials: int
    seed: int
    tol: float
    idempotency: float
    right_distributivity: float
    right_invertibility: Optional[float]

    @property
    def within_tol(self) -> bool:
        residuals = [self.idempotency, self.right_distributivity]
        if self.right_invertibility is not None:
            residuals.append(self.right_invertibility)
        return max(residuals) <= self.tol


def check_axioms_sampled(op: Callable[[Array, Array], Array],
                         sampler: Callable[[np.random.Generator], Array],
                         distance: Callable[[Array, Array], float],
                         trials: int = 200,
                         seed: int = 0,
                         tol: float = 1e-9,
                         inverse_op: Optional[Callable[[Array, Array], Array]] = None,
                         ) -> SampledAxiomReport:
    """Sample triples and report worst-case residuals for the three axioms.

    Residuals measured with ``distance``: idempotency d(x*x, x); right
    distributivity d((x*y)*z, (x*z)*(y*z)); invertibility d((x*y) inv* y, x)
    when an inverse operation is supplied.
    """
    if trials < 1:
        raise InputError("need at least one trial")
    rng = np.random.default_rng(seed)
    worst_idem = worst_dist = 0.0
    worst_inv: Optional[float] = 0.0 if inverse_op is not None else None
    for _ in range(trials):
        x, y, z = sampler(rng), sampler(rng), sampler(rng)
        worst_idem = max(worst_idem, distance(op(x, x), x))
        worst_dist = max(worst_dist,
                         distance(op(op(x, y), z), op(op(x, z), op(y, z))))
        if inverse_op is not None:
            worst_inv = max(worst_inv, distance(inverse_op(op(x, y), y), x))
    return SampledAxiomReport(trials, seed, tol, worst_idem, worst_dist,
                              worst_inv)


def run_named_check(name: str,
                    trials: int = 200,
                    seed: int = 0,
                    tol: Optional[float] = None,
                    dim: int = 2,
                    r: int = 2,
                    ambient: int = 4,
                    psi: float = 2 * math.pi / 3) -> SampledAxiomReport:
    """Configured check for one of the built-in operations.

    ``sphere``: sphere dimension ``dim``.  ``rotation``: angle ``psi`` on the
    2-sphere in R^3.  ``grassmann``: ``r``-planes in R^``ambient``.  Default
    tolerances: 1e-9 for the exact-formula operations, 1e-8 for subspaces
    (QR re-orthonormalization costs a digit).
    """
    if name == "sphere":
        return check_axioms_sampled(
            sphere_op, lambda rng: sphere_point(rng, dim), vector_distance,
            trials, seed, 1e-9 if tol is None else tol, inverse_op=sphere_op)
    if name == "rotation":
        if not 0 < psi < 2 * math.pi:
            raise InputError("rotation angle must lie in (0, 2*pi)")
        inv_psi = 2 * math.pi - psi
        return check_axioms_sampled(
            lambda u, v: rotation_op(psi, u, v),
            lambda rng: sphere_point(rng, 2), vector_distance,
            trials, seed, 1e-9 if tol is None else tol,
            inverse_op=lambda u, v: rotation_op(inv_psi, u, v))
    if name == "grassmann":
        return check_axioms_sampled(
            grassmann_op, lambda rng: random_frame(rng, r, ambient),
            subspace_distance,
            trials, seed, 1e-8 if tol is None else tol,
            inverse_op=grassmann_op)
    raise InputError(f"unknown operation {name!r}; "
                     "expected sphere, rotation, or grassmann")
