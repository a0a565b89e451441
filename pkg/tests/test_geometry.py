"""Sampled axiom checks for the smooth examples: spheres, rotations,
subspace reflection.  Everything here is floating point, so assertions
use explicit tolerances rather than equality."""

import math

import numpy as np
import pytest

from quandlelab.errors import InputError
from quandlelab.geometry import (
    check_axioms_sampled,
    grassmann_op,
    orthonormal_frame,
    projector,
    random_frame,
    rotation_op,
    run_named_check,
    sphere_op,
    sphere_point,
    subspace_distance,
    vector_distance,
)


def test_sphere_point_is_unit_and_has_requested_ambient():
    rng = np.random.default_rng(42)
    for dim in (1, 2, 5):
        p = sphere_point(rng, dim=dim)
        assert p.shape == (dim + 1,)
        assert abs(np.dot(p, p) - 1.0) < 1e-12


def test_sphere_op_formula_and_norm():
    rng = np.random.default_rng(43)
    for _ in range(50):
        x = sphere_point(rng, 3)
        y = sphere_point(rng, 3)
        z = sphere_op(x, y)
        assert np.allclose(z, 2.0 * np.dot(x, y) * y - x, atol=1e-14)
        assert abs(np.dot(z, z) - 1.0) < 1e-12


def test_sphere_op_is_an_involution_in_the_left_slot():
    rng = np.random.default_rng(44)
    for _ in range(50):
        x = sphere_point(rng, 2)
        y = sphere_point(rng, 2)
        assert vector_distance(sphere_op(sphere_op(x, y), y), x) < 1e-12


def test_rotation_by_pi_is_the_sphere_op():
    rng = np.random.default_rng(45)
    for _ in range(50):
        u = sphere_point(rng, 2)
        v = sphere_point(rng, 2)
        assert vector_distance(rotation_op(math.pi, u, v), sphere_op(u, v)) < 1e-12


def test_rotation_preserves_angle_to_axis():
    rng = np.random.default_rng(46)
    for _ in range(50):
        u = sphere_point(rng, 2)
        v = sphere_point(rng, 2)
        w = rotation_op(1.3, u, v)
        assert abs(np.dot(w, v) - np.dot(u, v)) < 1e-12
        assert abs(np.dot(w, w) - 1.0) < 1e-12


def test_rotation_fixes_the_axis():
    rng = np.random.default_rng(47)
    v = sphere_point(rng, 2)
    assert vector_distance(rotation_op(2.0, v, v), v) < 1e-12


def test_rotation_rejects_bad_angle_and_dimension():
    rng = np.random.default_rng(48)
    u, v = sphere_point(rng, 2), sphere_point(rng, 2)
    with pytest.raises(InputError):
        rotation_op(0.0, u, v)
    with pytest.raises(InputError):
        rotation_op(2 * math.pi, u, v)
    with pytest.raises(InputError):
        rotation_op(1.0, np.ones(4) / 2.0, np.ones(4) / 2.0)


def test_orthonormal_frame_output_is_orthonormal():
    rng = np.random.default_rng(49)
    rows = rng.normal(size=(3, 6))
    f = orthonormal_frame(rows)
    assert np.allclose(f @ f.T, np.eye(3), atol=1e-12)


def test_orthonormal_frame_rejects_dependent_rows():
    rows = np.array([[1.0, 0.0, 0.0], [2.0, 0.0, 0.0]])
    with pytest.raises(InputError):
        orthonormal_frame(rows)


def test_projector_properties():
    rng = np.random.default_rng(50)
    for r, d in [(1, 3), (2, 4), (3, 5)]:
        f = random_frame(rng, r, d)
        p = projector(f)
        assert np.allclose(p, p.T, atol=1e-12)
        assert np.allclose(p @ p, p, atol=1e-12)
        assert abs(np.trace(p) - r) < 1e-10


def test_random_frame_bounds():
    rng = np.random.default_rng(51)
    with pytest.raises(InputError):
        random_frame(rng, 3, 3)
    with pytest.raises(InputError):
        random_frame(rng, 0, 3)


def test_grassmann_op_reflects_the_projector():
    rng = np.random.default_rng(52)
    for _ in range(20):
        u = random_frame(rng, 2, 5)
        w = random_frame(rng, 2, 5)
        s = 2.0 * projector(w) - np.eye(5)
        expected = s @ projector(u) @ s
        assert np.allclose(projector(grassmann_op(u, w)), expected, atol=1e-10)


def test_grassmann_op_fixes_its_own_subspace():
    rng = np.random.default_rng(53)
    u = random_frame(rng, 2, 4)
    assert subspace_distance(grassmann_op(u, u), u) < 1e-12


def test_subspace_distance_ignores_basis_choice():
    rng = np.random.default_rng(54)
    u = random_frame(rng, 2, 5)
    mix = orthonormal_frame(np.array([[2.0, 1.0], [0.0, 1.0]]) @ u)
    assert subspace_distance(u, mix) < 1e-12
    v = random_frame(rng, 2, 5)
    assert subspace_distance(u, v) > 1e-6


def test_named_checks_stay_within_tolerance():
    for name in ("sphere", "rotation", "grassmann"):
        report = run_named_check(name, trials=120, seed=3)
        assert report.within_tol, (name, report)
        assert report.idempotency < report.tol
        assert report.right_distributivity < report.tol
        assert report.right_invertibility < report.tol


def test_named_check_is_deterministic_per_seed():
    a = run_named_check("rotation", trials=60, seed=11)
    b = run_named_check("rotation", trials=60, seed=11)
    assert a == b
    c = run_named_check("rotation", trials=60, seed=12)
    assert a != c


def test_named_check_rejects_unknown_name_and_bad_params():
    with pytest.raises(InputError):
        run_named_check("torus")
    with pytest.raises(InputError):
        run_named_check("rotation", psi=0.0)
    with pytest.raises(InputError):
        run_named_check("grassmann", r=4, ambient=4)


def test_check_axioms_reports_violation_for_non_example():
    def averaged(x, y):
        z = x + y
        return z / np.linalg.norm(z)

    rng0 = np.random.default_rng(0)
    report = check_axioms_sampled(
        averaged,
        lambda rng: sphere_point(rng, 2),
        vector_distance,
        trials=40,
        seed=9,
        tol=1e-9,
    )
    assert not report.within_tol
    assert report.right_distributivity > 1e-3
    assert report.right_invertibility is None


def test_sphere_check_beats_loose_and_misses_zero_tolerance():
    tight = run_named_check("sphere", trials=80, seed=5, tol=1e-30)
    assert not tight.within_tol
    loose = run_named_check("sphere", trials=80, seed=5, tol=1e-6)
    assert loose.within_tol
