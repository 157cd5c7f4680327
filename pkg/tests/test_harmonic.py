"""Orthonormal bases of the deviator spaces and projection onto them."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from deviatoric import (
    build_basis,
    coords,
    delta,
    from_coords,
    is_deviator,
    outer,
    project_deviator,
    random_rotation,
    rotate,
    symmetrize,
)


@pytest.mark.parametrize("s", range(9))
def test_basis_dimension_is_2s_plus_1(s):
    assert len(build_basis(s)) == 2 * s + 1


@pytest.mark.parametrize("s", range(7))
def test_basis_elements_are_orthonormal_deviators(s):
    basis = build_basis(s)
    flat = basis.flat
    assert_allclose(flat @ flat.T, np.eye(2 * s + 1), atol=1e-12)
    for b in basis:
        if s >= 2:
            assert_allclose(b, symmetrize(b), atol=1e-12)
            assert_allclose(np.trace(b, axis1=0, axis2=1), np.zeros((3,) * (s - 2)), atol=1e-12)


def test_basis_is_cached_and_read_only():
    basis = build_basis(3)
    assert build_basis(3) is basis
    with pytest.raises(ValueError):
        basis.tensors[0, 0, 0, 0] = 1.0


def test_project_deviator_fixes_deviators():
    rng = np.random.default_rng(11)
    for s in range(2, 6):
        d = from_coords(rng.standard_normal(2 * s + 1), s)
        assert_allclose(project_deviator(d), d, atol=1e-12)


def test_project_deviator_kills_trace_carriers():
    # sym(delta x w) spans the orthogonal complement of the order-3 deviators
    # inside the symmetric tensors, so its projection vanishes
    rng = np.random.default_rng(12)
    w = rng.standard_normal(3)
    carrier = symmetrize(outer(delta(), w))
    assert_allclose(project_deviator(carrier), np.zeros((3, 3, 3)), atol=1e-12)


def test_project_deviator_is_orthogonal_projection():
    rng = np.random.default_rng(13)
    a = rng.standard_normal((3, 3, 3))
    b = rng.standard_normal((3, 3, 3))
    pa = project_deviator(a)
    assert_allclose(project_deviator(pa), pa, atol=1e-12)
    # self-adjoint: <Pa, b> = <a, Pb>
    assert np.sum(pa * b) == pytest.approx(np.sum(a * project_deviator(b)))


def test_coords_round_trip():
    rng = np.random.default_rng(14)
    for s in range(5):
        c = rng.standard_normal(2 * s + 1)
        d = from_coords(c, s)
        assert_allclose(coords(d), c, atol=1e-12)
        assert d.ndim == s


def test_coords_rejects_non_deviators():
    with pytest.raises(ValueError):
        coords(np.eye(3))  # traceful
    t = np.zeros((3, 3, 3))
    t[0, 1, 2] = 1.0
    with pytest.raises(ValueError):
        coords(t)  # not symmetric


def test_is_deviator():
    assert not is_deviator(np.eye(3))
    assert is_deviator(np.array(build_basis(4)[3]))
    assert is_deviator(np.zeros((3, 3)))


def test_deviator_space_is_rotation_invariant():
    rng = np.random.default_rng(15)
    for s in (2, 3):
        d = from_coords(rng.standard_normal(2 * s + 1), s)
        r = random_rotation(rng)
        rotated = rotate(d, r)
        assert is_deviator(rotated)
        assert_allclose(project_deviator(rotated), rotated, atol=1e-12)
