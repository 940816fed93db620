import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lapcanon.basis import (
    VIOLATED_K,
    VIOLATED_PERP,
    check_orthonormal,
    map_basis,
    map_basis_strong,
)
from lapcanon.errors import DomainError
from lapcanon.generate import random_orthonormal, stream
from lapcanon.oracle import basis_canonizable_bruteforce
from lapcanon.verify import apply_perm

S2 = 1 / np.sqrt(2)


def perp_example():
    """Two disjoint-support vectors whose two longest axes land in the same one."""
    a = np.array([0.72, 0.69, 0.0742, 0, 0, 0])
    b = np.array([0, 0, 0, 0.6, 0.6, 0.529])
    return np.column_stack([a / np.linalg.norm(a), b / np.linalg.norm(b)])


def test_axis_plus_diagonal():
    u = np.array([[1.0, 0.0], [0.0, S2], [0.0, S2]])
    out = map_basis(u)
    assert out.canonized and out.summary_indices == [1, 2]
    np.testing.assert_allclose(out.basis, u, atol=1e-12)
    q = random_orthonormal(2, 2, stream(5))
    np.testing.assert_allclose(map_basis(u @ q).basis, out.basis, atol=1e-12)


def test_coordinate_plane_violates_perp():
    out = map_basis(np.eye(3)[:, :2])
    assert out.status == VIOLATED_PERP and out.step == 2 and out.k_groups == 2
    np.testing.assert_array_equal(out.basis, np.eye(3)[:, :2])


def test_equal_projections_violate_k():
    # the plane orthogonal to (1,1,1): every axis projects with length sqrt(2/3)
    u = np.column_stack([np.array([1.0, -1.0, 0.0]) * S2, np.array([1.0, 1.0, -2.0]) / np.sqrt(6)])
    out = map_basis(u)
    assert out.status == VIOLATED_K and out.k_groups == 1 and out.step is None


def test_distinct_axis_angles_unique_basis():
    rng = stream(11)
    u = random_orthonormal(3, 2, rng)
    out = map_basis(u)
    assert out.canonized and out.k_groups == 3
    for _ in range(5):
        np.testing.assert_allclose(map_basis(u @ random_orthonormal(2, 2, rng)).basis, out.basis, atol=1e-10)


def test_strong_not_omnipotent():
    out = map_basis_strong(np.eye(3)[:, :2])
    assert not out.canonized and out.step == 2


def test_strong_cannot_reuse_summary():
    u = np.column_stack([np.array([1.0, -1.0, 0.0]) * S2, np.array([1.0, 1.0, -2.0]) / np.sqrt(6)])
    assert map_basis_strong(u).status == VIOLATED_K


def test_strong_succeeds_where_map_fails():
    u = perp_example()
    assert map_basis(u).status == VIOLATED_PERP and map_basis(u).step == 2
    out = map_basis_strong(u)
    assert out.canonized and out.summary_indices == [1, 3]
    rng = stream(3)
    for _ in range(5):
        perm = rng.permutation(6)
        q = random_orthonormal(2, 2, rng)
        np.testing.assert_allclose(map_basis_strong(apply_perm(perm, u @ q)).basis,
                                   apply_perm(perm, out.basis), atol=1e-10)


def test_strong_matches_map_when_map_succeeds():
    rng = stream(8)
    for _ in range(50):
        n = int(rng.integers(3, 12))
        u = random_orthonormal(n, int(rng.integers(2, n)), rng)
        a = map_basis(u)
        if a.canonized:
            np.testing.assert_array_equal(map_basis_strong(u).basis, a.basis)


def test_output_orthonormal_and_same_span():
    rng = stream(9)
    for _ in range(50):
        n = int(rng.integers(3, 20))
        u = random_orthonormal(n, int(rng.integers(2, n)), rng)
        out = map_basis(u)
        assert out.canonized
        b = out.basis
        assert np.abs(b.T @ b - np.eye(b.shape[1])).max() < 1e-10
        assert np.abs(b @ b.T - u @ u.T).max() < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_basis_verdict_consistent_with_oracle(seed):
    """A canonized output must be reproducible from every basis and labelling."""
    rng = stream(seed)
    n = int(rng.integers(3, 7))
    u = random_orthonormal(n, int(rng.integers(2, n)), rng)
    out = map_basis(u)
    if out.canonized:
        assert basis_canonizable_bruteforce(u, tol=1e-7).canonizable
        perm = rng.permutation(n)
        q = random_orthonormal(u.shape[1], u.shape[1], rng)
        np.testing.assert_allclose(map_basis(apply_perm(perm, u) @ q).basis, apply_perm(perm, out.basis), atol=1e-9)


def test_domain_errors():
    with pytest.raises(DomainError):
        check_orthonormal(np.ones((3, 2)))
    with pytest.raises(DomainError):
        map_basis(np.ones((2, 3)))
    with pytest.raises(ValueError):
        map_basis(np.eye(3)[:, :1])
