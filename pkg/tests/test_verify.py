import json

import numpy as np
import pytest

from lapcanon.verify import verify_basis, verify_sign


def test_sign_short_run():
    r = verify_sign(trials=100, seed=42)
    assert (r.p_correct, r.q_correct, r.pq_correct, r.total) == (100, 100, 100, 100)
    assert r.passed


def test_polynomial_short_run():
    assert verify_sign(trials=100, seed=5, algorithm="polynomial").passed


def test_basis_short_run():
    r = verify_basis(trials=100, seed=7)
    assert r.passed and r.regenerated == 0


def test_strong_basis_short_run():
    assert verify_basis(trials=50, seed=1, algorithm="strong").passed


def test_zero_trials():
    r = verify_sign(trials=0)
    assert (r.p_correct, r.q_correct, r.pq_correct, r.total) == (0, 0, 0, 0)
    assert verify_basis(trials=0).total == 0


def test_identity_canonizer_is_caught():
    identity = lambda u: (u, np.ones(u.shape[1], dtype=bool))  # noqa: E731
    r = verify_sign(trials=50, seed=1, canonizer=identity)
    assert r.q_correct < r.total
    assert not r.passed
    r = verify_basis(trials=50, seed=1, canonizer=identity)
    assert r.q_correct < r.total


def test_tight_eps_headroom():
    r = verify_basis(trials=1000, seed=7, eps=1e-12)
    assert r.max_deviation < 1e-7
    r = verify_sign(trials=200, seed=42, eps=1e-12)
    assert r.max_deviation < 1e-7


def test_deterministic_report():
    a = verify_sign(trials=30, seed=9).to_json()
    b = verify_sign(trials=30, seed=9).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_bad_range():
    with pytest.raises(ValueError):
        verify_sign(trials=1, n_range=(5, 3))
    with pytest.raises(ValueError):
        verify_basis(trials=1, n_range=(1, 2))
