"""Randomized invariance / equivariance simulations for the sign and basis canonizers."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import BASIS_ALGORITHMS
from .generate import random_orthonormal, stream
from .sign import SIGN_ALGORITHMS
from .spectral import CanonConfig

DEFAULT_N_RANGE = (3, 30)


@dataclass
class SimulationReport:
    p_correct: int = 0
    q_correct: int = 0
    pq_correct: int = 0
    total: int = 0
    seed: int = 0
    eps: float = 1e-6
    regenerated: int = 0
    max_deviation: float = 0.0

    @property
    def passed(self) -> bool:
        return self.p_correct == self.q_correct == self.pq_correct == self.total

    def to_json(self) -> dict:
        out = dataclasses.asdict(self)
        out["passed"] = self.passed
        return out


def apply_perm(perm, m):
    """``P @ m`` with ``(P x)[perm[i]] = x[i]``."""
    out = np.empty_like(m)
    out[perm] = m
    return out


def sign_columns(algorithm: str = "map", cfg: CanonConfig | None = None):
    """Column-wise sign canonizer returning ``(matrix, canonized_flags)``."""
    fn = SIGN_ALGORITHMS[algorithm]

    def run(u):
        outs = [fn(u[:, j], cfg) for j in range(u.shape[1])]
        return np.column_stack([o.vector for o in outs]), np.array([o.canonized for o in outs])

    return run


def basis_canonizer(algorithm: str = "map", cfg: CanonConfig | None = None):
    fn = BASIS_ALGORITHMS[algorithm]

    def run(u):
        out = fn(u, cfg)
        return out.basis, np.full(u.shape[1], out.canonized)

    return run


def _agree(a, fa, b, fb, eps):
    """Matching flags and, on columns canonized in both, Frobenius distance below ``eps``."""
    if not np.array_equal(fa, fb):
        return False, np.inf
    dev = float(np.linalg.norm(a[:, fa] - b[:, fb])) if fa.any() else 0.0
    return dev < eps, dev


def _tally(report, canon, u, v, w, y, perm, eps):
    u0, fu = canon(u)
    checks = (
        (apply_perm(perm, u0), fu, *canon(v)),
        (u0, fu, *canon(w)),
        (apply_perm(perm, u0), fu, *canon(y)),
    )
    results = []
    for a, fa, b, fb in checks:
        ok, dev = _agree(a, fa, b, fb, eps)
        results.append(ok)
        if np.isfinite(dev):
            report.max_deviation = max(report.max_deviation, dev)
    report.p_correct += results[0]
    report.q_correct += results[1]
    report.pq_correct += results[2]
    report.total += 1


def verify_sign(trials: int = 1000, n_range=DEFAULT_N_RANGE, seed: int = 42, eps: float = 1e-6,
                algorithm: str = "map", cfg: CanonConfig | None = None,
                canonizer: Callable | None = None) -> SimulationReport:
    """Check sign invariance and permutation equivariance on random orthonormal matrices.

    Each trial draws ``U`` (Haar, ``n x n``), a permutation ``P`` and a sign
    matrix ``S`` and compares the canonized ``U``, ``PU``, ``US`` and ``PUS``.
    ``canonizer`` overrides the column-wise sign canonizer (test seam); it
    must return ``(matrix, canonized_flags)``.
    """
    lo, hi = n_range
    if lo < 1 or hi < lo:
        raise ValueError(f"bad n_range {n_range}")
    canon = canonizer or sign_columns(algorithm, cfg)
    report = SimulationReport(seed=seed, eps=eps)
    for trial in range(trials):
        rng = stream(seed, trial)
        n = int(rng.integers(lo, hi + 1))
        u = random_orthonormal(n, n, rng)
        perm = rng.permutation(n)
        s = rng.choice([-1.0, 1.0], size=n)
        v = apply_perm(perm, u)
        w = u * s[None, :]
        _tally(report, canon, u, v, w, apply_perm(perm, w), perm, eps)
    return report


def verify_basis(trials: int = 1000, seed: int = 7, eps: float = 1e-6, n_range=DEFAULT_N_RANGE,
                 algorithm: str = "map", cfg: CanonConfig | None = None,
                 canonizer: Callable | None = None, max_regenerations: int = 100) -> SimulationReport:
    """Check basis invariance and permutation equivariance on random eigenspaces.

    Each trial draws ``n``, ``2 <= d < n``, a Haar ``U`` (``n x d``), a
    permutation ``P`` and a Haar ``Q`` (``d x d``) and compares the canonized
    ``U``, ``PU``, ``UQ`` and ``PUQ``. Draws on which ``U`` itself violates
    the canonizer's assumptions are redrawn and counted in ``regenerated``.
    """
    lo, hi = n_range
    lo = max(lo, 3)
    if hi < lo:
        raise ValueError(f"bad n_range {n_range}; basis trials need n >= 3")
    canon = canonizer or basis_canonizer(algorithm, cfg)
    report = SimulationReport(seed=seed, eps=eps)
    for trial in range(trials):
        for attempt in range(max_regenerations + 1):
            rng = stream(seed, trial, attempt)
            n = int(rng.integers(lo, hi + 1))
            d = int(rng.integers(2, n))
            u = random_orthonormal(n, d, rng)
            perm = rng.permutation(n)
            q = random_orthonormal(d, d, rng)
            if canon(u)[1].all():
                break
            report.regenerated += 1
        v = apply_perm(perm, u)
        w = u @ q
        _tally(report, canon, u, v, w, apply_perm(perm, w), perm, eps)
    return report
