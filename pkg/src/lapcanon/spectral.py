"""Symmetric eigendecomposition, eigenspace grouping and reweighted embeddings."""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConvergenceError

ENV_PREFIX = "LAPCANON_"


@dataclass(frozen=True)
class CanonConfig:
    """Tolerances and knobs shared by the canonization pipeline.

    Attributes
    ----------
    eps_eig : float
        Eigenvalues closer than this (chained) belong to one eigenspace.
    eps_zero : float
        Inner products / projection norms at or below this count as zero.
    eps_group : float
        Axis projection lengths closer than this (chained) share a group.
    c : float
        Constant added to every entry of a summary vector.
    k_pe : int or None
        Number of embedding columns kept; ``None`` keeps all ``n``.
    hash_digits : int
        Decimal digits kept when hashing rows for sign propagation.
    """

    eps_eig: float = 1e-6
    eps_zero: float = 1e-6
    eps_group: float = 1e-6
    c: float = 0.0
    k_pe: int | None = None
    hash_digits: int = 6

    def __post_init__(self):
        for name in ("eps_eig", "eps_zero", "eps_group"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.k_pe is not None and self.k_pe < 1:
            raise ValueError("k must be >= 1")
        if self.hash_digits < 0:
            raise ValueError("hash_digits must be nonnegative")

    def k_for(self, n: int) -> int:
        if self.k_pe is None:
            return n
        if self.k_pe > n:
            raise ValueError(f"k_pe={self.k_pe} exceeds n={n}")
        return self.k_pe

    @classmethod
    def from_env(cls, environ=None, **overrides) -> "CanonConfig":
        """Defaults, overridden by ``LAPCANON_EPS_EIG`` etc., then by ``overrides``."""
        environ = os.environ if environ is None else environ
        values = {}
        for name in ("eps_eig", "eps_zero", "eps_group", "c"):
            raw = environ.get(ENV_PREFIX + name.upper())
            if raw is not None:
                values[name] = float(raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_k(self, k_pe):
        return replace(self, k_pe=k_pe)


@dataclass
class Spectrum:
    """Eigenpairs of a normalized adjacency, sorted by descending eigenvalue."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    groups: list[np.ndarray] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def multiplicities(self) -> list[int]:
        return [len(g) for g in self.groups]

    def group_of(self) -> np.ndarray:
        """Eigenspace id for every column."""
        ids = np.empty(self.n, dtype=int)
        for gid, members in enumerate(self.groups):
            ids[members] = gid
        return ids


def chained_groups(values, eps: float) -> list[np.ndarray]:
    """Split already-sorted ``values`` into maximal runs of neighbours within ``eps``."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return []
    breaks = np.nonzero(np.abs(np.diff(values)) > eps)[0] + 1
    return np.split(np.arange(values.size), breaks)


def group_eigenspaces(eigenvalues, eps_eig: float = 1e-6) -> list[np.ndarray]:
    """Partition descending eigenvalues into eigenspaces.

    >>> [g.tolist() for g in group_eigenspaces([1.0, 0.25 + 1e-9, 0.25])]
    [[0], [1, 2]]
    """
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if np.any(np.diff(eigenvalues) > 0):
        raise ValueError("eigenvalues must be sorted in descending order")
    return chained_groups(eigenvalues, eps_eig)


def eigendecompose(adj, cfg: CanonConfig | None = None) -> Spectrum:
    """Eigendecompose a symmetric matrix, largest eigenvalue first.

    Backed by LAPACK's symmetric driver, which is deterministic for a fixed
    input. Any basis it picks inside a repeated eigenspace is arbitrary; the
    canonizers remove that arbitrariness.
    """
    cfg = cfg or CanonConfig()
    adj = np.asarray(adj, dtype=float)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {adj.shape}")
    if not np.all(np.isfinite(adj)):
        raise ConvergenceError("matrix has non-finite entries")
    try:
        w, v = np.linalg.eigh(adj)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc
    w = w[::-1].copy()
    v = np.ascontiguousarray(v[:, ::-1])
    return Spectrum(w, v, group_eigenspaces(w, cfg.eps_eig))


def rse(spec: Spectrum, cfg: CanonConfig | None = None, vectors=None) -> np.ndarray:
    """Reweighted spectral embedding ``U * sqrt(lambda)``, first ``k_pe`` columns.

    ``vectors`` replaces ``spec.vectors`` (e.g. with canonized columns).
    """
    cfg = cfg or CanonConfig()
    k = cfg.k_for(spec.n)
    u = spec.vectors if vectors is None else np.asarray(vectors)
    scale = np.sqrt(np.clip(spec.eigenvalues[:k], 0.0, 2.0))
    return u[:, :k] * scale[None, :]
