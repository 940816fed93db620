"""Brute-force canonizability oracles for small instances.

Both oracles enumerate every permutation of the nodes and look for one that
realizes the ambiguity, so they are only usable for small ``n``.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import SizeError

MAX_SIGN_N = 10
MAX_BASIS_N = 8
TOL = 1e-9


@dataclass
class OracleVerdict:
    canonizable: bool
    witness: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.canonizable == (self.witness is not None):
            raise ValueError("a witness is required exactly when the input is not canonizable")


@functools.lru_cache(maxsize=None)
def permutation_table(n: int) -> np.ndarray:
    """All ``n!`` permutations of ``range(n)`` in lexicographic order, one per row."""
    return np.array(list(itertools.permutations(range(n))), dtype=np.int8).reshape(-1, n)


@functools.lru_cache(maxsize=None)
def _inverse_table(n: int) -> np.ndarray:
    return np.argsort(permutation_table(n), axis=1).astype(np.int8)


def sign_canonizable_bruteforce(u, tol: float = TOL) -> OracleVerdict:
    """``u`` is sign canonizable iff no permutation maps it to ``-u``."""
    u = np.asarray(u, dtype=float)
    n = u.size
    if n > MAX_SIGN_N:
        raise SizeError(f"sign oracle supports n <= {MAX_SIGN_N}, got {n}")
    # u = -P u forces the sorted entries of u and -u to agree.
    if np.abs(np.sort(u) - np.sort(-u)).max(initial=0.0) > tol:
        return OracleVerdict(True)
    inv = _inverse_table(n)  # (P x)[i] = x[inv[i]]
    for start in range(0, len(inv), 1 << 16):
        chunk = inv[start:start + (1 << 16)]
        hits = np.nonzero(np.linalg.norm(u + u[chunk], axis=1) <= tol)[0]
        if hits.size:
            return OracleVerdict(False, tuple(int(i) for i in permutation_table(n)[start + hits[0]]))
    return OracleVerdict(True)


def basis_canonizable_bruteforce(u, tol: float = TOL) -> OracleVerdict:
    """``U`` is basis canonizable iff no permutation keeps ``span(U)`` while moving ``U``."""
    u = np.asarray(u, dtype=float)
    if u.ndim == 1:
        u = u[:, None]
    n = u.shape[0]
    if n > MAX_BASIS_N:
        raise SizeError(f"basis oracle supports n <= {MAX_BASIS_N}, got {n}")
    proj = u @ u.T
    inv = _inverse_table(n)
    moved = np.sqrt(((u[inv] - u) ** 2).sum(axis=(1, 2))) > tol
    same_span = np.sqrt(((proj[inv[:, :, None], inv[:, None, :]] - proj) ** 2).sum(axis=(1, 2))) <= tol
    hits = np.nonzero(moved & same_span)[0]
    if hits.size:
        return OracleVerdict(False, tuple(int(i) for i in permutation_table(n)[hits[0]]))
    return OracleVerdict(True)
