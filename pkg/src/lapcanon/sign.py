"""Sign canonization of eigenvectors of simple eigenvalues."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .projection import AxisGrouping, group_lengths, project_axes
from .spectral import CanonConfig

MAP_SIGN = "map_sign"
POLYNOMIAL = "polynomial"
HASH_PROPAGATED = "hash_propagated"

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


@dataclass
class SignOutcome:
    """Result of canonizing the sign of one unit vector.

    ``h`` is the 1-based index of the deciding summary vector (MAP) or the
    deciding odd power (polynomial). When ``canonized`` is false the vector
    is returned exactly as received.
    """

    vector: np.ndarray
    canonized: bool
    h: int | None
    algorithm: str

    @property
    def status(self) -> str:
        return "canonized" if self.canonized else "uncanonizable"


def check_unit_vector(u, tol: float = 1e-6) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.ndim != 1 or u.size == 0:
        raise DomainError(f"expected a non-empty 1-d vector, got shape {u.shape}")
    norm = float(np.linalg.norm(u))
    if abs(norm - 1.0) > tol:
        raise DomainError(f"expected a unit vector, got norm {norm:.3g}")
    return u


def _scan(u, grouping: AxisGrouping, eps_zero: float):
    """First 1-based summary index whose inner product with ``u`` is nonzero, and that product."""
    for i in range(grouping.k_groups):
        value = grouping.dot(u, i)
        if abs(value) > eps_zero:
            return i + 1, value
    return None, 0.0


def map_sign(u, cfg: CanonConfig | None = None) -> SignOutcome:
    """Pick the sign of ``u`` that makes its first non-orthogonal summary projection positive.

    The summaries come from grouping the axes by ``|u_i|``, largest first.
    If ``u`` is orthogonal to every summary it cannot be canonized by any
    permutation-equivariant rule and is returned unchanged.

    >>> map_sign(np.array([2.0, -1.0, -1.0]) / np.sqrt(6)).h
    1
    """
    cfg = cfg or CanonConfig()
    u = check_unit_vector(u)
    h, value = _scan(u, project_axes(u, cfg), cfg.eps_zero)
    if h is None:
        return SignOutcome(u.copy(), False, None, MAP_SIGN)
    return SignOutcome(u.copy() if value > 0 else -u, True, h, MAP_SIGN)


def power_sum(u, h: int) -> float:
    return math.fsum((np.asarray(u, dtype=float) ** h).tolist())


def polynomial_sign(u, cfg: CanonConfig | None = None) -> SignOutcome:
    """Make the first nonvanishing odd power sum ``sum(u_i**h)`` positive."""
    cfg = cfg or CanonConfig()
    u = check_unit_vector(u)
    for h in range(1, u.size + 1, 2):
        s = power_sum(u, h)
        if abs(s) > cfg.eps_zero:
            return SignOutcome(u.copy() if s > 0 else -u, True, h, POLYNOMIAL)
    return SignOutcome(u.copy(), False, None, POLYNOMIAL)


SIGN_ALGORITHMS = {"map": map_sign, "polynomial": polynomial_sign}


# -- hash propagation ------------------------------------------------------


def fnv1a_64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & _MASK64
    return h


def _quantize(x: float, digits: int) -> str:
    s = f"{x:.{digits}f}"
    if s.startswith("-") and not s.strip("-0."):
        s = s[1:]
    return s


def row_hashes(canonized, digits: int = 6) -> np.ndarray:
    """Map every row of ``canonized`` to a real in ``[0, 1)`` via FNV-1a over its quantized text."""
    canonized = np.asarray(canonized, dtype=float)
    out = np.empty(canonized.shape[0])
    for i, row in enumerate(canonized):
        text = ",".join(_quantize(float(x), digits) for x in row)
        out[i] = fnv1a_64(text.encode("ascii")) / 2.0**64
    return out


def hash_propagate_sign(uncanonized, canonized, cfg: CanonConfig | None = None) -> list[SignOutcome]:
    """Second sign pass for vectors MAP-sign could not canonize.

    Rows of ``canonized`` (the already-canonized eigenvectors of the same
    graph, in a fixed column order) are hashed to one value per node; the
    axis grouping of that hash vector supplies the summaries used to fix the
    signs of ``uncanonized``.
    """
    cfg = cfg or CanonConfig()
    vectors = [check_unit_vector(u) for u in uncanonized]
    canonized = np.asarray(canonized, dtype=float)
    if canonized.ndim != 2 or canonized.shape[1] == 0 or not vectors:
        return [SignOutcome(u.copy(), False, None, HASH_PROPAGATED) for u in vectors]
    if canonized.shape[0] != vectors[0].size:
        raise ValueError("canonized rows must match the vector length")
    u_can = row_hashes(canonized, cfg.hash_digits)
    norm = np.linalg.norm(u_can)
    grouping = group_lengths(u_can / norm if norm > 0 else u_can, cfg.eps_group, cfg.c)
    results = []
    for u in vectors:
        h, value = _scan(u, grouping, cfg.eps_zero)
        if h is None:
            results.append(SignOutcome(u.copy(), False, None, HASH_PROPAGATED))
        else:
            results.append(SignOutcome(u.copy() if value > 0 else -u, True, h, HASH_PROPAGATED))
    return results
