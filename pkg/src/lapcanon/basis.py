"""Basis canonization of eigenspaces with multiplicity ``d >= 2``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .projection import AxisGrouping, project_axes
from .spectral import CanonConfig

CANONIZED = "canonized"
VIOLATED_K = "violated_k"
VIOLATED_PERP = "violated_perp"


@dataclass
class BasisOutcome:
    """Canonical basis of one eigenspace, or the reason none was produced.

    On a violation ``basis`` is the input basis, untouched, and ``step`` is
    the 1-based step that failed (``None`` for a ``violated_k`` found before
    any step ran). ``summary_indices`` lists the 1-based summary used at
    each completed step.
    """

    basis: np.ndarray
    status: str
    step: int | None = None
    summary_indices: list[int] = field(default_factory=list)
    k_groups: int = 0

    @property
    def canonized(self) -> bool:
        return self.status == CANONIZED


def check_orthonormal(u, tol: float = 1e-6) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.ndim != 2 or u.shape[1] > u.shape[0]:
        raise DomainError(f"expected an n x d basis with d <= n, got shape {u.shape}")
    err = np.abs(u.T @ u - np.eye(u.shape[1])).max() if u.size else 0.0
    if err > tol:
        raise DomainError(f"columns are not orthonormal (max deviation {err:.3g})")
    return u


def _project_complement(u, chosen, x):
    """Project ``x`` onto ``span(u)`` minus ``span(chosen)``, Gram-Schmidt applied twice."""
    v = u @ (u.T @ x)
    if chosen:
        b = np.column_stack(chosen)
        for _ in range(2):
            v = v - b @ (b.T @ v)
    return v


def _canonize(u, cfg: CanonConfig, strong: bool) -> BasisOutcome:
    cfg = cfg or CanonConfig()
    u = check_orthonormal(u)
    n, d = u.shape
    if d < 2:
        raise ValueError("basis canonization needs d >= 2; route d == 1 to sign canonization")
    grouping: AxisGrouping = project_axes(u, cfg)
    k = grouping.k_groups
    if not strong and k < d:
        return BasisOutcome(u.copy(), VIOLATED_K, None, [], k)
    chosen: list[np.ndarray] = []
    used: list[int] = []
    for step in range(1, d + 1):
        candidates = range(k) if strong else [step - 1]
        picked = None
        for i in candidates:
            v = _project_complement(u, chosen, grouping.summary(i))
            norm = np.linalg.norm(v)
            if norm > cfg.eps_zero:
                picked = (i, v / norm)
                break
        if picked is None:
            status = VIOLATED_K if strong and k < d else VIOLATED_PERP
            return BasisOutcome(u.copy(), status, step, used, k)
        used.append(picked[0] + 1)
        chosen.append(picked[1])
    return BasisOutcome(np.column_stack(chosen), CANONIZED, None, used, k)


def map_basis(u, cfg: CanonConfig | None = None) -> BasisOutcome:
    """Canonical orthonormal basis of ``span(u)`` from the axis summaries.

    Step ``i`` takes the unit vector of the remaining subspace closest to the
    ``i``-th summary, i.e. the normalized projection of that summary. Fails
    with ``violated_k`` when there are fewer summaries than dimensions and
    with ``violated_perp`` when a summary projects to zero.
    """
    return _canonize(u, cfg, strong=False)


def map_basis_strong(u, cfg: CanonConfig | None = None) -> BasisOutcome:
    """Like :func:`map_basis`, but each step uses the first summary with a nonzero projection."""
    return _canonize(u, cfg, strong=True)


BASIS_ALGORITHMS = {"map": map_basis, "strong": map_basis_strong}
