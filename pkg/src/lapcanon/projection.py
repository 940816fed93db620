"""Axis projection: group the coordinate axes by their projection length onto a subspace."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import CanonConfig, chained_groups


@dataclass
class AxisGrouping:
    """Axes grouped by projection length, longest first.

    ``groups[i]`` holds the (sorted) axis indices whose projection length is
    ``magnitudes[i]``; ``summaries[i]`` is the indicator of that group plus
    ``c`` on every entry.
    """

    magnitudes: np.ndarray
    groups: list[np.ndarray]
    n: int
    c: float = 0.0

    @property
    def k_groups(self) -> int:
        return len(self.groups)

    def summary(self, i: int) -> np.ndarray:
        x = np.full(self.n, self.c)
        x[self.groups[i]] += 1.0
        return x

    @property
    def summaries(self) -> np.ndarray:
        return np.array([self.summary(i) for i in range(self.k_groups)]).reshape(self.k_groups, self.n)

    def dot(self, u, i: int) -> float:
        """``u @ summaries[i]`` summed exactly, so the value is order-independent."""
        u = np.asarray(u, dtype=float)
        value = math.fsum(u[self.groups[i]].tolist())
        if self.c:
            value = math.fsum([value, self.c * math.fsum(u.tolist())])
        return value


def axis_lengths(u) -> np.ndarray:
    """``|U U^T e_i|`` for every axis, i.e. the row norms of ``U``."""
    u = np.asarray(u, dtype=float)
    if u.ndim == 1:
        return np.abs(u)
    return np.sqrt(np.einsum("ij,ij->i", u, u))


def group_lengths(alpha, eps_group: float, c: float = 0.0) -> AxisGrouping:
    alpha = np.asarray(alpha, dtype=float)
    n = alpha.size
    order = np.argsort(-alpha, kind="stable")
    runs = chained_groups(alpha[order], eps_group)
    groups = [np.sort(order[r]) for r in runs]
    magnitudes = np.array([alpha[order[r[0]]] for r in runs])
    return AxisGrouping(magnitudes, groups, n, float(c))


def project_axes(u, cfg: CanonConfig | None = None) -> AxisGrouping:
    """Group the axes ``e_0..e_{n-1}`` by the length of their projection onto ``span(u)``.

    ``u`` is a unit vector of shape ``(n,)`` or an orthonormal ``(n, d)`` basis.
    The result depends only on the span of ``u``.
    """
    cfg = cfg or CanonConfig()
    return group_lengths(axis_lengths(u), cfg.eps_group, cfg.c)
