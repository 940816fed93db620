"""Corpus-level counts of uncanonizable eigenvectors and assumption violations."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ConvergenceError
from .graph import Graph
from .pipeline import (
    UNCANONIZABLE_SIGN,
    VIOLATED_K_STATUS,
    VIOLATED_PERP_STATUS,
    canonize,
)
from .spectral import CanonConfig


def _ratio(num, den):
    return num / den if den else 0.0


@dataclass
class CorpusStats:
    """Counts over every graph with more than ``min_nodes`` nodes.

    Eigenvalues are counted once per eigenspace. ``violated_k`` counts
    repeated eigenvalues failing the summary-count condition;
    ``violated_perp`` counts those passing it but failing a projection step,
    so the two never overlap.
    """

    graphs: int = 0
    skipped_small: int = 0
    failed: int = 0
    eigenvectors: int = 0
    sign_uncanonizable: int = 0
    eigenvalues: int = 0
    multiple_eigenvalues: int = 0
    violated_k: int = 0
    violated_perp: int = 0
    basis_violated_eigenvectors: int = 0
    min_nodes: int = 5
    errors: list = field(default_factory=list)

    @property
    def sign_ratio(self) -> float:
        return _ratio(self.sign_uncanonizable, self.eigenvectors)

    @property
    def multiple_ratio(self) -> float:
        return _ratio(self.multiple_eigenvalues, self.eigenvalues)

    @property
    def p1(self) -> float:
        return _ratio(self.violated_k, self.multiple_eigenvalues)

    @property
    def p2(self) -> float:
        return _ratio(self.violated_perp, self.multiple_eigenvalues)

    @property
    def p3(self) -> float:
        return _ratio(self.violated_k, self.eigenvalues)

    @property
    def p4(self) -> float:
        return _ratio(self.violated_perp, self.eigenvalues)

    @property
    def basis_ratio(self) -> float:
        return _ratio(self.basis_violated_eigenvectors, self.eigenvectors)

    @property
    def total_ratio(self) -> float:
        return _ratio(self.sign_uncanonizable + self.basis_violated_eigenvectors, self.eigenvectors)

    def to_json(self) -> dict:
        out = dataclasses.asdict(self)
        for name in ("sign_ratio", "multiple_ratio", "p1", "p2", "p3", "p4", "basis_ratio", "total_ratio"):
            out[name] = getattr(self, name)
        return out


def corpus_stats(graphs: Iterable[Graph], cfg: CanonConfig | None = None, min_nodes: int = 5,
                 sign: str = "map", basis: str = "map") -> CorpusStats:
    cfg = cfg or CanonConfig()
    cfg = dataclasses.replace(cfg, k_pe=None)
    stats = CorpusStats(min_nodes=min_nodes)
    for index, g in enumerate(graphs):
        if g.n <= min_nodes:
            stats.skipped_small += 1
            continue
        try:
            result = canonize(g, cfg, sign=sign, basis=basis)
        except ConvergenceError as exc:
            stats.failed += 1
            stats.errors.append({"graph": index, "error": str(exc)})
            continue
        stats.graphs += 1
        stats.eigenvectors += g.n
        stats.eigenvalues += len(result.spectrum.groups)
        for members in result.spectrum.groups:
            label = result.status[int(members[0])]
            if len(members) == 1:
                stats.sign_uncanonizable += label == UNCANONIZABLE_SIGN
                continue
            stats.multiple_eigenvalues += 1
            if label == VIOLATED_K_STATUS:
                stats.violated_k += 1
                stats.basis_violated_eigenvectors += len(members)
            elif label == VIOLATED_PERP_STATUS:
                stats.violated_perp += 1
                stats.basis_violated_eigenvectors += len(members)
    return stats
