"""Full MAP pipeline: eigendecompose, canonize every eigenspace, reweight and truncate."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BASIS_ALGORITHMS, CANONIZED, VIOLATED_K
from .graph import Graph, from_adjacency, normalized_adjacency
from .sign import SIGN_ALGORITHMS, hash_propagate_sign
from .spectral import CanonConfig, Spectrum, eigendecompose, rse

CANONIZED_SIGN = "canonized-sign"
UNCANONIZABLE_SIGN = "uncanonizable-sign"
HASH_CANONIZED_SIGN = "hash-canonized-sign"
CANONIZED_BASIS = "canonized-basis"
VIOLATED_K_STATUS = "violated-k"
VIOLATED_PERP_STATUS = "violated-perp"

CANONIZED_STATUSES = frozenset({CANONIZED_SIGN, HASH_CANONIZED_SIGN, CANONIZED_BASIS})


@dataclass
class CanonizedEmbedding:
    """Canonized positional encoding of one graph.

    ``embedding`` holds the first ``k`` columns (reweighted unless disabled);
    ``vectors`` holds all ``n`` canonized unit eigenvectors.
    """

    embedding: np.ndarray
    eigenvalues: np.ndarray
    eigenspace: np.ndarray
    status: list[str]
    vectors: np.ndarray
    spectrum: Spectrum

    @property
    def canonized_mask(self) -> np.ndarray:
        return np.array([s in CANONIZED_STATUSES for s in self.status], dtype=bool)


def _as_graph(g) -> Graph:
    return g if isinstance(g, Graph) else from_adjacency(g)


def canonize_spectrum(
    spec: Spectrum,
    cfg: CanonConfig | None = None,
    sign: str = "map",
    basis: str = "map",
    hash_propagate: bool = False,
    reweight: bool = True,
) -> CanonizedEmbedding:
    """Canonize the eigenvectors of ``spec`` eigenspace by eigenspace."""
    cfg = cfg or CanonConfig()
    sign_fn = SIGN_ALGORITHMS[sign]
    basis_fn = BASIS_ALGORITHMS[basis]
    n = spec.n
    vectors = spec.vectors.copy()
    status = [""] * n
    for members in spec.groups:
        if len(members) == 1:
            j = int(members[0])
            out = sign_fn(vectors[:, j], cfg)
            vectors[:, j] = out.vector
            status[j] = CANONIZED_SIGN if out.canonized else UNCANONIZABLE_SIGN
        else:
            out = basis_fn(vectors[:, members], cfg)
            vectors[:, members] = out.basis
            if out.status == CANONIZED:
                label = CANONIZED_BASIS
            elif out.status == VIOLATED_K:
                label = VIOLATED_K_STATUS
            else:
                label = VIOLATED_PERP_STATUS
            for j in members:
                status[int(j)] = label

    if hash_propagate:
        pending = [j for j in range(n) if status[j] == UNCANONIZABLE_SIGN]
        done = [j for j in range(n) if status[j] == CANONIZED_SIGN]
        if pending:
            outcomes = hash_propagate_sign([vectors[:, j] for j in pending], vectors[:, done], cfg)
            for j, out in zip(pending, outcomes):
                if out.canonized:
                    vectors[:, j] = out.vector
                    status[j] = HASH_CANONIZED_SIGN

    k = cfg.k_for(n)
    embedding = rse(spec, cfg, vectors) if reweight else vectors[:, :k].copy()
    return CanonizedEmbedding(
        embedding=embedding,
        eigenvalues=spec.eigenvalues[:k].copy(),
        eigenspace=spec.group_of()[:k],
        status=status[:k],
        vectors=vectors,
        spectrum=spec,
    )


def canonize(g, cfg: CanonConfig | None = None, **options) -> CanonizedEmbedding:
    """Canonized (reweighted) spectral embedding of a :class:`Graph` or adjacency matrix.

    ``options`` are forwarded to :func:`canonize_spectrum`.
    """
    cfg = cfg or CanonConfig()
    spec = eigendecompose(normalized_adjacency(_as_graph(g)), cfg)
    return canonize_spectrum(spec, cfg, **options)
