"""scikit-learn style transformer wrapping the canonization pipeline."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .basis import BASIS_ALGORITHMS
from .graph import Graph, from_adjacency
from .pipeline import canonize
from .sign import SIGN_ALGORITHMS
from .spectral import CanonConfig


def check_graphs(X) -> tuple[list[Graph], bool]:
    """Coerce ``X`` into a list of graphs.

    Accepts a single :class:`Graph`, a single square adjacency array, or a
    sequence of either. The flag tells whether a single graph was passed.
    """
    if isinstance(X, Graph):
        return [X], True
    if isinstance(X, np.ndarray) and X.ndim == 2:
        return [from_adjacency(check_array(X, ensure_min_samples=1))], True
    if isinstance(X, np.ndarray) and X.ndim == 3:
        return [from_adjacency(check_array(a)) for a in X], False
    try:
        items = list(X)
    except TypeError:
        raise TypeError(f"expected a Graph, an adjacency matrix or a sequence of them, got {type(X).__name__}") from None
    graphs = []
    for item in items:
        if isinstance(item, Graph):
            graphs.append(item)
        else:
            graphs.append(from_adjacency(check_array(item)))
    return graphs, False


class MAPEncoder(TransformerMixin, BaseEstimator):
    """Sign- and basis-canonized spectral positional encoding of graphs.

    Each graph is mapped to an ``n x n_components`` matrix whose columns are
    the canonized eigenvectors of its normalized adjacency (largest eigenvalue
    first), scaled by the square root of the eigenvalue when ``reweight``.
    The transform is stateless; ``fit`` only validates the parameters.

    Parameters
    ----------
    n_components : int or None
        Columns kept per graph; ``None`` keeps all ``n``.
    sign : {"map", "polynomial"}
    basis : {"map", "strong"}
    hash_propagate : bool
        Run the row-hash pass for vectors the sign canonizer could not fix.
    reweight : bool
        Scale columns by ``sqrt(eigenvalue)``; ``False`` gives the plain embedding.
    eps_eig, eps_zero, eps_group, c, hash_digits
        See :class:`~lapcanon.spectral.CanonConfig`.

    Examples
    --------
    >>> from lapcanon import Graph, MAPEncoder
    >>> enc = MAPEncoder(n_components=1).fit([Graph(2, ((0, 1),))])
    >>> enc.transform(Graph(2, ((0, 1),))).round(4).tolist()
    [[0.7071], [0.7071]]
    """

    def __init__(
        self,
        n_components=None,
        sign="map",
        basis="map",
        hash_propagate=False,
        reweight=True,
        eps_eig=1e-6,
        eps_zero=1e-6,
        eps_group=1e-6,
        c=0.0,
        hash_digits=6,
    ):
        self.n_components = n_components
        self.sign = sign
        self.basis = basis
        self.hash_propagate = hash_propagate
        self.reweight = reweight
        self.eps_eig = eps_eig
        self.eps_zero = eps_zero
        self.eps_group = eps_group
        self.c = c
        self.hash_digits = hash_digits

    def _make_config(self) -> CanonConfig:
        if self.sign not in SIGN_ALGORITHMS:
            raise ValueError(f"sign must be one of {sorted(SIGN_ALGORITHMS)}, got {self.sign!r}")
        if self.basis not in BASIS_ALGORITHMS:
            raise ValueError(f"basis must be one of {sorted(BASIS_ALGORITHMS)}, got {self.basis!r}")
        return CanonConfig(
            eps_eig=self.eps_eig,
            eps_zero=self.eps_zero,
            eps_group=self.eps_group,
            c=self.c,
            k_pe=self.n_components,
            hash_digits=self.hash_digits,
        )

    def fit(self, X=None, y=None):
        self.config_ = self._make_config()
        if X is not None:
            graphs, _ = check_graphs(X)
            self.n_graphs_seen_ = len(graphs)
        return self

    def canonize(self, X):
        """Full :class:`~lapcanon.pipeline.CanonizedEmbedding` results, with per-column status."""
        check_is_fitted(self, "config_")
        graphs, single = check_graphs(X)
        out = [
            canonize(
                g,
                self.config_,
                sign=self.sign,
                basis=self.basis,
                hash_propagate=self.hash_propagate,
                reweight=self.reweight,
            )
            for g in graphs
        ]
        return out[0] if single else out

    def transform(self, X):
        result = self.canonize(X)
        if isinstance(result, list):
            return [r.embedding for r in result]
        return result.embedding
