"""Seeded random generators: orthonormal matrices, permutations and graphs.

Every graph ``i`` of a batch draws from its own stream ``(seed, i)`` so a
batch is reproducible element by element, whatever ``count`` is.
"""
from __future__ import annotations

import numpy as np

from .basis import BASIS_ALGORITHMS
from .errors import GeneratorError
from .graph import Graph, normalized_adjacency
from .spectral import CanonConfig, eigendecompose


def stream(*key) -> np.random.Generator:
    return np.random.default_rng([int(k) for k in key])


def random_orthonormal(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed ``n x d`` matrix with orthonormal columns (QR with sign-fixed ``R``)."""
    z = rng.standard_normal((n, d))
    q, r = np.linalg.qr(z)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs[None, :]


def random_weight(rng, size=None):
    """Uniform on ``(0, 1]``."""
    return 1.0 - rng.random(size)


def is_connected(g: Graph) -> bool:
    adj = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    todo = [0]
    while todo:
        for nb in adj[todo.pop()]:
            if nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return len(seen) == g.n


def _er_graph(n, p, weighted, rng) -> Graph:
    iu, iv = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    weights = random_weight(rng, iu.size) if weighted else np.ones(iu.size)
    return Graph(n, tuple((int(u), int(v), float(w)) for u, v, w in zip(iu[keep], iv[keep], weights[keep])))


def gen_er(n: int, p: float, weighted: bool = False, count: int = 1, seed: int = 0,
           connected: bool = False, max_retries: int = 1000) -> list[Graph]:
    """Erdos-Renyi ``G(n, p)`` graphs; weights uniform on ``(0, 1]`` when ``weighted``.

    ``connected=True`` rejects disconnected draws (each component adds an
    eigenvalue 1 to the normalized adjacency, so disconnected graphs always
    have a repeated top eigenvalue).
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    graphs = []
    for i in range(count):
        rng = stream(seed, i)
        for _ in range(max_retries):
            g = _er_graph(n, p, weighted, rng)
            if not connected or is_connected(g):
                break
        else:
            raise GeneratorError(f"no connected G({n}, {p}) draw in {max_retries} tries")
        graphs.append(g)
    return graphs


def _random_component(size, offset, rng, p=0.5):
    """Connected weighted graph on nodes ``offset..offset+size-1``: a random spanning tree plus extra edges."""
    nodes = rng.permutation(size)
    edges = {}
    for i in range(1, size):
        parent = nodes[rng.integers(0, i)]
        a, b = sorted((int(nodes[i]), int(parent)))
        edges[(a, b)] = float(random_weight(rng))
    for a in range(size):
        for b in range(a + 1, size):
            if (a, b) not in edges and rng.random() < p:
                edges[(a, b)] = float(random_weight(rng))
    return [(a + offset, b + offset, 0.1 + 0.9 * w) for (a, b), w in sorted(edges.items())]


def top_eigenspace(g: Graph, cfg: CanonConfig | None = None):
    """Orthonormal basis of the eigenspace of the largest normalized-adjacency eigenvalue."""
    spec = eigendecompose(normalized_adjacency(g), cfg)
    return spec, spec.vectors[:, spec.groups[0]]


def gen_basis_ambiguous(count: int = 10, seed: int = 0, n: int = 12, dim: int = 3,
                        cfg: CanonConfig | None = None, basis: str | None = "map",
                        min_gap: float = 1e-3, max_retries: int = 200) -> list[Graph]:
    """Weighted graphs whose top eigenspace has dimension exactly ``dim``.

    Each graph is the disjoint union of ``dim`` random connected weighted
    components; the eigenvalue 1 of the normalized adjacency then has one
    eigenvector per component. Draws are rejected unless the next eigenvalue
    sits at least ``min_gap`` below and, when ``basis`` names a canonizer,
    that canonizer succeeds on the eigenspace.
    """
    if n < 2 * dim:
        raise ValueError(f"n={n} too small for {dim} components of size >= 2")
    cfg = cfg or CanonConfig()
    graphs = []
    for i in range(count):
        rng = stream(seed, i)
        for _ in range(max_retries):
            cuts = np.sort(rng.choice(np.arange(2, n - 1), size=dim - 1, replace=False))
            sizes = np.diff(np.concatenate(([0], cuts, [n])))
            if sizes.min() < 2:
                continue
            edges, offset = [], 0
            for size in sizes:
                edges += _random_component(int(size), offset, rng)
                offset += int(size)
            perm = rng.permutation(n)
            g = Graph(n, tuple(edges)).permute(perm)
            spec, u = top_eigenspace(g, cfg)
            if len(spec.groups[0]) != dim:
                continue
            if spec.eigenvalues[0] - spec.eigenvalues[dim] < min_gap:
                continue
            if basis is not None and not BASIS_ALGORITHMS[basis](u, cfg).canonized:
                continue
            graphs.append(g)
            break
        else:
            raise GeneratorError(f"graph {i}: no draw with a {dim}-dim top eigenspace in {max_retries} tries")
    return graphs
