"""Graph data model, file ingestion and the normalized adjacency matrix."""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError, ValidationError

FORMATS = ("json", "edgelist")


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph on nodes ``0..n-1``.

    Edges are stored as ``(u, v, w)`` triples with ``u < v``. Self-loops are
    not allowed in the input; the normalized adjacency adds them itself.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...] = ()

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise ValidationError(f"n must be an integer, got {self.n!r}")
        if self.n < 1:
            raise ValidationError(f"n must be positive, got {self.n}")
        seen = set()
        clean = []
        for edge in self.edges:
            if len(edge) == 2:
                u, v = edge
                w = 1.0
            elif len(edge) == 3:
                u, v, w = edge
            else:
                raise ValidationError(f"edge must be (u, v) or (u, v, w), got {edge!r}")
            for node in (u, v):
                if isinstance(node, bool) or not isinstance(node, (int, np.integer)):
                    raise ValidationError(f"node index must be an integer, got {node!r}")
                if not 0 <= node < self.n:
                    raise ValidationError(f"node index {node} out of range for n={self.n}")
            if u == v:
                raise ValidationError(f"self-loop on node {u} is not allowed")
            w = float(w)
            if not math.isfinite(w) or w <= 0.0:
                raise ValidationError(f"edge ({u}, {v}) has nonpositive or non-finite weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValidationError(f"duplicate edge {key}")
            seen.add(key)
            clean.append((int(key[0]), int(key[1]), w))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(clean))

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = a[v, u] = w
        return a

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Relabel node ``i`` as ``perm[i]``.

        If ``P`` is :func:`permutation_matrix` of ``perm`` then the adjacency
        of the result is ``P @ A @ P.T``.
        """
        perm = _check_perm(perm, self.n)
        return Graph(self.n, tuple((int(perm[u]), int(perm[v]), w) for u, v, w in self.edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u, v, w] for u, v, w in self.edges]}


def _check_perm(perm, n):
    perm = np.asarray(perm, dtype=int)
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        raise ValueError(f"not a permutation of range({n}): {perm!r}")
    return perm


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix ``P`` with ``(P @ x)[perm[i]] == x[i]``."""
    perm = np.asarray(perm, dtype=int)
    n = len(perm)
    p = np.zeros((n, n))
    p[perm, np.arange(n)] = 1.0
    return p


def from_adjacency(a) -> Graph:
    """Build a :class:`Graph` from a dense symmetric adjacency matrix."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"adjacency must be square, got shape {a.shape}")
    if not np.allclose(a, a.T, atol=1e-12, rtol=0.0):
        raise ValidationError("adjacency must be symmetric")
    if np.any(np.diag(a) != 0.0):
        raise ValidationError("adjacency must have a zero diagonal (self-loops are added internally)")
    if np.any(a < 0.0) or not np.all(np.isfinite(a)):
        raise ValidationError("adjacency entries must be finite and nonnegative")
    iu, iv = np.nonzero(np.triu(a, 1))
    return Graph(a.shape[0], tuple((int(u), int(v), float(a[u, v])) for u, v in zip(iu, iv)))


def normalized_adjacency(g: Graph) -> np.ndarray:
    """Return ``D^-1/2 (I + A) D^-1/2`` where ``D`` is the degree matrix of ``I + A``."""
    a_tilde = g.adjacency() + np.eye(g.n)
    d_inv_sqrt = 1.0 / np.sqrt(a_tilde.sum(axis=1))
    a_hat = d_inv_sqrt[:, None] * a_tilde * d_inv_sqrt[None, :]
    return 0.5 * (a_hat + a_hat.T)


# -- parsing ---------------------------------------------------------------


def _parse_json_obj(obj, source=None) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj:
        raise ParseError("expected an object with fields 'n' and 'edges'", source=source)
    edges = obj.get("edges", [])
    if not isinstance(edges, list):
        raise ParseError("'edges' must be an array", source=source)
    for e in edges:
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise ParseError(f"edge must be [u, v] or [u, v, w], got {e!r}", source=source)
    return Graph(obj["n"], tuple(tuple(e) for e in edges))


def _parse_edgelist(text: str, source=None) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if len(parts) != 1:
                    raise ValueError
                n = int(parts[0])
                continue
            if len(parts) not in (2, 3):
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise ParseError(f"cannot parse line {raw.rstrip()!r}", line=lineno, source=source) from None
        edges.append((u, v, w))
    if n is None:
        raise ParseError("missing node count line", source=source)
    return Graph(n, tuple(edges))


def parse_graph(data, format: str = "json", source=None) -> Graph:
    """Parse one graph from ``bytes`` or ``str`` in ``json`` or ``edgelist`` format."""
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}", source=source) from None
    if format == "json":
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=exc.lineno, source=source) from None
        return _parse_json_obj(obj, source=source)
    if format == "edgelist":
        return _parse_edgelist(data, source=source)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def parse_jsonl(data, source=None) -> list[Graph]:
    """Parse a JSON-lines stream with one graph object per line."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    graphs = []
    for lineno, line in enumerate(io.StringIO(data), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, line=lineno, source=source) from None
        graphs.append(_parse_json_obj(obj, source=f"{source}:{lineno}" if source else None))
    return graphs


def guess_format(path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".json", ".jsonl"):
        return "json"
    return "edgelist"


def load_graph(path, format: str | None = None) -> Graph:
    path = Path(path)
    return parse_graph(path.read_bytes(), format or guess_format(path), source=str(path))


def dump_graph(g: Graph, path) -> None:
    Path(path).write_text(json.dumps(g.to_json()) + "\n")


def iter_graph_paths(directory) -> Iterable[Path]:
    """Graph files in ``directory`` in sorted (deterministic) order."""
    exts = {".json", ".edgelist", ".txt", ".el"}
    return sorted(p for p in Path(directory).iterdir() if p.is_file() and p.suffix.lower() in exts)
