"""Undirected weighted graphs, generator families, and graph JSON files.

Everything is dense: the target scale is a few hundred vertices, where the
eigendecomposition downstream dominates the cost and sparse storage buys
nothing.  Graphs are immutable after construction; every generator either
returns a connected graph or raises.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import GenerationError, ParameterError

#: default sensor-graph connection radius (unit square).
SENSOR_RADIUS = 0.15
#: placement retries before giving up on a connected sensor graph.
SENSOR_ATTEMPTS = 64


@dataclass(frozen=True)
class Graph:
    """Symmetric nonnegatively weighted graph on ``n`` vertices.

    ``weights`` is the dense n-by-n adjacency matrix W; it must be exactly
    symmetric with a zero diagonal.  An edge exists iff its weight is
    strictly positive.
    """

    n: int
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.n, self.n):
            raise ParameterError(f"weight matrix shape {w.shape} does not match n={self.n}")
        if self.n < 1:
            raise ParameterError("graph needs at least one vertex")
        if not np.all(np.isfinite(w)):
            raise ParameterError("weights must be finite")
        if not np.array_equal(w, w.T):
            raise ParameterError("weight matrix must be exactly symmetric")
        if np.any(np.diag(w) != 0.0):
            raise ParameterError("weight matrix must have a zero diagonal")
        if np.any(w < 0.0):
            raise ParameterError("weights must be nonnegative")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def degrees(self) -> np.ndarray:
        """Vertex degrees d_i = sum_j w_ij."""
        return self.weights.sum(axis=1)

    def degree_matrix(self) -> np.ndarray:
        return np.diag(self.degrees())

    def laplacian(self) -> np.ndarray:
        """Combinatorial Laplacian L = D - W."""
        return self.degree_matrix() - self.weights

    def edge_count(self) -> int:
        return int(np.count_nonzero(np.triu(self.weights) > 0.0))

    def is_connected(self) -> bool:
        """Breadth-first search over strictly positive weights."""
        return _connected(self.weights)


def _connected(w: np.ndarray) -> bool:
    n = w.shape[0]
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for u in np.nonzero(w[v] > 0.0)[0]:
            if not seen[u]:
                seen[u] = True
                stack.append(int(u))
    return bool(seen.all())


def validate_generating_vector(c: np.ndarray) -> np.ndarray:
    """Check the circulant generating-vector contract: c_0 = 0, c_{n-k} = c_k.

    Returns the vector as a float array.  Raises ParameterError on violation.
    """
    c = np.asarray(c, dtype=float)
    if c.ndim != 1 or c.size < 2:
        raise ParameterError("generating vector must be 1-D with length >= 2")
    if not np.all(np.isfinite(c)):
        raise ParameterError("generating vector must be finite")
    if c[0] != 0.0:
        raise ParameterError("generating vector must have c_0 = 0")
    if np.any(c < 0.0):
        raise ParameterError("generating vector must be nonnegative")
    n = c.size
    for k in range(1, n):
        if c[k] != c[n - k]:
            raise ParameterError(f"generating vector asymmetric: c[{k}] != c[{n - k}]")
    return c


def circulant_graph(c) -> Graph:
    """Graph whose adjacency matrix is the circulant generated by ``c``."""
    c = validate_generating_vector(c)
    n = c.size
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    g = Graph(n, c[idx])
    if not g.is_connected():
        raise ParameterError("generating vector yields a disconnected graph")
    return g


def ring_graph(n: int) -> Graph:
    """Cycle on n vertices: circulant generated by (0, 1, 0, ..., 0, 1)."""
    if n < 2:
        raise ParameterError("ring graph needs n >= 2")
    c = np.zeros(n)
    c[1] = 1.0
    c[n - 1] = 1.0
    return circulant_graph(c)


def complete_graph(n: int) -> Graph:
    """Fully connected graph: circulant generated by (0, 1, ..., 1)."""
    if n < 2:
        raise ParameterError("complete graph needs n >= 2")
    c = np.ones(n)
    c[0] = 0.0
    return circulant_graph(c)


def path_graph(n: int) -> Graph:
    """Path on n vertices (tridiagonal adjacency)."""
    if n < 2:
        raise ParameterError("path graph needs n >= 2")
    w = np.zeros((n, n))
    i = np.arange(n - 1)
    w[i, i + 1] = 1.0
    w[i + 1, i] = 1.0
    return Graph(n, w)


def complete_bipartite_graph(p: int, q: int) -> Graph:
    """Complete bipartite graph on parts of size p and q."""
    if p < 1 or q < 1:
        raise ParameterError("complete bipartite graph needs p >= 1 and q >= 1")
    n = p + q
    w = np.zeros((n, n))
    w[:p, p:] = 1.0
    w[p:, :p] = 1.0
    return Graph(n, w)


def generate(kind: str, n: int, *, p: int | None = None, q: int | None = None, c=None) -> Graph:
    """Dispatch to a named deterministic generator family.

    ``kind`` is one of ``ring``, ``path``, ``complete``,
    ``complete_bipartite`` (requires p, q with p + q = n), or ``circulant``
    (requires a generating vector ``c`` of length n).
    """
    if n < 2:
        raise ParameterError("generators need n >= 2")
    if kind == "ring":
        return ring_graph(n)
    if kind == "path":
        return path_graph(n)
    if kind == "complete":
        return complete_graph(n)
    if kind == "complete_bipartite":
        if p is None or q is None:
            raise ParameterError("complete_bipartite requires p and q")
        if p + q != n:
            raise ParameterError(f"complete_bipartite requires p + q = n, got {p}+{q} != {n}")
        return complete_bipartite_graph(p, q)
    if kind == "circulant":
        if c is None:
            raise ParameterError("circulant requires a generating vector")
        c = np.asarray(c, dtype=float)
        if c.size != n:
            raise ParameterError(f"generating vector length {c.size} != n = {n}")
        return circulant_graph(c)
    raise ParameterError(f"unknown graph kind {kind!r}")


def gen_sensor(
    n: int,
    radius: float = SENSOR_RADIUS,
    sigma: float | None = None,
    threshold: float | None = None,
    seed: int = 0,
    attempts: int = SENSOR_ATTEMPTS,
) -> Graph:
    """Random geometric graph in the unit square with Gaussian edge weights.

    Vertices are placed uniformly at random (PCG64 stream from ``seed``).
    Two vertices within ``radius`` of each other are joined with weight
    exp(-d^2 / (2 sigma^2)) provided that kernel value exceeds ``threshold``.
    Placement is retried until the graph is connected, up to ``attempts``
    times.  The result is a pure function of the arguments.

    Defaults: sigma = radius / sqrt(2) and threshold = the kernel value at
    distance ``radius``, so the threshold cuts exactly at the radius.
    """
    if n < 2:
        raise ParameterError("sensor graph needs n >= 2")
    if not 0.0 < radius <= np.sqrt(2.0):
        raise ParameterError("radius must lie in (0, sqrt(2)]")
    if sigma is None:
        sigma = radius / np.sqrt(2.0)
    if sigma <= 0.0:
        raise ParameterError("sigma must be positive")
    if threshold is None:
        threshold = float(np.exp(-(radius**2) / (2.0 * sigma**2)))
    if not 0.0 <= threshold < 1.0:
        raise ParameterError("threshold must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        pts = rng.uniform(0.0, 1.0, size=(n, 2))
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=-1))
        kernel = np.exp(-(dist**2) / (2.0 * sigma**2))
        w = np.where((dist <= radius) & (kernel > threshold), kernel, 0.0)
        np.fill_diagonal(w, 0.0)
        w = 0.5 * (w + w.T)  # fp-exact symmetry
        if _connected(w):
            return Graph(n, w)
    raise GenerationError(f"no connected placement found in {attempts} attempts")


def is_circulant(g: Graph, tol: float = 1e-9):
    """Return the generating vector if the adjacency matrix is circulant.

    The candidate vector is the first row of W; every entry must satisfy
    w_ij = c_{(j-i) mod n} within ``tol``.  Returns None otherwise.
    """
    n = g.n
    c = g.weights[0].copy()
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    if np.max(np.abs(g.weights - c[idx])) <= tol:
        return c
    return None


def is_regular(g: Graph, tol: float = 1e-9):
    """Return the common degree if all vertex degrees agree within ``tol``."""
    d = g.degrees()
    if d.max() - d.min() <= tol:
        return float(d.mean())
    return None


# --- graph JSON files -------------------------------------------------------
#
# Schema: {"n": <int>, "edges": [[i, j, w], ...]} with 0-based i < j and
# strictly positive finite w; edges sorted by (i, j).


def graph_to_dict(g: Graph) -> dict:
    ii, jj = np.nonzero(np.triu(g.weights) > 0.0)
    edges = [[int(i), int(j), float(g.weights[i, j])] for i, j in zip(ii, jj)]
    edges.sort(key=lambda e: (e[0], e[1]))
    return {"n": g.n, "edges": edges}


def graph_from_dict(d: dict) -> Graph:
    try:
        n = int(d["n"])
        edges = d["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed graph record: {exc}") from exc
    if n < 1:
        raise ParameterError("graph record must have n >= 1")
    w = np.zeros((n, n))
    seen = set()
    for e in edges:
        if len(e) != 3:
            raise ParameterError(f"edge record {e!r} must be [i, j, w]")
        i, j, wt = int(e[0]), int(e[1]), float(e[2])
        if not 0 <= i < n or not 0 <= j < n:
            raise ParameterError(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise ParameterError(f"self-loop at vertex {i}")
        if i > j:
            raise ParameterError(f"edge ({i}, {j}) must be listed with i < j")
        if (i, j) in seen:
            raise ParameterError(f"duplicate edge ({i}, {j})")
        if not np.isfinite(wt) or wt <= 0.0:
            raise ParameterError(f"edge ({i}, {j}) weight must be finite and positive")
        seen.add((i, j))
        w[i, j] = wt
        w[j, i] = wt
    return Graph(n, w)


def save_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_dict(g), fh, indent=1)
        fh.write("\n")


def load_graph(path) -> Graph:
    with open(path) as fh:
        return graph_from_dict(json.load(fh))
