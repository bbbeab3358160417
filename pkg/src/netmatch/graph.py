"""Undirected simple graphs, the bipartite lift, and clustering metrics."""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels


class GraphInputError(ValueError):
    """Raised for malformed graph input (e.g. node id out of range)."""


class Graph:
    """Immutable undirected simple graph on nodes ``0..n-1``.

    Stored as a symmetric CSR adjacency with sorted neighbor lists.
    Build one with :func:`build_graph`; the constructor trusts its input.
    """

    def __init__(self, n, indptr, indices):
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def edge_count(self):
        return len(self.indices) // 2

    @cached_property
    def degrees(self):
        return np.diff(self.indptr)

    @cached_property
    def adjacency(self):
        """Per-node sorted neighbor lists, as tuples."""
        flat = self.indices.tolist()
        ptr = self.indptr.tolist()
        return tuple(tuple(flat[ptr[i]:ptr[i + 1]]) for i in range(self.n))

    def neighbors(self, i):
        return self.adjacency[i]

    def has_edge(self, u, v):
        row = self.indices[self.indptr[u]:self.indptr[u + 1]]
        k = np.searchsorted(row, v)
        return bool(k < len(row) and row[k] == v)

    def edges(self):
        """Edges as ``(u, v)`` pairs with ``u < v``, in lexicographic order."""
        return [(u, v) for u, row in enumerate(self.adjacency) for v in row if v > u]

    def with_edges(self, extra):
        """Return a new graph with ``extra`` edges added."""
        return build_graph(self.edges() + list(extra), self.n)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self):
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


def _simplify(edges, n):
    """Build a graph, also returning (self_loops_dropped, duplicates_dropped)."""
    n = int(n)
    if n < 0:
        raise GraphInputError(f"node count must be non-negative, got {n}")
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = arr[(arr < 0).any(axis=1) | (arr >= n).any(axis=1)][0]
        raise GraphInputError(f"edge ({bad[0]}, {bad[1]}) has a node id outside [0, {n})")
    loops = arr[:, 0] == arr[:, 1]
    arr = arr[~loops]
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keys = np.unique(lo * n + hi) if len(arr) else np.empty(0, dtype=np.int64)
    u, v = np.divmod(keys, n) if n else (keys, keys)
    dups = len(arr) - len(keys)

    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int64)
    counts = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(n, indptr, indices), int(loops.sum()), int(dups)


def build_graph(edges, n):
    """Build a simple undirected graph from node-id pairs.

    Self-loops are dropped and parallel edges (in either orientation)
    merged silently.

    Raises:
        GraphInputError: a node id lies outside ``[0, n)``.
    """
    return _simplify(edges, n)[0]


@dataclass(frozen=True)
class BipartiteLift:
    """Two copies of the node set; arc ``(i, j)`` means ``i+ -> j-``."""

    n: int
    arcs: frozenset

    @property
    def left(self):
        return range(self.n)

    @property
    def right(self):
        return range(self.n)


def bipartite_lift(g):
    """One arc ``i+ -> j-`` per ordered adjacency pair, so ``2 * edge_count`` arcs."""
    arcs = frozenset((u, v) for u, row in enumerate(g.adjacency) for v in row)
    return BipartiteLift(g.n, arcs)


@dataclass(frozen=True)
class ClusteringReport:
    global_transitivity: float
    mean_local: float
    triangle_count: int
    triplet_count: int


def triangles_per_node(g):
    return _kernels.triangles_per_node(g.indptr, g.indices)


def clustering(g):
    """Exact triangle/triplet counts, global transitivity and mean local clustering.

    Local clustering of a node with degree < 2 counts as 0 in the mean.
    """
    tri = triangles_per_node(g)
    deg = g.degrees.astype(np.int64)
    pairs = deg * (deg - 1) // 2
    triangles = int(tri.sum()) // 3
    triplets = int(pairs.sum())
    transitivity = 3.0 * triangles / triplets if triplets else 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        local = np.where(pairs > 0, tri / np.maximum(pairs, 1), 0.0)
    mean_local = float(local.mean()) if g.n else 0.0
    return ClusteringReport(transitivity, mean_local, triangles, triplets)


def transitivity(g):
    return clustering(g).global_transitivity


def clustering_reference_ba(n, m):
    """Degree-independent BA clustering estimate ``(m-1)/8 * ln(n)^2 / n``."""
    if n < 2 or m < 1:
        raise ValueError(f"need n >= 2 and m >= 1, got n={n}, m={m}")
    return (m - 1) / 8.0 * math.log(n) ** 2 / n


def clustering_reference_hk(n, m, m1, d):
    """HK clustering estimate ``4*m1/d`` plus the BA term.

    This is an approximation and can exceed 1 for small ``d``; it is not clamped.
    """
    if d == 0:
        raise ValueError("degree d must be >= 1")
    if d < 1 or not 0 <= m1 <= m:
        raise ValueError(f"need d >= 1 and 0 <= m1 <= m, got d={d}, m1={m1}, m={m}")
    return 4.0 * m1 / d + clustering_reference_ba(n, m)
