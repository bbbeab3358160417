"""Maximum matching on the bipartite lift and the unmatched-node metric.

The lift of an undirected graph has an arc ``i+ -> j-`` for every adjacency
pair. Nodes of the right copy left uncovered by a maximum matching are the
driver (equivalently observer) nodes; their number is ``n`` minus the
structural rank of the adjacency pattern.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import BipartiteLift, Graph, build_graph


class RankCheckRefused(ValueError):
    """The graph is too large for a dense numeric rank computation."""


@dataclass(frozen=True)
class MatchingResult:
    """A maximum matching of the lift.

    ``pair_of_left[i]`` is the right node matched to ``i+`` (or -1), and
    ``pair_of_right[j]`` the left node matched to ``j-`` (or -1).
    """

    pair_of_left: np.ndarray
    pair_of_right: np.ndarray

    @property
    def n(self):
        return len(self.pair_of_left)

    @property
    def matching_size(self):
        return int(np.count_nonzero(self.pair_of_left >= 0))

    @property
    def unmatched_right(self):
        return tuple(np.flatnonzero(self.pair_of_right < 0).tolist())

    @property
    def unmatched_count(self):
        return self.n - self.matching_size

    def arcs(self):
        return [(i, int(j)) for i, j in enumerate(self.pair_of_left) if j >= 0]


@dataclass(frozen=True)
class DilationSet:
    """Classes of right nodes that are unmatched in some maximum matching.

    ``class_deficiency[k]`` is how many nodes of ``classes[k]`` every
    maximum matching leaves unmatched.
    """

    classes: tuple
    class_deficiency: tuple

    def __len__(self):
        return len(self.classes)

    def nodes(self):
        return frozenset(v for c in self.classes for v in c)


def _as_graph(obj):
    if isinstance(obj, Graph):
        return obj
    if isinstance(obj, BipartiteLift):
        # a lift of an undirected graph is symmetric; recover the graph
        return build_graph(obj.arcs, obj.n)
    raise TypeError(f"expected Graph or BipartiteLift, got {type(obj).__name__}")


def _empty_pairs(n):
    return np.full(n, -1, dtype=np.int64), np.full(n, -1, dtype=np.int64)


def max_matching(g, warm_start=None):
    """Hopcroft-Karp maximum matching on the lift of ``g``.

    ``g`` may be a :class:`Graph` or its :class:`BipartiteLift`. With no
    warm start the result is canonical: left nodes are scanned in ascending
    id order, neighbors in ascending order. ``warm_start`` may be any valid
    (not necessarily maximum) matching on the same lift, which is then
    extended by augmenting paths.
    """
    g = _as_graph(g)
    if warm_start is None:
        pl, pr = _empty_pairs(g.n)
    else:
        pl = np.array(warm_start.pair_of_left, dtype=np.int64)
        pr = np.array(warm_start.pair_of_right, dtype=np.int64)
        if len(pl) != g.n:
            raise ValueError("warm start matching has the wrong size")
    _kernels.hopcroft_karp(g.indptr, g.indices, pl, pr)
    pl.setflags(write=False)
    pr.setflags(write=False)
    return MatchingResult(pl, pr)


def unmatched_count(g):
    """Number of driver/observer nodes: ``n - |maximum matching|``."""
    return max_matching(g).unmatched_count


def find_augmenting_path(g, m):
    """Search every free left node for an augmenting path.

    Returns the path as a list of arcs ``(left, right)`` alternating
    free/matched, or ``None`` if the matching is maximum. Independent of
    the kernels; used as a maximality certificate.
    """
    g = _as_graph(g)
    adj = g.adjacency
    pl = m.pair_of_left.tolist()
    pr = m.pair_of_right.tolist()
    for root in range(g.n):
        if pl[root] != -1:
            continue
        # BFS over left nodes; parent maps right node -> left node it was reached from
        parent = {}
        queue = [root]
        seen_left = {root}
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj[u]:
                if v in parent:
                    continue
                parent[v] = u
                w = pr[v]
                if w == -1:
                    path = []
                    while True:
                        x = parent[v]
                        path.append((x, v))
                        if x == root:
                            return path[::-1]
                        v = pl[x]
                        path.append((x, v))
                        # matched arc is traversed backward; continue from the right node
                elif w not in seen_left:
                    seen_left.add(w)
                    queue.append(w)
    return None


def dulmage_mendelsohn(g, m=None):
    """Dilation classes: the underdetermined block of the DM decomposition.

    A right node belongs to a class iff it is reachable from some free
    right node by an alternating path, equivalently iff some maximum
    matching leaves it unmatched. Classes are the connected groups of
    that reachability structure, ordered by smallest member.

    Raises:
        ValueError: ``m`` is not a maximum matching.
    """
    g = _as_graph(g)
    if m is None:
        m = max_matching(g)
    labels = _kernels.alternating_classes(g.indptr, g.indices, m.pair_of_left, m.pair_of_right)
    k = int(labels.max()) + 1 if len(labels) else 0
    if k <= 0:
        return DilationSet((), ())
    free = m.pair_of_right < 0
    order = np.argsort(labels, kind="stable")
    bounds = np.searchsorted(labels[order], np.arange(k + 1))
    classes = []
    deficiency = []
    for c in range(k):
        members = order[bounds[c]:bounds[c + 1]]
        classes.append(tuple(members.tolist()))
        deficiency.append(int(free[members].sum()))
    return DilationSet(tuple(classes), tuple(deficiency))


@dataclass(frozen=True)
class RankCheckReport:
    agrees: bool
    unmatched_count: int
    ranks: tuple
    rank_deficits: tuple


def generic_rank_check(g, trials=10, seed=None, max_nodes=50, rtol=1e-8):
    """Compare ``unmatched_count`` with ``n - rank`` of random numeric realizations.

    Each trial puts an independent uniform ``[0.5, 1.5]`` weight on every
    nonzero position of the adjacency pattern (both ``A[i, j]`` and
    ``A[j, i]``) and counts singular values above ``rtol * sigma_max``.

    Raises:
        RankCheckRefused: ``g.n > max_nodes``.
    """
    g = _as_graph(g)
    if g.n > max_nodes:
        raise RankCheckRefused(f"n={g.n} exceeds the dense rank bound {max_nodes}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    expected = unmatched_count(g)
    rows = np.repeat(np.arange(g.n), g.degrees)
    cols = np.asarray(g.indices)
    ranks = []
    for _ in range(trials):
        a = np.zeros((g.n, g.n))
        a[rows, cols] = rng.uniform(0.5, 1.5, size=len(cols))
        if g.n == 0 or not a.any():
            ranks.append(0)
            continue
        s = np.linalg.svd(a, compute_uv=False)
        ranks.append(int(np.count_nonzero(s > rtol * s[0])))
    deficits = tuple(g.n - r for r in ranks)
    return RankCheckReport(all(d == expected for d in deficits), expected, tuple(ranks), deficits)
