"""Pure-Python kernels. Reference semantics for the compiled versions in ``_ckernels.pyx``.

All kernels take a symmetric CSR adjacency (``indptr``, ``indices``) with
sorted neighbor lists. Matching arrays use -1 for "unmatched" and are
updated in place.
"""
import numpy as np

_INF = np.iinfo(np.int64).max


def hopcroft_karp(indptr, indices, pair_left, pair_right):
    """Grow the matching in ``pair_left``/``pair_right`` to maximum size.

    The lift has arcs ``u+ -> v-`` for every ``v`` in ``N(u)``. Any
    valid matching may be passed in as a warm start. Left nodes are
    scanned in ascending id order and arcs in ascending neighbor order,
    so the result is a deterministic function of the input.

    Returns the number of augmenting paths applied.
    """
    n = len(indptr) - 1
    ptr_ = indptr.tolist()
    adj = indices.tolist()
    pl = pair_left.tolist()
    pr = pair_right.tolist()
    dist = [_INF] * n
    ptr = [0] * n
    augmented = 0

    while True:
        queue = []
        for u in range(n):
            if pl[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        limit = _INF
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du = dist[u]
            if du >= limit:
                continue
            for k in range(ptr_[u], ptr_[u + 1]):
                w = pr[adj[k]]
                if w == -1:
                    if limit == _INF:
                        limit = du + 1
                elif dist[w] == _INF:
                    dist[w] = du + 1
                    queue.append(w)
        if limit == _INF:
            break

        for u in range(n):
            ptr[u] = ptr_[u]
        for root in range(n):
            if pl[root] != -1:
                continue
            stack = [root]
            while stack:
                u = stack[-1]
                end = ptr_[u + 1]
                pushed = False
                done = False
                while ptr[u] < end:
                    v = adj[ptr[u]]
                    w = pr[v]
                    if w == -1:
                        if dist[u] + 1 == limit:
                            for x in reversed(stack):
                                y = adj[ptr[x]]
                                pl[x] = y
                                pr[y] = x
                            augmented += 1
                            done = True
                            break
                    elif dist[w] == dist[u] + 1:
                        stack.append(w)
                        pushed = True
                        break
                    ptr[u] += 1
                if done:
                    break
                if not pushed:
                    dist[u] = _INF
                    stack.pop()
                    if stack:
                        ptr[stack[-1]] += 1

    pair_left[:] = pl
    pair_right[:] = pr
    return augmented


def triangles_per_node(indptr, indices):
    """Number of triangles through each node (exact)."""
    n = len(indptr) - 1
    ptr_ = indptr.tolist()
    adj = indices.tolist()
    nbrs = [set(adj[ptr_[u]:ptr_[u + 1]]) for u in range(n)]
    tri = [0] * n
    for u in range(n):
        nu = nbrs[u]
        for v in adj[ptr_[u]:ptr_[u + 1]]:
            if v <= u:
                continue
            for w in nu & nbrs[v]:
                if w > v:
                    tri[u] += 1
                    tri[v] += 1
                    tri[w] += 1
    return np.asarray(tri, dtype=np.int64)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def alternating_classes(indptr, indices, pair_left, pair_right):
    """Label right nodes reachable by alternating paths from free right nodes.

    From a reached right node ``v`` the walk takes any unmatched arc
    ``u+ -> v-`` backwards and then the matched arc ``u+ -> pair_left[u]``
    forward. Reached nodes are grouped by connectivity of the walk.

    Returns an int64 array: the class index of each right node, or -1 if
    it is matched in every maximum matching. Classes are numbered by
    their smallest member.

    Raises ``ValueError`` if an augmenting path exists (matching not maximum).
    """
    n = len(indptr) - 1
    ptr_ = indptr.tolist()
    adj = indices.tolist()
    pl = pair_left.tolist()
    pr = pair_right.tolist()
    reached = [False] * n
    parent = list(range(n))
    queue = [v for v in range(n) if pr[v] == -1]
    for v in queue:
        reached[v] = True
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for k in range(ptr_[v], ptr_[v + 1]):
            u = adj[k]
            w = pl[u]
            if w == -1:
                raise ValueError("matching is not maximum: augmenting path found")
            if not reached[w]:
                reached[w] = True
                queue.append(w)
            a = _find(parent, v)
            b = _find(parent, w)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b

    labels = [-1] * n
    root_label = {}
    for v in range(n):
        if reached[v]:
            r = _find(parent, v)
            if r not in root_label:
                root_label[r] = len(root_label)
            labels[v] = root_label[r]
    return np.asarray(labels, dtype=np.int64)
