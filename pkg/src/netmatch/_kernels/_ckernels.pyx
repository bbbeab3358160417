# Compiled kernels. Must stay result-identical to _pykernels.py.
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

cdef i64 INF = 0x7FFFFFFFFFFFFFFF


def hopcroft_karp(const i64[::1] indptr, const i64[::1] indices,
                  i64[::1] pair_left, i64[::1] pair_right):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] dist = np.empty(n, dtype=np.int64)
    cdef i64[::1] ptr = np.empty(n, dtype=np.int64)
    cdef i64[::1] queue = np.empty(n, dtype=np.int64)
    cdef i64[::1] stack = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t head, tail, top, s
    cdef i64 u, v, w, x, y, k, du, limit, root, end
    cdef bint pushed, done
    cdef i64 augmented = 0

    while True:
        tail = 0
        for u in range(n):
            if pair_left[u] == -1:
                dist[u] = 0
                queue[tail] = u
                tail += 1
            else:
                dist[u] = INF
        limit = INF
        head = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if du >= limit:
                continue
            for k in range(indptr[u], indptr[u + 1]):
                w = pair_right[indices[k]]
                if w == -1:
                    if limit == INF:
                        limit = du + 1
                elif dist[w] == INF:
                    dist[w] = du + 1
                    queue[tail] = w
                    tail += 1
        if limit == INF:
            break

        for u in range(n):
            ptr[u] = indptr[u]
        for root in range(n):
            if pair_left[root] != -1:
                continue
            top = 0
            stack[0] = root
            while top >= 0:
                u = stack[top]
                end = indptr[u + 1]
                pushed = False
                done = False
                while ptr[u] < end:
                    v = indices[ptr[u]]
                    w = pair_right[v]
                    if w == -1:
                        if dist[u] + 1 == limit:
                            for s in range(top, -1, -1):
                                x = stack[s]
                                y = indices[ptr[x]]
                                pair_left[x] = y
                                pair_right[y] = x
                            augmented += 1
                            done = True
                            break
                    elif dist[w] == dist[u] + 1:
                        top += 1
                        stack[top] = w
                        pushed = True
                        break
                    ptr[u] += 1
                if done:
                    break
                if not pushed:
                    dist[u] = INF
                    top -= 1
                    if top >= 0:
                        ptr[stack[top]] += 1
    return augmented


def triangles_per_node(const i64[::1] indptr, const i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    cdef i64[::1] tri = out
    cdef i64 u, v, a, b, ea, eb, k, x, y
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if v <= u:
                continue
            # merge-intersect the sorted tails above v
            a = indptr[u]
            ea = indptr[u + 1]
            b = indptr[v]
            eb = indptr[v + 1]
            while a < ea and indices[a] <= v:
                a += 1
            while b < eb and indices[b] <= v:
                b += 1
            while a < ea and b < eb:
                x = indices[a]
                y = indices[b]
                if x < y:
                    a += 1
                elif y < x:
                    b += 1
                else:
                    tri[u] += 1
                    tri[v] += 1
                    tri[x] += 1
                    a += 1
                    b += 1
    return out


cdef inline i64 _find(i64[::1] parent, i64 x) noexcept:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def alternating_classes(const i64[::1] indptr, const i64[::1] indices,
                        const i64[::1] pair_left, const i64[::1] pair_right):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[::1] parent = np.arange(n, dtype=np.int64)
    cdef i64[::1] queue = np.empty(n, dtype=np.int64)
    cdef cnp.uint8_t[::1] reached = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t head = 0, tail = 0
    cdef i64 u, v, w, k, a, b, r, next_label
    for v in range(n):
        if pair_right[v] == -1:
            reached[v] = 1
            queue[tail] = v
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            w = pair_left[u]
            if w == -1:
                raise ValueError("matching is not maximum: augmenting path found")
            if not reached[w]:
                reached[w] = 1
                queue[tail] = w
                tail += 1
            a = _find(parent, v)
            b = _find(parent, w)
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b

    out = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] labels = out
    cdef i64[::1] root_label = np.full(n, -1, dtype=np.int64)
    next_label = 0
    for v in range(n):
        if reached[v]:
            r = _find(parent, v)
            if root_label[r] == -1:
                root_label[r] = next_label
                next_label += 1
            labels[v] = root_label[r]
    return out
