# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled kernels; same steps as ``_dhar_py``.

Chips are 64-bit. Callers only dispatch here after bounding every
intermediate value well below 2**62 (see ``kernels``).
"""

import numpy as np
from libc.string cimport memcpy


cdef void _reduce(long long[:, ::1] adj, long long[::1] dist, long long maxd, Py_ssize_t q,
                  long long[::1] d, long long[::1] script, long long[::1] into,
                  unsigned char[::1] burnt) noexcept nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t u, w
    cdef long long k, need, gain, m, cross, times, t
    cdef bint changed

    # outermost layer first: firing the ball {dist < k} only feeds layer k
    k = maxd
    while k > 0:
        need = 0
        for u in range(n):
            if dist[u] == k and d[u] < 0:
                gain = 0
                for w in range(n):
                    if dist[w] < k:
                        gain += adj[u, w]
                # cdivision is off, so // floors like Python
                m = (gain - d[u] - 1) // gain
                if m > need:
                    need = m
        if need:
            for u in range(n):
                cross = 0
                for w in range(n):
                    if (dist[w] < k) != (dist[u] < k):
                        cross += adj[u, w]
                if dist[u] < k:
                    script[u] += need
                    d[u] -= need * cross
                else:
                    d[u] += need * cross
        k -= 1

    while True:
        for u in range(n):
            burnt[u] = 0
            into[u] = adj[q, u]
        burnt[q] = 1
        changed = True
        while changed:
            changed = False
            for u in range(n):
                if not burnt[u] and d[u] < into[u]:
                    burnt[u] = 1
                    changed = True
                    for w in range(n):
                        into[w] += adj[w, u]
        times = -1
        for u in range(n):
            if not burnt[u] and into[u] > 0:
                t = d[u] // into[u]
                if times < 0 or t < times:
                    times = t
        if times < 0:
            return
        for u in range(n):
            if burnt[u]:
                for w in range(n):
                    if not burnt[w]:
                        d[u] += times * adj[u, w]
            else:
                script[u] += times
                d[u] -= times * into[u]


cdef long long _maxd(long long[::1] dist):
    cdef long long m = 0
    cdef Py_ssize_t u
    for u in range(dist.shape[0]):
        if dist[u] > m:
            m = dist[u]
    return m


def reduce_chips(adj_in, dist_in, chips_in, Py_ssize_t q):
    cdef long long[:, ::1] adj = np.ascontiguousarray(adj_in, dtype=np.int64)
    cdef long long[::1] dist = np.ascontiguousarray(dist_in, dtype=np.int64)
    n = len(chips_in)
    d_arr = np.array(chips_in, dtype=np.int64)
    s_arr = np.zeros(n, dtype=np.int64)
    _reduce(adj, dist, _maxd(dist), q, d_arr, s_arr, np.zeros(n, dtype=np.int64),
            np.zeros(n, dtype=np.uint8))
    return [int(x) for x in d_arr], [int(x) for x in s_arr]


def rank_levels(adj_in, dist_in, chips_in, Py_ssize_t q):
    """Rank by breadth-first descent over reduced classes ``D - E``."""
    cdef long long[:, ::1] adj = np.ascontiguousarray(adj_in, dtype=np.int64)
    cdef long long[::1] dist = np.ascontiguousarray(dist_in, dtype=np.int64)
    cdef Py_ssize_t n = len(chips_in)
    cdef long long maxd = _maxd(dist)
    work_arr = np.array(chips_in, dtype=np.int64)
    cdef long long[::1] work = work_arr
    cdef long long[::1] script = np.zeros(n, dtype=np.int64)
    cdef long long[::1] into = np.zeros(n, dtype=np.int64)
    cdef unsigned char[::1] burnt = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t v
    cdef Py_ssize_t nbytes = n * sizeof(long long)
    cdef const char* src
    cdef long long level = 0

    _reduce(adj, dist, maxd, q, work, script, into, burnt)
    if work[q] < 0:
        return -1
    frontier = [work_arr.tobytes()]
    while True:
        seen = set()
        nxt = []
        for key in frontier:
            src = key
            for v in range(n):
                memcpy(&work[0], src, nbytes)
                work[v] -= 1
                _reduce(adj, dist, maxd, q, work, script, into, burnt)
                if work[q] < 0:
                    return level
                k2 = work_arr.tobytes()
                if k2 not in seen:
                    seen.add(k2)
                    nxt.append(k2)
        frontier = nxt
        level += 1
