"""Pure-Python reduction kernel.

Works on plain lists and Python ints, so it is exact for any chip size. The
compiled kernel in ``_dhar.pyx`` mirrors this file step for step.
"""


def reduce_chips(adj, dist, chips, q):
    """q-reduce ``chips`` on the multigraph with multiplicity matrix ``adj``.

    ``dist`` holds BFS distances from ``q``. Returns ``(reduced, script)``
    with ``reduced = chips - L @ script``.
    """
    n = len(chips)
    d = list(chips)
    script = [0] * n
    maxd = max(dist)

    # Firing the ball {dist < k} feeds layer k and nothing farther out, so
    # clearing debt from the outermost layer inward never undoes earlier work.
    for k in range(maxd, 0, -1):
        need = 0
        for u in range(n):
            if dist[u] == k and d[u] < 0:
                gain = 0
                for w in range(n):
                    if dist[w] < k:
                        gain += adj[u][w]
                m = (gain - d[u] - 1) // gain
                if m > need:
                    need = m
        if need:
            for u in range(n):
                cross = 0
                for w in range(n):
                    if (dist[w] < k) != (dist[u] < k):
                        cross += adj[u][w]
                if dist[u] < k:
                    script[u] += need
                    d[u] -= need * cross
                else:
                    d[u] += need * cross

    # Dhar burning; the unburnt set fires as many times as stays legal.
    while True:
        burnt = [False] * n
        burnt[q] = True
        into = list(adj[q])
        changed = True
        while changed:
            changed = False
            for u in range(n):
                if not burnt[u] and d[u] < into[u]:
                    burnt[u] = True
                    changed = True
                    for w in range(n):
                        into[w] += adj[w][u]
        times = -1
        for u in range(n):
            if not burnt[u] and into[u] > 0:
                t = d[u] // into[u]
                if times < 0 or t < times:
                    times = t
        if times < 0:
            return d, script
        for u in range(n):
            if burnt[u]:
                for w in range(n):
                    if not burnt[w]:
                        d[u] += times * adj[u][w]
            else:
                script[u] += times
                d[u] -= times * into[u]


def rank_levels(adj, dist, chips, q):
    """Rank by breadth-first descent over reduced classes ``D - E``.

    Level ``k`` holds the reduced forms of ``D - E`` for every effective
    ``E`` of degree ``k``; the rank is one less than the first level holding
    a class with no effective representative.
    """
    red, _ = reduce_chips(adj, dist, chips, q)
    if red[q] < 0:
        return -1
    frontier = [tuple(red)]
    level = 0
    while True:
        seen = set()
        for base in frontier:
            for v in range(len(base)):
                lowered = list(base)
                lowered[v] -= 1
                red, _ = reduce_chips(adj, dist, lowered, q)
                if red[q] < 0:
                    return level
                seen.add(tuple(red))
        frontier = sorted(seen)
        level += 1
