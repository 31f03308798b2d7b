"""Independent reference data for the test-suite."""

from math import gcd


def _union(nodes, edges):
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    classes = {}
    for v in nodes:
        classes.setdefault(find(v), []).append(v)
    return sorted((sorted(c) for c in classes.values()), key=lambda c: c[0])


def figure_classes(q: int, n: int):
    """Classes implied by the gcd-labelled edges of the published classification figures.

    Nodes are field elements as integers (GF(4): 2 = w, 3 = w^2).
    """
    if q == 3:
        nodes, edges = [1, 2], ([(1, 2)] if gcd(n, 2) == 1 else [])
    elif q == 4:
        nodes, edges = [1, 2, 3], [(2, 3)] + ([(1, 2)] if gcd(n, 3) == 1 else [])
    elif q == 5:
        nodes, edges = [1, 2, 3, 4], [(2, 3)]
        if gcd(n, 2) == 1:
            edges += [(1, 2), (2, 4)]
        if gcd(n, 4) in (1, 2):
            edges.append((4, 1))
    elif q == 7:
        nodes, edges = [1, 2, 3, 4, 5, 6], [(2, 4), (3, 5)]
        if gcd(n, 3) == 1:
            edges += [(1, 2), (6, 3)]
        if gcd(n, 2) == 1:
            edges += [(1, 6), (2, 3)]
        if gcd(n, 6) == 1:
            edges.append((1, 3))
    else:
        raise ValueError(q)
    return _union(nodes, edges)


def naive_distance(q: int, G, n: int) -> int:
    """Minimum nonzero weight over every message, computed with plain integer loops.

    Only works for prime q (arithmetic mod q); returns ``n + 1`` for the zero code.
    """
    import itertools

    rows = [list(map(int, r)) for r in G]
    best = n + 1
    for msg in itertools.product(range(q), repeat=len(rows)):
        if not any(msg):
            continue
        w = sum(1 for j in range(n) if sum(m * r[j] for m, r in zip(msg, rows)) % q)
        if 0 < w < best:
            best = w
    return best


def random_chain(rng, F, n: int, k1: int, k2: int):
    """Generator rows of random nested codes ``C2 <= C1`` of the given dimensions (or less)."""
    import numpy as np

    G1 = rng.integers(0, F.q, (k1, n))
    M = rng.integers(0, F.q, (k2, k1))
    return G1, F.matmul(M, G1) if k2 else np.zeros((0, n), dtype=np.int64)


def naive_field_distance(F, G, n: int) -> int:
    """Minimum nonzero weight over all ``q^k`` messages, for any field with a ``matmul``."""
    import itertools

    import numpy as np

    G = np.asarray(G, dtype=np.int64)
    if G.size == 0:
        return n + 1
    G = G.reshape(-1, n)
    msgs = np.array(list(itertools.product(range(F.q), repeat=G.shape[0])), dtype=np.int64)
    w = np.count_nonzero(F.matmul(msgs, G), axis=1)
    w = w[w > 0]
    return int(w.min()) if w.size else n + 1
