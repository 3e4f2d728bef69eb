"""Brute-force reference computations used across the test suite."""
import itertools

import numpy as np

from orbdiam.linalg import coords_to_indices, dot, indices_to_coords


def group_order(rep, limit=200_000):
    """Order of <generators> by closure over matrices encoded as integers."""
    F, n = rep.field, rep.n
    gens = rep.gen_arrays
    ident = np.eye(n, dtype=np.int64)

    def enc(stack):
        return coords_to_indices(F, stack.reshape(len(stack), n * n))

    seen = set(enc(ident[None]).tolist())
    frontier = ident[None]
    while len(frontier):
        new = []
        for g in gens:
            prod = dot(F, frontier.reshape(-1, n), g).reshape(-1, n, n)
            keys = enc(prod)
            _, first = np.unique(keys, return_index=True)
            for i in first:
                k = int(keys[i])
                if k not in seen:
                    seen.add(k)
                    new.append(prod[i])
        if len(seen) > limit:
            raise RuntimeError("group too large for the oracle")
        frontier = np.array(new).reshape(-1, n, n)
    return len(seen)


def naive_orbits(rep):
    """Orbits on nonzero vectors by pure-python BFS, as frozensets of indices."""
    F, n = rep.field, rep.n
    size = F.q**n
    coords = indices_to_coords(F, n, np.arange(size))
    images = [coords_to_indices(F, dot(F, coords, g)) for g in rep.gen_arrays]
    seen = [False] * size
    out = []
    for v in range(1, size):
        if seen[v]:
            continue
        orb, stack = {v}, [v]
        seen[v] = True
        while stack:
            u = stack.pop()
            for im in images:
                w = int(im[u])
                if not seen[w]:
                    seen[w] = True
                    orb.add(w)
                    stack.append(w)
        out.append(frozenset(orb))
    return out


def brute_rank(F, A):
    """Rank by counting the row space: log_q |span of rows|."""
    A = np.asarray(A, dtype=np.int64)
    m, n = A.shape
    span = set()
    for c in itertools.product(range(F.q), repeat=m):
        v = np.zeros(n, dtype=np.int64)
        for ci, row in zip(c, A):
            v = F.add(v, F.mul(ci, row))
        span.add(tuple(int(x) for x in np.atleast_1d(v)))
    r = 0
    while F.q**r < len(span):
        r += 1
    return r


def sumset_distance(F, n, S, target):
    """d(0, target) by repeated sumsets in pure python."""
    from orbdiam.orbits import add_indices
    reached, layer, d = {0}, {0}, 0
    while target not in reached:
        arr = np.array(sorted(layer), dtype=np.int64)
        nxt = set(add_indices(F, n, np.repeat(arr, len(S)), np.tile(S, len(arr))).tolist()) - reached
        if not nxt:
            return None
        reached |= nxt
        layer = nxt
        d += 1
    return d
