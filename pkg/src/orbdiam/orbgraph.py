"""Orbital-graph diameters of affine groups.

The orbital graph of the orbit O is the Cayley graph of (V, +) with
connection set S = O u -O, so d(0, b) is the least k with b a sum of k
elements of S and the graph diameter is the eccentricity of 0.
"""
from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .gf import FieldSpec
from .linalg import DEFAULT_SPACE_CAP, Vec, check_space, coords_to_indices, indices_to_coords
from .orbits import (
    OrbitData,
    OrbitPartition,
    add_indices,
    negate_indices,
    orbit_partition,
    perm_rank,
    sub_indices,
)
from .repfactory import GroupRep


class DisconnectedError(RuntimeError):
    pass


STRATEGIES = ("auto", "frontier", "bitset")


@dataclass
class DiameterEntry:
    orbit_ids: tuple
    rep_index: int
    size: int
    connection_size: int
    self_paired: bool
    diameter: int
    profile: list
    witness_index: int
    witness: Vec


@dataclass
class DiameterResult:
    descriptor: str
    n: int
    field: FieldSpec
    entries: list
    rank: int
    rank_undirected: int
    contains_scalars: bool
    partition: OrbitPartition | None = field(default=None, repr=False)

    @property
    def orbital_diameter(self) -> int:
        return max(e.diameter for e in self.entries)


def connection_set(rep: GroupRep, orbit: OrbitData) -> np.ndarray:
    neg = negate_indices(rep.field, rep.n, orbit.members)
    return np.union1d(orbit.members, neg)


# -- characteristic 2 bitsets ---------------------------------------------------------

_SWAP_MASKS = [np.uint64(m) for m in (
    0x5555555555555555, 0x3333333333333333, 0x0F0F0F0F0F0F0F0F,
    0x00FF00FF00FF00FF, 0x0000FFFF0000FFFF, 0x00000000FFFFFFFF)]


def _bit_xor_permute(words: np.ndarray, lo: int) -> np.ndarray:
    """Within each 64-bit word move bit b to bit b ^ lo."""
    x = words
    for j in range(6):
        if lo >> j & 1:
            s = np.uint64(1 << j)
            m = _SWAP_MASKS[j]
            x = ((x & m) << s) | ((x >> s) & m)
    return x


def _to_bitset(idx: np.ndarray, nwords: int) -> np.ndarray:
    words = np.zeros(nwords, dtype=np.uint64)
    np.bitwise_or.at(words, idx >> 6, np.left_shift(np.uint64(1), (idx & 63).astype(np.uint64)))
    return words


def _from_bitset(words: np.ndarray) -> np.ndarray:
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    return np.flatnonzero(bits).astype(np.int64)


def _sumset_bitset(frontier_words: np.ndarray, S: np.ndarray, block: int = 1 << 22) -> np.ndarray:
    """Bitset of frontier + S (XOR translates), grouped by the low six bits of S."""
    nwords = len(frontier_words)
    ar = np.arange(nwords, dtype=np.int64)
    out = np.zeros(nwords, dtype=np.uint64)
    lo_all = S & 63
    for lo in np.unique(lo_all):
        his = S[lo_all == lo] >> 6
        P = _bit_xor_permute(frontier_words, int(lo))
        step = max(1, block // nwords)
        for i in range(0, len(his), step):
            h = his[i:i + step]
            out |= np.bitwise_or.reduce(P[ar[None, :] ^ h[:, None]], axis=0)
    return out


def _bfs_levels(F: FieldSpec, n: int, S: np.ndarray, strategy: str, target: int | None = None):
    """Yield successive BFS levels (sorted index arrays) from 0 until exhaustion or ``target``."""
    size = F.q**n
    if strategy == "auto":
        strategy = "bitset" if F.p == 2 else "frontier"
    if strategy == "bitset" and F.p != 2:
        raise ValueError("bitset strategy needs characteristic 2")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    frontier = np.array([0], dtype=np.int64)
    yield frontier
    if target == 0:
        return
    if strategy == "bitset":
        nwords = max(1, size // 64)
        reached = _to_bitset(frontier, nwords)
        while True:
            if len(frontier) * len(S) < 8 * nwords * len(np.unique(S & 63)) or len(frontier) < 64:
                cand = np.unique((frontier[:, None] ^ S[None, :]).ravel())
                words = _to_bitset(cand, nwords)
            else:
                words = _sumset_bitset(_to_bitset(frontier, nwords), S)
            words &= ~reached
            reached |= words
            frontier = _from_bitset(words)
            if not len(frontier):
                return
            yield frontier
            if target is not None and _contains(frontier, target):
                return
    # push from the frontier, or pull into unvisited vertices when those are fewer
    level = np.full(size, -1, dtype=np.int16)
    level[0] = 0
    depth = 0
    chunk = max(1, (1 << 21) // max(1, len(S)))
    negS = negate_indices(F, n, S)
    while True:
        unvisited = np.flatnonzero(level < 0)
        parts = []
        if len(unvisited) < len(frontier):
            for i in range(0, len(unvisited), chunk):
                u = unvisited[i:i + chunk]
                src = add_indices(F, n, np.repeat(u, len(S)), np.tile(negS, len(u)))
                hit = (level[src] == depth).reshape(len(u), len(S)).any(axis=1)
                parts.append(u[hit])
        else:
            for i in range(0, len(frontier), chunk):
                f = frontier[i:i + chunk]
                cand = np.unique(add_indices(F, n, np.repeat(f, len(S)), np.tile(S, len(f))))
                parts.append(cand[level[cand] < 0])
        frontier = np.unique(np.concatenate(parts)) if parts else np.zeros(0, dtype=np.int64)
        depth += 1
        level[frontier] = depth
        if not len(frontier):
            return
        yield frontier
        if target is not None and _contains(frontier, target):
            return


def _contains(sorted_arr: np.ndarray, x: int) -> bool:
    i = np.searchsorted(sorted_arr, x)
    return bool(i < len(sorted_arr) and sorted_arr[i] == x)


def orbital_diameter(rep: GroupRep, orbit: OrbitData, strategy: str = "auto",
                     cap: int | None = DEFAULT_SPACE_CAP, partner: int | None = None) -> DiameterEntry:
    F, n = rep.field, rep.n
    size = check_space(F, n, cap)
    S = connection_set(rep, orbit)
    profile = []
    last = None
    for level in _bfs_levels(F, n, S, strategy):
        profile.append(len(level))
        last = level
    if sum(profile) != size:
        raise DisconnectedError(
            f"orbital graph of orbit {orbit.rep_index} reaches {sum(profile)} of {size} vectors; "
            "the action is not irreducible")
    ids = (orbit.orbit_id,) if partner is None or partner == orbit.orbit_id else (orbit.orbit_id, partner)
    w = int(last[0])
    return DiameterEntry(ids, orbit.rep_index, orbit.size, len(S), orbit.negation == orbit.orbit_id,
                         len(profile) - 1, profile, w, Vec(F, indices_to_coords(F, n, w)))


def orbdiam_all(rep: GroupRep, strategy: str = "auto", cap: int | None = DEFAULT_SPACE_CAP,
                jobs: int = 1, partition: OrbitPartition | None = None) -> DiameterResult:
    part = partition or orbit_partition(rep, cap)
    classes = part.classes()

    def job(oid):
        o = part.orbits[oid]
        return orbital_diameter(rep, o, strategy, cap, partner=o.negation)

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            entries = list(ex.map(job, classes))
    else:
        entries = [job(c) for c in classes]
    return DiameterResult(rep.descriptor, rep.n, rep.field, entries, perm_rank(part),
                          perm_rank(part, "undirected"), rep.contains_scalars, part)


def _target_index(rep: GroupRep, target) -> int:
    coords = target.coords if isinstance(target, Vec) else np.asarray(target, dtype=np.int64)
    if coords.shape != (rep.n,):
        raise ValueError(f"target of length {len(coords)}, expected {rep.n}")
    return int(coords_to_indices(rep.field, coords))


def distance_to(rep: GroupRep, orbit: OrbitData, target, strategy: str = "auto",
                cap: int | None = DEFAULT_SPACE_CAP) -> int:
    """Exact d(0, target); the search stops at the target's level."""
    F, n = rep.field, rep.n
    check_space(F, n, cap)
    t = _target_index(rep, target)
    if t == 0:
        return 0
    S = connection_set(rep, orbit)
    for d, level in enumerate(_bfs_levels(F, n, S, strategy, target=t)):
        if _contains(level, t):
            return d
    raise DisconnectedError("target not reachable; the action is not irreducible")


def two_step_cover(rep: GroupRep, orbit: OrbitData, targets) -> list:
    """For each target t: is t in S or t - s in S for some s in S = O u -O?  No ambient structure needed."""
    F, n = rep.field, rep.n
    S = connection_set(rep, orbit)
    out = []
    for target in targets:
        t = _target_index(rep, target)
        if _contains(S, t):
            out.append(True)
            continue
        diff = sub_indices(F, n, np.full(len(S), t, dtype=np.int64), S)
        pos = np.clip(np.searchsorted(S, diff), 0, len(S) - 1)
        out.append(bool((S[pos] == diff).any()))
    return out


def profile_csv(result: DiameterResult) -> str:
    buf = io.StringIO()
    buf.write("rep_index,distance,count\n")
    for e in result.entries:
        for d, c in enumerate(e.profile):
            buf.write(f"{e.rep_index},{d},{c}\n")
    return buf.getvalue()


def all_pairs_diameter(rep: GroupRep, orbit: OrbitData) -> int:
    """Brute-force diameter by BFS from every vertex (an oracle for tiny spaces)."""
    F, n = rep.field, rep.n
    size = F.q**n
    S = connection_set(rep, orbit)
    coords = indices_to_coords(F, n, np.arange(size))
    s_coords = indices_to_coords(F, n, S)
    adj = [coords_to_indices(F, F.add(coords[v][None, :], s_coords)) for v in range(size)]
    best = 0
    for src in range(size):
        dist = np.full(size, -1)
        dist[src] = 0
        queue = [src]
        for u in queue:
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(int(w))
        if (dist < 0).any():
            raise DisconnectedError("graph not connected")
        best = max(best, int(dist.max()))
    return best
