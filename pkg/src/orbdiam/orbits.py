"""Orbits of G0 on V \\ {0}, permutation rank and orbit invariants."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .gf import FieldSpec
from .linalg import (
    DEFAULT_SPACE_CAP,
    Vec,
    check_space,
    coords_to_indices,
    dot,
    indices_to_coords,
)
from .repfactory import GroupRep, RepError, form_value, quadratic_value


class OrbitError(ValueError):
    pass


# -- index-space action -------------------------------------------------------------

class IndexAction:
    """Applies the generators of a rep directly to arrays of VectorIndex values.

    In characteristic 2 vector addition is XOR on indices, so v g is the XOR
    of per-chunk lookup tables; otherwise images go through coordinates.
    """

    CHUNK_BITS = 12

    def __init__(self, rep: GroupRep):
        self.rep = rep
        self.F: FieldSpec = rep.field
        self.n = rep.n
        self.gens = rep.gen_arrays
        self.tables = None
        F = self.F
        if F.p == 2 and F.q**self.n < 2**62:
            per = max(1, self.CHUNK_BITS // F.k)
            self.chunks = [(s, min(per, self.n - s)) for s in range(0, self.n, per)]
            self.tables = []
            for g in self.gens:
                tabs = []
                for start, width in self.chunks:
                    local = indices_to_coords(F, width, np.arange(F.q**width, dtype=np.int64))
                    full = np.zeros((len(local), self.n), dtype=np.int64)
                    full[:, start:start + width] = local
                    tabs.append(coords_to_indices(F, dot(F, full, g)))
                self.tables.append(tabs)

    def image(self, gi: int, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        if self.tables is not None:
            out = np.zeros_like(idx)
            for (start, width), tab in zip(self.chunks, self.tables[gi]):
                shift = start * self.F.k
                mask = (1 << (width * self.F.k)) - 1
                out ^= tab[(idx >> shift) & mask]
            return out
        coords = indices_to_coords(self.F, self.n, idx)
        return coords_to_indices(self.F, dot(self.F, coords, self.gens[gi]))

    def images(self, idx: np.ndarray) -> np.ndarray:
        return np.concatenate([self.image(i, idx) for i in range(len(self.gens))])


class _IndexArith:
    """Digit-chunked addition and negation of VectorIndex arrays in odd characteristic.

    Coordinates are grouped into chunks of c digits with q^c <= 1024; a chunk
    sum is one lookup in a (q^c x q^c) table.
    """

    def __init__(self, F: FieldSpec, n: int):
        c = 1
        while c < n and F.q ** (c + 1) <= 1024:
            c += 1
        self.Q = F.q**c
        self.widths = [min(c, n - s) for s in range(0, n, c)]
        local = indices_to_coords(F, c, np.arange(self.Q, dtype=np.int64))
        self.add_tab = coords_to_indices(F, F.add(local[:, None, :], local[None, :, :]))
        self.neg_tab = coords_to_indices(F, F.neg_table[local])

    def _chunks(self, idx):
        for j in range(len(self.widths)):
            yield j, (idx // self.Q**j) % self.Q

    def add(self, a, b):
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for j, ca in self._chunks(a):
            cb = (b // self.Q**j) % self.Q
            out += self.add_tab[ca, cb] * self.Q**j
        return out

    def neg(self, a):
        out = np.zeros_like(a)
        for j, ca in self._chunks(a):
            out += self.neg_tab[ca] * self.Q**j
        return out


@functools.lru_cache(maxsize=64)
def _arith(F: FieldSpec, n: int) -> _IndexArith:
    return _IndexArith(F, n)


def negate_indices(F: FieldSpec, n: int, idx) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    if F.p == 2:
        return idx.copy()
    return _arith(F, n).neg(idx)


def add_indices(F: FieldSpec, n: int, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if F.p == 2:
        return a ^ b
    return _arith(F, n).add(a, b)


def sub_indices(F: FieldSpec, n: int, a, b) -> np.ndarray:
    return add_indices(F, n, a, negate_indices(F, n, b))


# -- data types -----------------------------------------------------------------------

@dataclass
class OrbitData:
    rep_index: int
    size: int
    members: np.ndarray
    representative: Vec
    orbit_id: int = 0
    negation: int | None = None   # id of -O; equal to orbit_id when self-paired
    invariants: dict = field(default_factory=dict)

    @property
    def self_paired(self) -> bool:
        return self.negation == self.orbit_id

    def __contains__(self, index: int) -> bool:
        i = np.searchsorted(self.members, index)
        return bool(i < len(self.members) and self.members[i] == index)

    def contains_many(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        pos = np.clip(np.searchsorted(self.members, idx), 0, len(self.members) - 1)
        return self.members[pos] == idx


@dataclass
class OrbitPartition:
    field: FieldSpec
    n: int
    orbits: list
    labels: np.ndarray | None = None

    @property
    def total(self) -> int:
        return sum(o.size for o in self.orbits)

    def check_total(self) -> bool:
        return self.total == self.field.q**self.n - 1

    def orbit_of_index(self, index: int) -> OrbitData:
        if self.labels is None:
            for o in self.orbits:
                if index in o:
                    return o
            raise KeyError(index)
        return self.orbits[int(self.labels[index])]

    def classes(self) -> list:
        """One orbit id per undirected orbital: self-paired orbits and the first of each pair."""
        return [o.orbit_id for o in self.orbits if o.negation >= o.orbit_id]


# -- enumeration ----------------------------------------------------------------------

def _closure(action: IndexAction, seed: int, visited: np.ndarray | None) -> np.ndarray:
    """Sorted member indices of the orbit of ``seed``.

    ``visited`` (a dense boolean map) is updated when given; otherwise sorted
    arrays and set differences are used, which needs no ambient structure.
    """
    frontier = np.array([seed], dtype=np.int64)
    if visited is not None:
        visited[seed] = True
        parts = [frontier]
        while len(frontier):
            img = np.unique(action.images(frontier))
            new = img[~visited[img]]
            visited[new] = True
            parts.append(new)
            frontier = new
        return np.sort(np.concatenate(parts))
    seen = frontier
    while len(frontier):
        img = np.unique(action.images(frontier))
        new = img[~np.isin(img, seen, assume_unique=True)]
        seen = np.union1d(seen, new)
        frontier = new
    return seen


def _nonzero_index(rep: GroupRep, v) -> int:
    if isinstance(v, Vec):
        if v.field != rep.field:
            raise OrbitError("vector over a different field")
        coords = v.coords
    else:
        coords = np.asarray(v, dtype=np.int64)
    if coords.shape != (rep.n,):
        raise OrbitError(f"vector of length {len(coords)}, expected {rep.n}")
    if not coords.any():
        raise OrbitError("the zero vector is its own orbit")
    return int(coords_to_indices(rep.field, coords))


def orbit_of(rep: GroupRep, v, dense: bool | None = None, cap: int | None = DEFAULT_SPACE_CAP) -> OrbitData:
    """Orbit of v.  Dense mode keeps a q^n visited map; orbit-only mode does not (and ignores the cap)."""
    F, n = rep.field, rep.n
    seed = _nonzero_index(rep, v)
    size = F.q**n
    if dense is None:
        dense = cap is None or size <= cap
    if dense:
        check_space(F, n, cap)
        members = _closure(IndexAction(rep), seed, np.zeros(size, dtype=bool))
    else:
        if size >= 2**62:
            raise OrbitError("space too large for 64-bit indices")
        members = _closure(IndexAction(rep), seed, None)
    rep_index = int(members[0])
    return OrbitData(rep_index, len(members), members, Vec(F, indices_to_coords(F, n, rep_index)))


def orbit_partition(rep: GroupRep, cap: int | None = DEFAULT_SPACE_CAP) -> OrbitPartition:
    F, n = rep.field, rep.n
    size = check_space(F, n, cap)
    action = IndexAction(rep)
    labels = np.full(size, -1, dtype=np.int32)
    labels[0] = -2
    visited = np.zeros(size, dtype=bool)
    visited[0] = True
    orbits = []
    cursor = 1
    while True:
        free = np.flatnonzero(~visited[cursor:])
        if not len(free):
            break
        seed = cursor + int(free[0])
        members = _closure(action, seed, visited)
        oid = len(orbits)
        labels[members] = oid
        orbits.append(OrbitData(int(members[0]), len(members), members,
                                Vec(F, indices_to_coords(F, n, int(members[0]))), orbit_id=oid))
        cursor = seed + 1
    for o in orbits:
        neg = int(negate_indices(F, n, [o.rep_index])[0])
        o.negation = int(labels[neg])
    part = OrbitPartition(F, n, orbits, labels)
    if not part.check_total():
        raise OrbitError("orbit sizes do not sum to q^n - 1")
    return part


def perm_rank(partition: OrbitPartition, convention: str = "directed") -> int:
    """1 + number of nonzero orbits ("directed", orbitals on V x V) or of undirected orbitals."""
    if convention == "directed":
        return 1 + len(partition.orbits)
    if convention == "undirected":
        return 1 + len(partition.classes())
    raise ValueError(f"unknown rank convention {convention!r}")


def orbit_invariant(rep: GroupRep, orbit: OrbitData, kind: str, full: bool = True,
                    sample: int = 256, seed: int = 0) -> set:
    """Value set of an invariant over the orbit (all members, or a seeded sample)."""
    F, n = rep.field, rep.n
    members = orbit.members
    if not full and len(members) > sample:
        members = np.random.default_rng(seed).choice(members, sample, replace=False)
    coords = indices_to_coords(F, n, members)
    if kind == "matrix_rank":
        if rep.model is None:
            raise OrbitError(f"{rep.descriptor} has no matrix model")
        values = {rep.model.rank(c) for c in coords}
    elif kind == "hermitian_norm":
        if rep.form is None or rep.form.kind != "hermitian":
            raise OrbitError(f"{rep.descriptor} carries no hermitian form")
        values = {form_value(F, rep.form, c, c) for c in coords}
    elif kind == "quadratic_value":
        try:
            values = {quadratic_value(rep, c) for c in coords}
        except RepError as e:
            raise OrbitError(str(e)) from None
    else:
        raise OrbitError(f"unknown invariant kind {kind!r}")
    orbit.invariants[kind] = values
    return values
