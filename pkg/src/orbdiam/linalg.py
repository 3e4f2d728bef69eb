"""Matrices and vectors over a FieldSpec, and the module functors.

Vectors are rows and groups act on the right: v -> v g.  All matrices are
integer numpy arrays of field-element indices.

A vector of V = GF(q)^n is addressed densely by its VectorIndex
``sum coords[i] * q**i`` (coordinate 0 least significant).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gf import FieldError, FieldSpec, embedding, frobenius_power, make_field

DEFAULT_SPACE_CAP = 2**26


class DimensionError(ValueError):
    pass


class SpaceCapError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Mat:
    field: FieldSpec
    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=np.int64)
        if a.ndim != 2:
            raise DimensionError("matrix entries must be two-dimensional")
        if a.size and (a.min() < 0 or a.max() >= self.field.q):
            raise FieldError("matrix entry outside [0, q)")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((self.field, self.a.tobytes(), self.a.shape))

    def __matmul__(self, other):
        if isinstance(other, Mat):
            return mat_mul(self, other)
        return NotImplemented

    def tolist(self):
        return self.a.tolist()


@dataclass(frozen=True, eq=False)
class Vec:
    field: FieldSpec
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=np.int64).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __eq__(self, other):
        return (isinstance(other, Vec) and self.field == other.field
                and np.array_equal(self.coords, other.coords))

    def __hash__(self):
        return hash((self.field, self.coords.tobytes()))

    def __repr__(self):
        return f"Vec({self.coords.tolist()})"


def identity(F: FieldSpec, n: int) -> Mat:
    return Mat(F, np.eye(n, dtype=np.int64))


def zeros(F: FieldSpec, rows: int, cols: int | None = None) -> Mat:
    return Mat(F, np.zeros((rows, rows if cols is None else cols), dtype=np.int64))


def scalar_matrix(F: FieldSpec, n: int, lam: int) -> Mat:
    return Mat(F, np.eye(n, dtype=np.int64) * lam)


def from_ints(F: FieldSpec, rows) -> Mat:
    """Matrix from integer entries read as elements of the prime field (so -1 is p-1)."""
    return Mat(F, np.asarray(rows, dtype=np.int64) % F.p)


# -- raw array kernels --------------------------------------------------------

def dot(F: FieldSpec, X: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Product X @ G over F for X of shape (N, m) and G of shape (m, n)."""
    X = np.asarray(X)
    G = np.asarray(G)
    if X.shape[-1] != G.shape[0]:
        raise DimensionError(f"cannot multiply {X.shape} by {G.shape}")
    acc = np.zeros(X.shape[:-1] + (G.shape[1],), dtype=np.int64)
    for k in range(G.shape[0]):
        row = G[k]
        nz = np.nonzero(row)[0]
        if not len(nz):
            continue
        if F.mul_table is not None:
            term = F.mul_table[X[..., k, None], row[None, nz]]
        else:
            term = F.mul(X[..., k, None], row[None, nz])
        acc[..., nz] = F.add(acc[..., nz], term)
    return acc


def indices_to_coords(F: FieldSpec, n: int, idx) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    pw = np.int64(F.q) ** np.arange(n, dtype=np.int64)
    return (idx[..., None] // pw) % F.q


def coords_to_indices(F: FieldSpec, coords) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    pw = np.int64(F.q) ** np.arange(coords.shape[-1], dtype=np.int64)
    return coords @ pw


def check_space(F: FieldSpec, n: int, cap: int | None = DEFAULT_SPACE_CAP) -> int:
    size = F.q**n
    if cap is not None and size > cap:
        raise SpaceCapError(f"space GF({F.q})^{n} has {size} vectors, above the cap {cap}")
    if size >= 2**62:
        raise SpaceCapError(f"space GF({F.q})^{n} does not fit 64-bit indices")
    return size


def vec_index(F: FieldSpec, n: int, v: Vec, cap: int | None = DEFAULT_SPACE_CAP) -> int:
    if v.n != n:
        raise DimensionError(f"vector of length {v.n}, expected {n}")
    check_space(F, n, cap)
    return int(coords_to_indices(F, v.coords))


def index_to_vec(F: FieldSpec, n: int, index: int, cap: int | None = DEFAULT_SPACE_CAP) -> Vec:
    size = check_space(F, n, cap)
    if not 0 <= index < size:
        raise ValueError(f"index {index} outside [0, {size})")
    return Vec(F, indices_to_coords(F, n, index))


def _gauss(F: FieldSpec, A: np.ndarray, reduce_above: bool = False):
    """Row-echelon form; returns (matrix, pivot columns, determinant factor)."""
    A = np.array(A, dtype=np.int64)
    rows, cols = A.shape
    pivots = []
    det = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
            det = int(F.neg(det))
        pv = int(A[r, c])
        det = int(F.mul(det, pv))
        A[r] = F.mul(A[r], int(F.inv(pv)))
        targets = range(rows) if reduce_above else range(r + 1, rows)
        for i in targets:
            if i != r and A[i, c]:
                A[i] = F.sub(A[i], F.mul(A[r], int(A[i, c])))
        pivots.append(c)
        r += 1
    return A, pivots, det


# -- operations on Mat / Vec ----------------------------------------------------

def _same_field(*xs):
    F = xs[0].field
    for x in xs[1:]:
        if x.field != F:
            raise FieldError(f"field mismatch: {F!r} vs {x.field!r}")
    return F


def mat_mul(A: Mat, B: Mat) -> Mat:
    F = _same_field(A, B)
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    return Mat(F, dot(F, A.a, B.a))


def transpose(A: Mat) -> Mat:
    return Mat(A.field, A.a.T)


def apply_to_vector(v: Vec, g: Mat) -> Vec:
    """The image v g of a row vector."""
    F = _same_field(v, g)
    if v.n != g.rows:
        raise DimensionError(f"vector of length {v.n} against {g.rows}x{g.cols} matrix")
    return Vec(F, dot(F, v.coords[None, :], g.a)[0])


def entrywise_frobenius(A: Mat, i: int = 1) -> Mat:
    return Mat(A.field, frobenius_power(A.field, A.a, i))


def matrix_ops(op: str, *args):
    ops = {
        "mul": mat_mul,
        "transpose": transpose,
        "apply_to_vector": apply_to_vector,
        "entrywise_frobenius": entrywise_frobenius,
    }
    try:
        return ops[op](*args)
    except KeyError:
        raise ValueError(f"unknown matrix operation {op!r}") from None


def matrix_rank(M: Mat) -> int:
    return len(_gauss(M.field, M.a)[1])


def rank_array(F: FieldSpec, A: np.ndarray) -> int:
    return len(_gauss(F, A)[1])


def determinant(M: Mat) -> int:
    if M.rows != M.cols:
        raise DimensionError("determinant of a non-square matrix")
    _, pivots, det = _gauss(M.field, M.a)
    return det if len(pivots) == M.rows else 0


def inverse(M: Mat) -> Mat:
    F = M.field
    n = M.rows
    if n != M.cols:
        raise DimensionError("inverse of a non-square matrix")
    aug = np.concatenate([M.a, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots, _ = _gauss(F, aug, reduce_above=True)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Mat(F, R[:, n:])


def is_invertible(M: Mat) -> bool:
    return M.rows == M.cols and matrix_rank(M) == M.rows


def row_space_basis(F: FieldSpec, rows: np.ndarray) -> np.ndarray:
    R, pivots, _ = _gauss(F, np.asarray(rows).reshape(-1, np.asarray(rows).shape[-1]), reduce_above=True)
    return R[: len(pivots)]


# -- module functors -------------------------------------------------------------

class MatrixModel:
    """A module identified with a space of matrices carrying a group action.

    Subclasses define the coordinate bijection and ``act``.  ``matrices`` over
    ``mfield`` hold the model; coordinates live over ``field``.
    """

    name = "model"

    def __init__(self, mfield: FieldSpec, m: int, field: FieldSpec | None = None):
        self.mfield = mfield
        self.m = m
        self.field = field or mfield

    dim: int

    def to_matrix(self, coords) -> np.ndarray:
        raise NotImplementedError

    def from_matrix(self, A) -> np.ndarray:
        raise NotImplementedError

    def act(self, g: np.ndarray, A: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def induced(self, g: Mat) -> Mat:
        rows = []
        for i in range(self.dim):
            e = np.zeros(self.dim, dtype=np.int64)
            e[i] = 1
            rows.append(self.from_matrix(self.act(g.a, self.to_matrix(e))))
        return Mat(self.field, np.array(rows, dtype=np.int64))

    def rank(self, coords) -> int:
        return rank_array(self.mfield, self.to_matrix(coords))


def _mm(F, A, B):
    return dot(F, A, B)


class Ext2Model(MatrixModel):
    """Lambda^2 W as alternating matrices; basis e_i^e_j (i<j) lexicographic; A -> g^T A g."""

    name = "ext2"

    def __init__(self, F, m):
        super().__init__(F, m)
        self.pairs = list(itertools.combinations(range(m), 2))
        self.dim = len(self.pairs)

    def to_matrix(self, coords):
        F = self.mfield
        A = np.zeros((self.m, self.m), dtype=np.int64)
        for (i, j), c in zip(self.pairs, coords):
            A[i, j] = c
            A[j, i] = F.neg(int(c))
        return A

    def from_matrix(self, A):
        return np.array([A[i, j] for i, j in self.pairs], dtype=np.int64)

    def act(self, g, A):
        F = self.mfield
        return _mm(F, _mm(F, g.T, A), g)


class Sym2Model(MatrixModel):
    """S^2 W (p odd) as symmetric matrices; basis E_ij+E_ji (i<j), E_ii; A -> g^T A g."""

    name = "sym2"

    def __init__(self, F, m):
        if F.p == 2:
            raise FieldError("symmetric square model needs odd characteristic")
        super().__init__(F, m)
        self.pairs = [(i, j) for i in range(m) for j in range(i, m)]
        self.dim = len(self.pairs)

    def to_matrix(self, coords):
        A = np.zeros((self.m, self.m), dtype=np.int64)
        for (i, j), c in zip(self.pairs, coords):
            A[i, j] = c
            A[j, i] = c
        return A

    def from_matrix(self, A):
        return np.array([A[i, j] for i, j in self.pairs], dtype=np.int64)

    act = Ext2Model.act


class AdjointModel(MatrixModel):
    """Traceless matrices under conjugation A -> g^-1 A g.

    Coordinates are the entries in row-major order, skipping (m-1, m-1) and,
    for the quotient by scalars when p | m, also (0, 0): cosets A + Z are
    represented by the unique member with top-left entry 0.
    """

    name = "adjoint"

    def __init__(self, F, m, quotient: bool | None = None):
        super().__init__(F, m)
        divides = m % F.p == 0
        if quotient is None:
            quotient = divides
        if quotient and not divides:
            raise FieldError(f"quotient adjoint model needs p | m (p={F.p}, m={m})")
        self.quotient = quotient
        skip = {(m - 1, m - 1)} | ({(0, 0)} if quotient else set())
        self.positions = [(i, j) for i in range(m) for j in range(m) if (i, j) not in skip]
        self.dim = len(self.positions)

    def to_matrix(self, coords):
        F = self.mfield
        A = np.zeros((self.m, self.m), dtype=np.int64)
        for (i, j), c in zip(self.positions, coords):
            A[i, j] = c
        tr = 0
        for i in range(self.m - 1):
            tr = int(F.add(tr, int(A[i, i])))
        A[self.m - 1, self.m - 1] = F.neg(tr)
        return A

    def canonical(self, A):
        F = self.mfield
        if self.quotient and A[0, 0]:
            A = A.copy()
            c = int(A[0, 0])
            for i in range(self.m):
                A[i, i] = F.sub(int(A[i, i]), c)
        return A

    def from_matrix(self, A):
        A = self.canonical(np.asarray(A))
        return np.array([A[i, j] for i, j in self.positions], dtype=np.int64)

    def act(self, g, A):
        F = self.mfield
        ginv = inverse(Mat(F, g)).a
        return _mm(F, _mm(F, ginv, A), g)

    def rank(self, coords):
        """Minimum rank over the coset representatives A + a I (just rank(A) when p does not divide m)."""
        A = self.to_matrix(coords)
        if not self.quotient:
            return rank_array(self.mfield, A)
        F = self.mfield
        best = self.m
        for a in range(F.q):
            B = A.copy()
            for i in range(self.m):
                B[i, i] = F.add(int(B[i, i]), a)
            best = min(best, rank_array(F, B))
        return best


class TwistedModel(MatrixModel):
    """V' = {A in M_m(q) : A^(q0) = A^T} over GF(q0), q = q0^2; A -> g^T A g^sigma.

    Coordinates, in row-major order over i <= j: one GF(q0) coordinate for a
    diagonal entry, and two (c0, c1) for A_ij = c0 + c1*theta with
    A_ji = A_ij^q0, where theta is the primitive element of GF(q).
    """

    name = "twisted_tensor_k2"

    def __init__(self, big: FieldSpec, m: int):
        if big.k % 2:
            raise FieldError(f"{big!r} has no subfield of index 2")
        small = make_field(big.p, big.k // 2)
        super().__init__(big, m, small)
        self.emb = embedding(small, big)
        self.q0 = small.q
        theta = big.primitive
        # pair (c0, c1) <-> c0 + c1*theta
        self.pair_to_big = np.zeros((small.q, small.q), dtype=np.int64)
        self.big_to_pair = np.zeros((big.q, 2), dtype=np.int64)
        for c0 in range(small.q):
            for c1 in range(small.q):
                x = int(big.add(int(self.emb[c0]), big.mul(int(self.emb[c1]), theta)))
                self.pair_to_big[c0, c1] = x
                self.big_to_pair[x] = (c0, c1)
        self.sub_inv = np.full(big.q, -1, dtype=np.int64)
        self.sub_inv[self.emb] = np.arange(small.q)
        self.slots = [(i, j) for i in range(m) for j in range(i, m)]
        self.dim = m * m

    def sigma(self, A):
        return frobenius_power(self.mfield, A, self.field.k)

    def to_matrix(self, coords):
        big = self.mfield
        A = np.zeros((self.m, self.m), dtype=np.int64)
        it = iter(int(c) for c in coords)
        for i, j in self.slots:
            if i == j:
                A[i, i] = self.emb[next(it)]
            else:
                c0, c1 = next(it), next(it)
                x = int(self.pair_to_big[c0, c1])
                A[i, j] = x
                A[j, i] = frobenius_power(big, x, self.field.k)
        return A

    def from_matrix(self, A):
        out = []
        for i, j in self.slots:
            if i == j:
                c = int(self.sub_inv[int(A[i, i])])
                if c < 0:
                    raise FieldError("diagonal entry outside the subfield")
                out.append(c)
            else:
                out.extend(int(c) for c in self.big_to_pair[int(A[i, j])])
        return np.array(out, dtype=np.int64)

    def is_member(self, A) -> bool:
        return np.array_equal(self.sigma(A), np.asarray(A).T)

    def act(self, g, A):
        F = self.mfield
        return _mm(F, _mm(F, g.T, A), self.sigma(g))


def _ext3(g: Mat) -> Mat:
    F = g.field
    m = g.rows
    triples = list(itertools.combinations(range(m), 3))
    out = np.zeros((len(triples), len(triples)), dtype=np.int64)
    for r, rows in enumerate(triples):
        sub = g.a[list(rows)]
        for c, cols in enumerate(triples):
            out[r, c] = determinant(Mat(F, sub[:, list(cols)]))
    return Mat(F, out)


def _kron(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    m1, m2 = A.shape[0], B.shape[0]
    out = F.mul(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(m1 * m2, m1 * m2)


FUNCTORS = ("ext2", "sym2", "ext3", "adjoint", "tensor", "twisted_tensor_k2")


def make_model(functor: str, F: FieldSpec, m: int, **kw) -> MatrixModel | None:
    if functor == "ext2":
        return Ext2Model(F, m)
    if functor == "sym2":
        return Sym2Model(F, m)
    if functor == "adjoint":
        return AdjointModel(F, m, kw.get("quotient"))
    if functor == "twisted_tensor_k2":
        return TwistedModel(F, m)
    return None


def functor_rep(gens, functor: str, other=None, quotient: bool | None = None):
    """Generators of the derived module.

    ``other`` supplies the second factor's generators for ``tensor``
    (paired with ``gens`` one-to-one; defaults to ``gens``).  Returns the
    list of induced matrices; the module field differs from the input field
    only for ``twisted_tensor_k2``.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    F = _same_field(*gens)
    m = gens[0].rows
    for g in gens:
        if g.rows != m or g.cols != m:
            raise DimensionError("generators must be square of equal size")
    if functor not in FUNCTORS:
        raise ValueError(f"unknown functor {functor!r}; expected one of {FUNCTORS}")
    if functor == "ext3":
        if m < 3:
            raise DimensionError("ext3 needs m >= 3")
        return [_ext3(g) for g in gens]
    if functor == "tensor":
        others = gens if other is None else list(other)
        if len(others) != len(gens):
            raise ValueError("tensor factors need the same number of generators")
        _same_field(gens[0], *others)
        return [Mat(F, _kron(F, g.a, h.a)) for g, h in zip(gens, others)]
    model = make_model(functor, F, m, quotient=quotient)
    return [model.induced(g) for g in gens]
