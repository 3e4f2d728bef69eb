"""Builtin matrix groups, descriptor parsing and the generator file format."""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .gf import FieldError, FieldSpec, field_of_order, frobenius_power, make_field, prime_power
from .linalg import (
    DEFAULT_SPACE_CAP,
    Mat,
    MatrixModel,
    Vec,
    _gauss,
    check_space,
    determinant,
    dot,
    functor_rep,
    identity,
    inverse,
    is_invertible,
    make_model,
    scalar_matrix,
)


class RepError(ValueError):
    pass


class GenFileError(RepError):
    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


class DescriptorError(RepError):
    def __init__(self, msg: str, text: str = "", pos: int | None = None):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where} in {text!r}\n{DESCRIPTOR_GRAMMAR}")


@dataclass(frozen=True)
class Form:
    """Invariant form metadata.

    ``kind`` is ``alternating`` (B(u,v) = u J v^T), ``hermitian``
    (B(u,v) = u J conj(v)^T with conj the order-2 field automorphism) or
    ``quadratic`` (evaluated through the module's matrix model).
    """

    kind: str
    gram: np.ndarray | None = None
    sub_k: int | None = None


@dataclass(frozen=True, eq=False)
class GroupRep:
    field: FieldSpec
    n: int
    generators: tuple
    descriptor: str = "unnamed"
    family: str = ""
    params: dict = field(default_factory=dict)
    module: str = "natural"
    contains_scalars: bool = False
    source: str = "builtin"
    form: Form | None = None
    model: MatrixModel | None = None
    vectors: dict = field(default_factory=dict)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise RepError("empty generator list")
        for g in gens:
            if g.field != self.field:
                raise RepError(f"generator over {g.field!r}, expected {self.field!r}")
            if g.rows != self.n or g.cols != self.n:
                raise RepError(f"generator of shape {g.rows}x{g.cols}, expected {self.n}x{self.n}")
            if not is_invertible(g):
                raise RepError("generator not invertible")
        object.__setattr__(self, "generators", gens)

    @property
    def gen_arrays(self) -> list:
        return [g.a for g in self.generators]

    def vec(self, coords) -> Vec:
        c = np.asarray(coords, dtype=np.int64)
        if c.shape != (self.n,):
            raise RepError(f"vector of shape {c.shape}, expected ({self.n},)")
        return Vec(self.field, c)

    def summary(self) -> str:
        s = f"{self.descriptor}: dim {self.n} over GF({self.field.q}), {len(self.generators)} generators"
        if self.contains_scalars:
            s += ", scalars"
        return s


def _prime_elt(F: FieldSpec, x: int) -> int:
    return F.from_int(x % F.p)


# -- permutation modules ----------------------------------------------------------

def standard_perm_generators(r: int, alternating_only: bool) -> list[list[int]]:
    """Images of 0..r-1: (1 2) and (1 2 ... r) for S_r; (1 2 3) and an even long cycle for A_r."""
    if not alternating_only:
        return [[1, 0] + list(range(2, r)), [(i + 1) % r for i in range(r)]]
    three = [1, 2, 0] + list(range(3, r))
    if r % 2:
        long = [(i + 1) % r for i in range(r)]
    else:
        long = [0] + [i + 1 if i < r - 1 else 1 for i in range(1, r)]
    return [three, long]


def perm_matrix(F: FieldSpec, perm) -> np.ndarray:
    r = len(perm)
    M = np.zeros((r, r), dtype=np.int64)
    M[np.arange(r), perm] = 1
    return M


def _check_r(r: int):
    if r < 5:
        raise RepError(f"r must be at least 5, got {r}")


def perm_rep(r: int, alternating_only: bool = False, q0: int = 2) -> GroupRep:
    _check_r(r)
    F = field_of_order(q0)
    tag = "A" if alternating_only else "S"
    gens = [Mat(F, perm_matrix(F, p)) for p in standard_perm_generators(r, alternating_only)]
    return GroupRep(F, r, gens, descriptor=f"perm:r={r},q={q0}" + (",alt" if alternating_only else ""),
                    family=tag, params={"r": r, "q": q0}, module="perm")


def fdpm_dim(r: int, p: int) -> int:
    return r - 2 if r % p == 0 else r - 1


def fdpm_coords(F: FieldSpec, r: int, w) -> np.ndarray:
    """Coordinates in the fully deleted module of a sum-zero vector w of GF(q0)^r.

    Entries of w may be field indices or (when ``w`` holds Python ints
    possibly negative) are read in the prime field.  Basis b_i = e_i - e_{i+1};
    the b-coordinates of w are its partial sums.  When p | r the last basis
    vector is eliminated with b_{r-2} = sum_{i<r-2} (i+1) b_i modulo T.
    """
    w = np.asarray(w, dtype=np.int64)
    if len(w) != r:
        raise RepError(f"vector of length {len(w)}, expected {r}")
    if w.min() < 0:
        w = w % F.p
    c = np.zeros(r - 1, dtype=np.int64)
    acc = 0
    for i in range(r - 1):
        acc = int(F.add(acc, int(w[i])))
        c[i] = acc
    if int(F.add(acc, int(w[r - 1]))) != 0:
        raise RepError("vector does not lie in the sum-zero submodule W")
    if r % F.p:
        return c
    last = int(c[r - 2])
    out = c[: r - 2].copy()
    for i in range(r - 2):
        out[i] = F.add(int(out[i]), F.mul(last, _prime_elt(F, i + 1)))
    return out


def fully_deleted_rep(r: int, alternating_only: bool = False, q0: int = 2) -> GroupRep:
    _check_r(r)
    F = field_of_order(q0)
    one, neg1 = 1, int(F.neg(1))
    gens = []
    for perm in standard_perm_generators(r, alternating_only):
        rows = []
        for i in range(r - 1 if r % F.p else r - 2):
            w = np.zeros(r, dtype=np.int64)
            w[perm[i]] = one
            w[perm[i + 1]] = F.add(int(w[perm[i + 1]]), neg1)
            rows.append(fdpm_coords(F, r, w))
        gens.append(Mat(F, np.array(rows)))
    tag = "A" if alternating_only else "S"
    return GroupRep(F, fdpm_dim(r, F.p), gens,
                    descriptor=f"fdpm:r={r},q={q0}" + (",alt" if alternating_only else ""),
                    family=tag, params={"r": r, "q": q0}, module="fdpm")


# -- classical groups ---------------------------------------------------------------

def _fp_basis(F: FieldSpec, elements) -> list[int]:
    """A GF(p)-basis of the additive span of ``elements``."""
    basis, span = [], {0}
    for a in elements:
        a = int(a)
        if a in span:
            continue
        basis.append(a)
        new = set()
        for c in range(F.p):
            ca = int(F.mul(F.from_int(c), a))
            new.update(int(F.add(s, ca)) for s in span)
        span = new
    return basis


def _antidiagonal(n: int) -> np.ndarray:
    J = np.zeros((n, n), dtype=np.int64)
    J[np.arange(n), n - 1 - np.arange(n)] = 1
    return J


def form_value(F: FieldSpec, form: Form, u, v) -> int:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if form.kind == "hermitian":
        v = frobenius_power(F, v, form.sub_k)
    elif form.kind != "alternating":
        raise RepError(f"no bilinear evaluation for {form.kind} forms")
    return int(dot(F, dot(F, u[None, :], form.gram), v[:, None])[0, 0])


def _transvection(F: FieldSpec, form: Form, u, a: int) -> Mat:
    """v -> v + a B(v, u) u."""
    n = len(u)
    u = np.asarray(u, dtype=np.int64)
    M = np.eye(n, dtype=np.int64)
    for i in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        c = int(F.mul(a, form_value(F, form, e, u)))
        if c:
            M[i] = F.add(M[i], F.mul(c, u))
    return Mat(F, M)


def _sl_gens(F: FieldSpec, n: int) -> list[Mat]:
    gens = []
    for a in _fp_basis(F, [F.power(F.primitive, i) for i in range(F.k)]):
        M = np.eye(n, dtype=np.int64)
        M[0, 1] = a
        gens.append(Mat(F, M))
    if F.q > 3:
        D = np.eye(n, dtype=np.int64)
        D[0, 0] = F.primitive
        D[1, 1] = F.inv(F.primitive)
        gens.append(Mat(F, D))
    # signed n-cycle e_i -> e_{i+1}, e_{n-1} -> (-1)^(n-1) e_0
    W = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        W[i, i + 1] = 1
    W[n - 1, 0] = 1 if n % 2 else F.neg(1)
    gens.append(Mat(F, W))
    return gens


def _sp_gens(F: FieldSpec, n: int) -> tuple[list[Mat], Form]:
    m = n // 2
    J = np.zeros((n, n), dtype=np.int64)
    J[np.arange(m), m + np.arange(m)] = 1
    J[m + np.arange(m), np.arange(m)] = F.neg(1)
    form = Form("alternating", J)
    gens = []
    # Levi factor diag(A, A^-T) for A running over generators of GL_m
    levi = _sl_gens(F, m) if m >= 2 else []
    if F.q > 2:
        D = np.eye(m, dtype=np.int64)
        D[0, 0] = F.primitive
        levi.append(Mat(F, D))
    for A in levi:
        M = np.zeros((n, n), dtype=np.int64)
        M[:m, :m] = A.a
        M[m:, m:] = inverse(A).a.T
        gens.append(Mat(F, M))
    e1 = np.zeros(n, dtype=np.int64)
    e1[0] = 1
    f1 = np.zeros(n, dtype=np.int64)
    f1[m] = 1
    for a in _fp_basis(F, [F.power(F.primitive, i) for i in range(F.k)]):
        gens.append(_transvection(F, form, e1, a))
        gens.append(_transvection(F, form, f1, a))
    return gens, form


# Unitary transvections generate only an index-4 subgroup of SU_3(2); two
# further elements (found by exhaustive search, Conway encoding of GF(4)).
_SU32_EXTRA = ([[2, 1, 1], [1, 1, 0], [1, 0, 0]], [[0, 0, 1], [0, 1, 2], [1, 3, 2]])


def _su_gens(F: FieldSpec, n: int) -> tuple[list[Mat], Form]:
    k0 = F.k // 2
    q0 = F.p**k0
    form = Form("hermitian", _antidiagonal(n), k0)
    trace_zero = [a for a in range(1, F.q) if F.add(a, frobenius_power(F, a, k0)) == 0]
    scal = _fp_basis(F, trace_zero)
    us = []
    for pos in (0, n - 1):
        u = np.zeros(n, dtype=np.int64)
        u[pos] = 1
        us.append(u)
    for j in range(1, n - 1):
        for x in (1, F.primitive):
            for y in range(F.q):
                u = np.zeros(n, dtype=np.int64)
                u[0], u[j], u[n - 1] = 1, x, y
                if form_value(F, form, u, u) == 0:
                    us.append(u)
                    break
    gens = [_transvection(F, form, u, a) for u in us for a in scal]
    w = F.primitive
    D = np.eye(n, dtype=np.int64)
    D[0, 0] = w
    D[n - 1, n - 1] = F.power(w, -q0 % (F.q - 1))
    if n % 2:
        D[n // 2, n // 2] = F.power(w, q0 - 1)
    else:
        D[1, 1] = F.inv(w)
        D[n - 2, n - 2] = F.power(w, q0)
    gens.append(Mat(F, D))
    if (n, F.q) == (3, 4) and F.modulus == make_field(2, 2).modulus:
        gens.extend(Mat(F, np.array(x)) for x in _SU32_EXTRA)
    return gens, form


def classical_natural(family: str, n: int, q: int) -> GroupRep:
    family = family.upper()
    F = field_of_order(q)
    if family == "SL":
        if n < 2:
            raise RepError("SL needs n >= 2")
        gens, form = _sl_gens(F, n), None
    elif family == "SP":
        if n < 4 or n % 2:
            raise RepError("Sp needs even n >= 4")
        gens, form = _sp_gens(F, n)
    elif family == "SU":
        if n < 3:
            raise RepError("SU needs n >= 3")
        if F.k % 2:
            raise RepError(f"SU needs a square field order, got {q}")
        gens, form = _su_gens(F, n)
    else:
        raise RepError(f"unknown classical family {family!r}")
    tag = {"SL": "sl", "SP": "sp", "SU": "su"}[family]
    return GroupRep(F, n, gens, descriptor=f"{tag}:n={n},q={q}", family=family.replace("SP", "Sp"),
                    params={"n": n, "q": q}, module="natural", form=form)


# -- twisted exceptional groups -------------------------------------------------------

def _odd_power(q: int, p: int) -> int:
    pp, k = prime_power(q)
    if pp != p or k % 2 == 0 or k < 3:
        raise RepError(f"q must be {p}^(2m+1) with m >= 1, got {q}")
    return (k - 1) // 2


def suzuki_rep(q: int) -> GroupRep:
    """Sz(q) on GF(q)^4, q = 2^(2m+1), theta: x -> x^(2^(m+1))."""
    m = _odd_power(q, 2)
    F = field_of_order(q)
    th = lambda x: F.power(x, 2 ** (m + 1))

    def S(a, b):
        M = np.eye(4, dtype=np.int64)
        M[1, 0] = a
        M[2, 0] = b
        M[2, 1] = th(a)
        M[3, 0] = F.add(F.add(F.mul(F.power(a, 2), th(a)), F.mul(a, b)), th(b))
        M[3, 1] = F.add(F.mul(a, th(a)), b)
        M[3, 2] = a
        return Mat(F, M)

    lam = F.primitive
    t = 2**m
    D = np.diag([F.power(lam, 1 + t), F.power(lam, t), F.inv(F.power(lam, t)), F.inv(F.power(lam, 1 + t))])
    gens = [S(1, 0), S(0, 1), Mat(F, D), Mat(F, _antidiagonal(4))]
    return GroupRep(F, 4, gens, descriptor=f"suzuki:q={q}", family="2B2", params={"q": q},
                    module="natural")


_REE_A = [[1, 0, 0, 0, 0, 0, 0], [1, 1, 0, 0, 0, 0, 0], [-1, -1, 1, 0, 0, 0, 0],
          [0, 0, 1, 1, 0, 0, 0], [1, 0, 1, -1, 1, 0, 0], [-1, 0, 1, -1, 1, 1, 0],
          [-1, -1, -1, 0, 0, -1, 1]]
_REE_B = [[1, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0], [-1, 0, 1, 0, 0, 0, 0],
          [0, 1, 0, 1, 0, 0, 0], [1, 0, 0, 0, 1, 0, 0], [0, 1, 0, -1, 0, 1, 0],
          [1, 0, -1, 0, 1, 0, 1]]
_REE_C = [[1, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0],
          [1, 0, 0, 1, 0, 0, 0], [0, -1, 0, 0, 1, 0, 0], [1, 0, 1, 0, 0, 1, 0],
          [1, -1, 0, -1, 0, 0, 1]]


def ree_diagonal(F: FieldSpec, m: int, lam: int) -> Mat:
    """D(lam) = diag(a^-1, b^-1, lam^-1, 1, lam, b, a), a = lam^(3^(m+1)+2), b = lam^(3^(m+1)+1)."""
    if lam == 0:
        raise FieldError("lam must be nonzero")
    a = F.power(lam, 3 ** (m + 1) + 2)
    b = F.power(lam, 3 ** (m + 1) + 1)
    return Mat(F, np.diag([F.inv(a), F.inv(b), F.inv(lam), 1, lam, b, a]))


def ree_basis_vector(F: FieldSpec, i: int) -> Vec:
    """e_i for -3 <= i <= 3, nonzero in position i+4 (1-based)."""
    if not -3 <= i <= 3:
        raise RepError("basis label outside -3..3")
    c = np.zeros(7, dtype=np.int64)
    c[i + 3] = 1
    return Vec(F, c)


def ree_stabilizer_rep(q: int) -> GroupRep:
    """Generators of the stabilizer of <e_-3> in 2G2(q) <= GL_7(q), q = 3^(2m+1)."""
    m = _odd_power(q, 3)
    F = field_of_order(q)
    gens = [Mat(F, np.array(x) % 3) for x in (_REE_A, _REE_B, _REE_C)]
    gens.append(ree_diagonal(F, m, F.primitive))
    vectors = {f"e{i}": ree_basis_vector(F, i) for i in (-3, -2, 3)}
    return GroupRep(F, 7, gens, descriptor=f"ree-stab:q={q}", family="2G2", params={"q": q, "m": m},
                    module="stabilizer", vectors=vectors)


# -- modifiers ------------------------------------------------------------------------

def adjoin_scalars(rep: GroupRep, subgroup_order: int | None = None) -> GroupRep:
    F = rep.field
    order = F.q - 1 if subgroup_order is None else subgroup_order
    if order < 1 or (F.q - 1) % order:
        raise RepError(f"scalar subgroup order {order} does not divide q-1 = {F.q - 1}")
    lam = F.power(F.primitive, (F.q - 1) // order)
    gens = list(rep.generators)
    if lam != 1 and scalar_matrix(F, rep.n, lam) not in gens:
        gens.append(scalar_matrix(F, rep.n, lam))
    full = order == F.q - 1
    tag = ";scalars" if full else f";scalars={order}"
    return replace(rep, generators=tuple(gens), contains_scalars=rep.contains_scalars or full,
                   descriptor=rep.descriptor + tag)


def pfaffian4(F: FieldSpec, A: np.ndarray) -> int:
    t1 = F.mul(int(A[0, 1]), int(A[2, 3]))
    t2 = F.mul(int(A[0, 2]), int(A[1, 3]))
    t3 = F.mul(int(A[0, 3]), int(A[1, 2]))
    return int(F.add(F.sub(t1, t2), t3))


def apply_functor(rep: GroupRep, functor: str, quotient: bool | None = None) -> GroupRep:
    gens = functor_rep(rep.generators, functor, quotient=quotient)
    model = make_model(functor, rep.field, rep.n, quotient=quotient)
    F = gens[0].field
    form = None
    if functor == "sym2" and rep.n == 2 or functor == "ext2" and rep.n == 4:
        form = Form("quadratic")
    return GroupRep(F, gens[0].rows, gens, descriptor=f"{rep.descriptor};functor={functor}",
                    family=rep.family, params=dict(rep.params), module=functor,
                    source=rep.source, form=form, model=model)


def quadratic_value(rep: GroupRep, coords) -> int:
    """The invariant quadratic form of the S^2 (m=2) and Lambda^2 (m=4) models: det and Pfaffian."""
    if rep.form is None or rep.form.kind != "quadratic" or rep.model is None:
        raise RepError(f"{rep.descriptor} carries no quadratic form")
    A = rep.model.to_matrix(coords)
    F = rep.model.mfield
    if rep.module == "sym2":
        return determinant(Mat(F, A))
    return pfaffian4(F, A)


def direct_sum(a: GroupRep, b: GroupRep) -> GroupRep:
    if a.field != b.field or len(a.generators) != len(b.generators):
        raise RepError("direct sum needs equal fields and generator counts")
    n = a.n + b.n
    gens = []
    for g, h in zip(a.generators, b.generators):
        M = np.zeros((n, n), dtype=np.int64)
        M[: a.n, : a.n] = g.a
        M[a.n:, a.n:] = h.a
        gens.append(Mat(a.field, M))
    return GroupRep(a.field, n, gens, descriptor=f"({a.descriptor})+({b.descriptor})", module="sum")


# -- irreducibility -------------------------------------------------------------------

def spin(rep: GroupRep, v) -> np.ndarray:
    """Echelon basis of the smallest invariant subspace containing v."""
    F = rep.field
    basis = np.zeros((0, rep.n), dtype=np.int64)
    queue = [np.asarray(v, dtype=np.int64)]
    while queue:
        x = queue.pop()
        cand = np.vstack([basis, x[None, :]])
        R, piv, _ = _gauss(F, cand, reduce_above=True)
        if len(piv) == len(basis):
            continue
        basis = R[: len(piv)]
        if len(basis) == rep.n:
            break
        queue.extend(dot(F, x[None, :], g)[0] for g in rep.gen_arrays)
    return basis


def spin_check_irreducible(rep: GroupRep, cap: int | None = DEFAULT_SPACE_CAP, samples: int = 32,
                           seed: int = 0) -> bool:
    """One-sided irreducibility check by spinning.

    Spins the standard basis vectors, adjacent differences, the all-ones
    vector and ``samples`` seeded random vectors (every nonzero vector when
    q^n <= 1024).  Returns False as soon as one of them spans a proper
    invariant subspace.  True means "every probe spins to V"; False means
    "not verified", which for the probes used certifies reducibility.
    """
    F, n = rep.field, rep.n
    size = check_space(F, n, cap)
    probes = list(np.eye(n, dtype=np.int64))
    for i in range(n - 1):
        d = np.zeros(n, dtype=np.int64)
        d[i], d[i + 1] = 1, F.neg(1)
        probes.append(d)
    probes.append(np.ones(n, dtype=np.int64))
    if size <= 1024:
        from .linalg import indices_to_coords
        probes.extend(indices_to_coords(F, n, np.arange(1, size)))
    else:
        rng = np.random.default_rng(seed)
        probes.extend(rng.integers(0, F.q, (samples, n)))
    for v in probes:
        if not v.any():
            continue
        if len(spin(rep, v)) < n:
            return False
    return True


# -- generator files ----------------------------------------------------------------

def _tokens(path):
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def import_rep(path) -> GroupRep:
    lines = list(_tokens(path))
    it = iter(lines)

    def header(key, count=None):
        try:
            lineno, tok = next(it)
        except StopIteration:
            raise GenFileError(f"missing '{key}' line") from None
        if tok[0] != key:
            raise GenFileError(f"expected '{key}', found {tok[0]!r}", lineno)
        return lineno, tok[1:]

    ln, args = header("field")
    try:
        nums = [int(x) for x in args]
        if len(nums) < 2:
            raise ValueError
        p, k = nums[:2]
        modulus = tuple(nums[2:]) or None
        F = make_field(p, k, modulus)
    except (ValueError, FieldError) as e:
        raise GenFileError(f"bad field line: {e or 'expected p k [c0..ck]'}", ln) from None
    ln, args = header("dim")
    try:
        (n,) = [int(x) for x in args]
        if n < 1:
            raise ValueError
    except ValueError:
        raise GenFileError("bad dim line", ln) from None
    ln, args = header("name")
    name = " ".join(args) or "unnamed"
    ln, args = header("scalars")
    if args not in (["yes"], ["no"]):
        raise GenFileError("scalars must be yes or no", ln)
    scalars = args == ["yes"]
    gens = []
    rest = list(it)
    i = 0
    while i < len(rest):
        ln, tok = rest[i]
        if tok != ["generator"]:
            raise GenFileError(f"expected 'generator', found {' '.join(tok)!r}", ln)
        rows = rest[i + 1: i + 1 + n]
        if len(rows) < n:
            raise GenFileError(f"generator block needs {n} rows", ln)
        M = np.zeros((n, n), dtype=np.int64)
        for r, (rl, rt) in enumerate(rows):
            if len(rt) != n:
                raise GenFileError(f"row has {len(rt)} entries, expected {n}", rl)
            try:
                vals = [int(x) for x in rt]
            except ValueError:
                raise GenFileError("non-integer entry", rl) from None
            if min(vals) < 0 or max(vals) >= F.q:
                raise GenFileError(f"entry outside [0, {F.q})", rl)
            M[r] = vals
        g = Mat(F, M)
        if not is_invertible(g):
            raise GenFileError("generator not invertible", ln)
        gens.append(g)
        i += n + 1
    if not gens:
        raise GenFileError("no generator blocks")
    rep = GroupRep(F, n, gens, descriptor=name, family=name.split()[0], params={"q": F.q},
                   module="ingested", source="ingested")
    if scalars:
        lam = scalar_matrix(F, n, F.primitive)
        if F.q > 2 and lam not in gens:
            rep = adjoin_scalars(rep)
            rep = replace(rep, descriptor=name)
        else:
            rep = replace(rep, contains_scalars=True)
    return rep


def export_rep(rep: GroupRep, path=None, include_scalar: bool = True) -> str:
    F = rep.field
    lines = [f"field {F.p} {F.k} " + " ".join(str(c) for c in F.modulus),
             f"dim {rep.n}", f"name {rep.descriptor}",
             f"scalars {'yes' if rep.contains_scalars else 'no'}"]
    for g in rep.generators:
        lines.append("generator")
        lines.extend(" ".join(str(int(x)) for x in row) for row in g.a)
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


# -- descriptors --------------------------------------------------------------------

DESCRIPTOR_GRAMMAR = """descriptor grammar:
  FAMILY:KEY=VAL[,KEY=VAL...][;functor=NAME][;scalars[=ORDER]]
  families: fdpm (r, q, alt=0|1)   perm (r, q, alt=0|1)
            sl (n, q)   sp (n, q)   su (n, q; q a square)
            suzuki (q = 2^(2m+1))   ree-stab (q = 3^(2m+1))
  functors: ext2 sym2 ext3 adjoint tensor twisted_tensor_k2
  examples: fdpm:r=8,q=2   sl:n=5,q=2;functor=ext2   suzuki:q=8;scalars"""

_FAMILY_KEYS = {
    "fdpm": ({"r", "q"}, {"alt"}),
    "perm": ({"r", "q"}, {"alt"}),
    "sl": ({"n", "q"}, set()),
    "sp": ({"n", "q"}, set()),
    "su": ({"n", "q"}, set()),
    "suzuki": ({"q"}, set()),
    "ree-stab": ({"q"}, set()),
}

_TOKEN = re.compile(r"[A-Za-z0-9_\-^]+")


@dataclass(frozen=True)
class Descriptor:
    family: str
    params: dict
    functor: str | None = None
    scalars: int | None = None   # 0 = full group, else subgroup order
    quotient: bool | None = None


def _int_expr(s: str) -> int:
    if "^" in s:
        b, e = s.split("^", 1)
        return int(b) ** int(e)
    return int(s)


def parse_descriptor(text: str) -> Descriptor:
    text = text.strip()
    head, sep, rest = text.partition(":")
    if not sep:
        raise DescriptorError("missing ':' after family", text, len(head))
    family = head.strip().lower()
    if family not in _FAMILY_KEYS:
        raise DescriptorError(f"unknown family {family!r}", text, 0)
    parts = rest.split(";")
    params = {}
    pos = len(head) + 1
    for item in parts[0].split(","):
        if not item.strip():
            raise DescriptorError("empty parameter", text, pos)
        key, eq, val = item.partition("=")
        key = key.strip()
        try:
            params[key] = _int_expr(val.strip()) if eq else 1
        except ValueError:
            raise DescriptorError(f"non-integer value for {key!r}", text, pos + len(key) + 1) from None
        pos += len(item) + 1
    need, opt = _FAMILY_KEYS[family]
    missing = need - params.keys()
    extra = params.keys() - need - opt
    if missing:
        raise DescriptorError(f"missing parameter(s) {sorted(missing)}", text, len(head) + 1)
    if extra:
        raise DescriptorError(f"unknown parameter(s) {sorted(extra)}", text, len(head) + 1)
    functor = None
    scalars = None
    quotient = None
    for item in parts[1:]:
        key, eq, val = item.strip().partition("=")
        if key == "functor" and val:
            functor = val
        elif key == "scalars":
            try:
                scalars = int(val) if eq else 0
            except ValueError:
                raise DescriptorError("scalars order must be an integer", text, pos) from None
        elif key == "quotient":
            quotient = val not in ("0", "no", "false")
        else:
            raise DescriptorError(f"unknown modifier {item.strip()!r}", text, pos)
        pos += len(item) + 1
    return Descriptor(family, params, functor, scalars, quotient)


def build(text: str) -> GroupRep:
    d = parse_descriptor(text)
    p = d.params
    try:
        if d.family == "fdpm":
            rep = fully_deleted_rep(p["r"], bool(p.get("alt", 0)), p["q"])
        elif d.family == "perm":
            rep = perm_rep(p["r"], bool(p.get("alt", 0)), p["q"])
        elif d.family in ("sl", "sp", "su"):
            rep = classical_natural(d.family, p["n"], p["q"])
        elif d.family == "suzuki":
            rep = suzuki_rep(p["q"])
        else:
            rep = ree_stabilizer_rep(p["q"])
        if d.functor:
            rep = apply_functor(rep, d.functor, d.quotient)
        if d.scalars is not None:
            rep = adjoin_scalars(rep, d.scalars or None)
    except (FieldError, ValueError) as e:
        if isinstance(e, DescriptorError):
            raise
        raise DescriptorError(str(e), text) from None
    return replace(rep, descriptor=text.strip())
