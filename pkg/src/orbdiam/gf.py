"""Finite fields GF(p^k) with table-driven arithmetic.

Elements are plain ints in ``[0, q)``: the element ``sum c_i x^i`` (with
``0 <= c_i < p``) is stored as ``sum c_i p^i``.  In characteristic 2 this
makes addition a bitwise XOR.  Every operation accepts either an int or an
integer numpy array, so the orbit and BFS code can work on whole frontiers
at once.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

MAX_FIELD_SIZE = 2**16
FULL_TABLE_LIMIT = 256  # q x q add/mul tables up to this size

# Conway polynomials C(p, k) for k >= 2 and p^k <= 2^16, coefficients c_0..c_k.
# Generated by scripts/conway_search.py; degree-one polynomials are derived
# from the least primitive root on demand.
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (2, 13): (1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 14): (1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 15): (1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (3, 7): (1, 0, 2, 0, 0, 0, 0, 1),
    (3, 8): (2, 2, 2, 0, 1, 2, 0, 0, 1),
    (3, 9): (1, 1, 2, 2, 0, 0, 0, 0, 0, 1),
    (3, 10): (2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (5, 5): (3, 4, 0, 0, 0, 1),
    (5, 6): (2, 0, 1, 4, 1, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
    (7, 5): (4, 1, 0, 0, 0, 1),
    (11, 2): (2, 7, 1),
    (11, 3): (9, 2, 0, 1),
    (11, 4): (2, 10, 8, 0, 1),
    (13, 2): (2, 12, 1),
    (13, 3): (11, 2, 0, 1),
    (13, 4): (2, 12, 3, 0, 1),
    (17, 2): (3, 16, 1),
    (17, 3): (14, 1, 0, 1),
    (19, 2): (2, 18, 1),
    (19, 3): (17, 4, 0, 1),
    (23, 2): (5, 21, 1),
    (23, 3): (18, 2, 0, 1),
    (29, 2): (2, 24, 1),
    (29, 3): (27, 2, 0, 1),
    (31, 2): (3, 29, 1),
    (31, 3): (28, 1, 0, 1),
    (37, 2): (2, 33, 1),
    (37, 3): (35, 6, 0, 1),
    (41, 2): (6, 38, 1),
    (43, 2): (3, 42, 1),
    (47, 2): (5, 45, 1),
    (53, 2): (2, 49, 1),
    (59, 2): (2, 58, 1),
    (61, 2): (2, 60, 1),
    (67, 2): (2, 63, 1),
    (71, 2): (7, 69, 1),
    (73, 2): (5, 70, 1),
    (79, 2): (3, 78, 1),
    (83, 2): (2, 82, 1),
    (89, 2): (3, 82, 1),
    (97, 2): (5, 96, 1),
    (101, 2): (2, 97, 1),
    (103, 2): (5, 102, 1),
    (107, 2): (2, 103, 1),
    (109, 2): (6, 108, 1),
    (113, 2): (3, 101, 1),
    (127, 2): (3, 126, 1),
    (131, 2): (2, 127, 1),
    (137, 2): (3, 131, 1),
    (139, 2): (2, 138, 1),
    (149, 2): (2, 145, 1),
    (151, 2): (6, 149, 1),
    (157, 2): (5, 152, 1),
    (163, 2): (2, 159, 1),
    (167, 2): (5, 166, 1),
    (173, 2): (2, 169, 1),
    (179, 2): (2, 172, 1),
    (181, 2): (2, 177, 1),
    (191, 2): (19, 190, 1),
    (193, 2): (5, 192, 1),
    (197, 2): (2, 192, 1),
    (199, 2): (3, 193, 1),
    (211, 2): (2, 207, 1),
    (223, 2): (3, 221, 1),
    (227, 2): (2, 220, 1),
    (229, 2): (6, 228, 1),
    (233, 2): (3, 232, 1),
    (239, 2): (7, 237, 1),
    (241, 2): (7, 238, 1),
    (251, 2): (6, 242, 1),
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^k, raising FieldError if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise FieldError(f"{q} is not a prime power")
            return p, k
    raise FieldError(f"{q} is not a prime power")


# -- dense polynomial helpers over GF(p), coefficient lists low->high --------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _pmulmod(a, b, m, p):
    res = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    return _pmod(res, m, p)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p)."""
    k = len(modulus) - 1
    if k == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**k, modulus, p) != _pmod(x, modulus, p):
        return False
    for r in prime_factors(k):
        h = _ppowmod(x, p ** (k // r), modulus, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(modulus, h, p)) > 1:
            return False
    return True


@dataclass(frozen=True, eq=False, repr=False)
class FieldSpec:
    """GF(p^k) under a fixed monic modulus, with precomputed tables."""

    p: int
    k: int
    modulus: tuple
    q: int = field(init=False)
    primitive: int = field(init=False)
    exp: np.ndarray = field(init=False)
    log: np.ndarray = field(init=False)
    digits: np.ndarray = field(init=False)
    neg_table: np.ndarray = field(init=False)
    inv_table: np.ndarray = field(init=False)
    add_table: np.ndarray | None = field(init=False)
    mul_table: np.ndarray | None = field(init=False)

    def __post_init__(self):
        p, k = self.p, self.k
        q = p**k
        set_ = functools.partial(object.__setattr__, self)
        set_("q", q)
        pw = p ** np.arange(k, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        digits = (idx[:, None] // pw[None, :]) % p
        set_("digits", digits)
        set_("neg_table", ((-digits) % p) @ pw)
        set_("add_table", None)
        set_("mul_table", None)
        if p != 2 and q <= FULL_TABLE_LIMIT:
            s = (digits[:, None, :] + digits[None, :, :]) % p
            set_("add_table", s @ pw)

        # multiplication by x is a linear map on coefficient vectors
        mod = self.modulus

        def mul_poly(a: int, b: int) -> int:
            av = [int(c) for c in digits[a]]
            bv = [int(c) for c in digits[b]]
            r = _pmulmod(av, bv, list(mod), p) if k > 1 else [av[0] * bv[0] % p]
            return sum(int(c) * p**i for i, c in enumerate(r))

        powers = [1]
        for g in range(2 if q > 2 else 1, q):
            powers = [1]
            x = mul_poly(1, g)
            while x != 1:
                powers.append(x)
                x = mul_poly(x, g)
            if len(powers) == q - 1:
                break
        else:
            if q > 2:
                raise FieldError(f"modulus {mod} does not define a field")
        gen = powers[1] if q > 2 else 1
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        exp[: q - 1] = powers
        log = np.full(q, -1, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        exp[q - 1:] = exp[: q - 1]
        set_("primitive", gen)
        set_("exp", exp)
        set_("log", log)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        set_("inv_table", inv)
        if q <= FULL_TABLE_LIMIT:
            la = log[1:]
            m = np.zeros((q, q), dtype=np.int64)
            m[1:, 1:] = exp[(la[:, None] + la[None, :]) % (q - 1)]
            set_("mul_table", m)
        for arr in (self.exp, self.log, self.digits, self.neg_table, self.inv_table):
            arr.setflags(write=False)

    def __repr__(self):
        return f"GF({self.q})" if self.k == 1 else f"GF({self.p}^{self.k}; {self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- elementwise arithmetic (ints or int arrays) ----------------------

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.add_table is not None:
            return self.add_table[a, b]
        s = (self.digits[a] + self.digits[b]) % self.p
        return s @ (self.p ** np.arange(self.k, dtype=np.int64))

    def neg(self, a):
        return a if self.p == 2 else self.neg_table[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_table[a]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        """The image of the integer n under Z -> GF(q)."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def is_in_subfield(self, a: int, sub_k: int) -> bool:
        return frobenius(self, a, sub_k % self.k) == a if self.k > sub_k else True

    def subfield(self, sub_k: int) -> list[int]:
        """Indices of GF(p^sub_k) inside this field."""
        if self.k % sub_k:
            raise FieldError(f"{sub_k} does not divide {self.k}")
        return [a for a in range(self.q) if frobenius_power(self, a, sub_k) == a]


def _least_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise FieldError(p)


def conway_polynomial(p: int, k: int) -> tuple:
    if k == 1:
        return ((-_least_primitive_root(p)) % p, 1)
    try:
        return CONWAY[(p, k)]
    except KeyError:
        raise FieldError(f"no bundled Conway polynomial for GF({p}^{k}); pass a modulus") from None


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, k: int, modulus: tuple) -> FieldSpec:
    return FieldSpec(p, k, modulus)


def make_field(p: int, k: int = 1, modulus=None) -> FieldSpec:
    """Construct GF(p^k), by default under the bundled Conway polynomial.

    ``modulus`` is a coefficient sequence c_0..c_k (low to high), monic.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("exponent must be positive")
    if p**k > MAX_FIELD_SIZE:
        raise FieldError(f"GF({p}^{k}) exceeds the table size cap 2^16")
    if modulus is None:
        modulus = conway_polynomial(p, k)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1:
        raise FieldError(f"modulus has degree {len(modulus) - 1}, expected {k}")
    if modulus[-1] != 1:
        raise FieldError("modulus must be monic")
    if not is_irreducible(list(modulus), p):
        raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    return _cached_field(p, k, modulus)


def field_of_order(q: int) -> FieldSpec:
    p, k = prime_power(q)
    return make_field(p, k)


def arith(spec: FieldSpec, op: str, a: int, b: int | None = None) -> int:
    """Scalar field arithmetic: op is one of add, mul, neg, inv."""
    if op == "add":
        return int(spec.add(a, b))
    if op == "mul":
        return int(spec.mul(a, b))
    if op == "neg":
        return int(spec.neg(a))
    if op == "inv":
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(spec.inv_table[a])
    raise ValueError(f"unknown field operation {op!r}")


def frobenius_power(spec: FieldSpec, a, i: int):
    """a^(p^i) for any i >= 0 (works elementwise on arrays)."""
    e = pow(spec.p, i, spec.q - 1) if spec.q > 2 else 1
    a = np.asarray(a)
    out = spec.exp[(spec.log[a] * e) % (spec.q - 1)]
    out = np.where(a == 0, 0, out)
    return int(out) if out.ndim == 0 else out


def frobenius(spec: FieldSpec, a, i: int):
    if not 0 <= i < spec.k:
        raise ValueError(f"Frobenius exponent {i} outside [0, {spec.k})")
    return frobenius_power(spec, a, i)


def subfield_trace_norm(spec: FieldSpec, a: int, sub_k: int) -> tuple[int, int]:
    """Relative trace and norm GF(p^k) -> GF(p^sub_k), as elements of spec."""
    if sub_k < 1 or spec.k % sub_k:
        raise FieldError(f"{sub_k} does not divide {spec.k}")
    tr, nm = 0, 1
    for j in range(spec.k // sub_k):
        c = frobenius_power(spec, a, sub_k * j)
        tr = int(spec.add(tr, c))
        nm = int(spec.mul(nm, c))
    assert frobenius_power(spec, tr, sub_k) == tr and frobenius_power(spec, nm, sub_k) == nm
    return tr, nm


def embedding(small: FieldSpec, big: FieldSpec) -> np.ndarray:
    """Index map of a field homomorphism small -> big (same characteristic).

    The image of the generator x of ``small`` is chosen as the first root of
    small's modulus among the powers of big's primitive element compatible with
    Conway-style towers, then among all elements.
    """
    if small.p != big.p or big.k % small.k:
        raise FieldError(f"{small!r} does not embed in {big!r}")
    if small.k == 1:
        return np.arange(small.q, dtype=np.int64)

    def evaluate(x: int) -> int:
        acc = 0
        for c in reversed(small.modulus):
            acc = int(big.add(big.mul(acc, x), c))
        return acc

    e = (big.q - 1) // (small.q - 1)
    candidates = [big.power(big.primitive, e)] + list(range(big.q))
    root = next(x for x in candidates if evaluate(x) == 0)
    img = np.zeros(small.q, dtype=np.int64)
    for a in range(small.q):
        acc = 0
        for c in reversed([int(d) for d in small.digits[a]]):
            acc = int(big.add(big.mul(acc, root), c))
        img[a] = acc
    return img
