"""Brute-force Conway polynomial search for small (p, k).

Prints the table bundled in ``orbdiam/gf.py``.  Slow for large p**k; only
meant to be run by hand when the bundled table changes.

    python scripts/conway_search.py 2:1-8 3:1-6 5:1-4 7:1-3 11:1-2 13:1-2
"""
import itertools
import sys


def polymulmod(a, b, mod, p):
    k = len(mod) - 1
    res = [0] * (2 * k)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    for d in range(len(res) - 1, k - 1, -1):
        c = res[d]
        if c:
            for i in range(k + 1):
                res[d - k + i] = (res[d - k + i] - c * mod[i]) % p
    return res[:k]


def polypow(base, e, mod, p):
    k = len(mod) - 1
    result = [1] + [0] * (k - 1)
    while e:
        if e & 1:
            result = polymulmod(result, base, mod, p)
        base = polymulmod(base, base, mod, p)
        e >>= 1
    return result


def prime_factors(n):
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def is_primitive(mod, p):
    """x generates the multiplicative group of GF(p)[x]/(mod)."""
    k = len(mod) - 1
    order = p**k - 1
    x = [0, 1] + [0] * (k - 2) if k > 1 else [(-mod[0]) % p]
    one = [1] + [0] * (k - 1)
    if k == 1:
        return all(pow(x[0], order // r, p) != 1 for r in prime_factors(order)) and x[0] != 0
    if polypow(x, order, mod, p) != one:
        return False
    return all(polypow(x, order // r, mod, p) != one for r in prime_factors(order))


def evaluate(poly, elem, mod, p):
    """poly (coeffs in GF(p)) evaluated at elem of GF(p)[x]/(mod)."""
    k = len(mod) - 1
    acc = [0] * k
    for c in reversed(poly):
        acc = polymulmod(acc, elem, mod, p) if k > 1 else [(acc[0] * elem[0]) % p]
        acc[0] = (acc[0] + c) % p
    return acc


def conway(p, k, table):
    for tail in itertools.product(range(p), repeat=k):
        # tail = (a_{k-1}, ..., a_0); coefficient of x^{k-i} is (-1)^i a_{k-i}
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        for i, a in enumerate(tail, start=1):
            coeffs[k - i] = ((-1) ** i * a) % p
        if coeffs[0] == 0 or not is_primitive(coeffs, p):
            continue
        ok = True
        for d in range(1, k):
            if k % d:
                continue
            root = [0, 1] + [0] * (k - 2) if k > 1 else None
            e = (p**k - 1) // (p**d - 1)
            img = polypow(root, e, coeffs, p)
            if any(evaluate(table[(p, d)], img, coeffs, p)):
                ok = False
                break
        if ok:
            return coeffs
    raise ValueError((p, k))


def main(argv):
    table = {}
    for spec in argv:
        p, ks = spec.split(":")
        lo, hi = ks.split("-")
        for k in range(int(lo), int(hi) + 1):
            table[(int(p), k)] = conway(int(p), k, table)
            print(f"    ({p}, {k}): {tuple(table[(int(p), k)])},")


if __name__ == "__main__":
    main(sys.argv[1:] or ["2:1-8", "3:1-5", "5:1-3", "7:1-2"])
