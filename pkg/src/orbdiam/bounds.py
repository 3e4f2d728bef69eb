"""Closed-form bounds on orbital diameters and the classification registry."""
from __future__ import annotations

import ast
import functools
import math
import operator
import re
from dataclasses import dataclass, field
from importlib import resources

import yaml

from .gf import prime_power

TOL = 1e-9


class BoundError(ValueError):
    pass


@dataclass
class Bound:
    name: str
    kind: str            # "lower" or "upper"
    value: int | None
    formula: str
    applicable: bool = True
    reason: str = ""
    raw: float | None = None

    def as_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "value": self.value, "formula": self.formula,
                "applicable": self.applicable, "reason": self.reason}


@dataclass
class BoundReport:
    subject: str
    bounds: list = field(default_factory=list)

    def add(self, b: Bound) -> None:
        self.bounds.append(b)

    def get(self, name: str) -> Bound | None:
        return next((b for b in self.bounds if b.name == name), None)

    def _values(self, kind):
        return [b.value for b in self.bounds if b.kind == kind and b.applicable and b.value is not None]

    @property
    def lower(self) -> int | None:
        vals = self._values("lower")
        return max(vals) if vals else None

    @property
    def upper(self) -> int | None:
        vals = self._values("upper")
        return min(vals) if vals else None

    def consistent(self) -> bool:
        lo, up = self.lower, self.upper
        return lo is None or up is None or lo <= up

    def merge(self, other: "BoundReport") -> "BoundReport":
        return BoundReport(self.subject, self.bounds + other.bounds)

    def admits(self, d: int) -> list:
        """Names of applicable bounds violated by diameter d."""
        bad = []
        for b in self.bounds:
            if not b.applicable or b.value is None:
                continue
            if (b.kind == "lower" and d < b.value) or (b.kind == "upper" and d > b.value):
                bad.append(b.name)
        return bad

    def as_dict(self) -> dict:
        return {"subject": self.subject, "lower": self.lower, "upper": self.upper,
                "consistent": self.consistent(), "bounds": [b.as_dict() for b in self.bounds]}


def ceil_tol(x: float) -> int:
    """Smallest integer d with d >= x, claiming d only when x exceeds d - 1 by more than TOL."""
    return math.ceil(x - TOL)


# -- counting bound ---------------------------------------------------------------

def lemma21_min_diam(q0: int, n: int, orbit_size: int, self_paired: bool) -> int:
    """Least d with q0^n <= 1 + sum_{i<=d} (c|O|)^i, c = 1 if O = -O or q0 even else 2."""
    if orbit_size < 1:
        raise BoundError("orbit_size must be positive")
    c = 1 if self_paired or q0 % 2 == 0 else 2
    x = c * orbit_size
    target = q0**n
    if x == 1:
        return target - 1
    total, term, d = 1, 1, 0
    while total < target:
        d += 1
        term *= x
        total += term
    return d


def log22_value(q0: int, k: int) -> float:
    x = (q0 - 1) * k
    return math.log(1 + x + x * x, q0)


def orbit_upper_bound(q0: int, index_or_aut: int) -> int:
    if index_or_aut < 1 or q0 < 2:
        raise BoundError("positive input required")
    return (q0 - 1) * index_or_aut


# -- q-analogues ------------------------------------------------------------------

def q_factorial(m: int, q: int) -> int:
    out = 1
    for i in range(1, m + 1):
        out *= (q**i - 1) // (q - 1)
    return out


def gaussian_binomial(m: int, k: int, q: int) -> int:
    if k < 0 or k > m:
        return 0
    return q_factorial(m, q) // (q_factorial(k, q) * q_factorial(m - k, q))


def parabolic_index_A(l: int, q: int, J) -> int:
    """|SL_{l+1}(q) : P_J|: the number of flags with subspace dimensions J."""
    J = sorted(set(J))
    if not J:
        raise BoundError("J must be a nonempty subset of {1..l}")
    if J[0] < 1 or J[-1] > l:
        raise BoundError(f"node labels must lie in 1..{l}")
    prime_power(q)
    cuts = [0] + J + [l + 1]
    out = q_factorial(l + 1, q)
    for a, b in zip(cuts, cuts[1:]):
        out //= q_factorial(b - a, q)
    return out


# -- group descriptors ------------------------------------------------------------

LIE_FAMILIES = ("A", "2A", "B", "C", "D", "2D", "3D4", "G2", "F4", "E6", "2E6", "E7", "E8",
                "2B2", "2G2", "2F4")
EXCEPTIONAL_UNTWISTED = ("G2", "F4", "E6", "E7", "E8", "2E6", "2F4")
TWISTED_SMALL = ("2B2", "2G2", "3D4")
CLASSICAL = ("A", "2A", "B", "C", "D", "2D")
# rank l of the ambient algebraic group for families with fixed rank
FIXED_RANK = {"3D4": 4, "G2": 2, "F4": 4, "E6": 6, "2E6": 6, "E7": 7, "E8": 8,
              "2B2": 2, "2G2": 2, "2F4": 4}
SPORADIC = ("M11", "M12", "M22", "M23", "M24", "J1", "J2", "J3", "J4", "HS", "McL", "He", "Ru",
            "Suz", "Co1", "Co2", "Co3", "Fi22", "Fi23", "Fi24'", "O'N", "Ly", "Th", "HN", "BM", "M")


@dataclass(frozen=True)
class GroupDesc:
    kind: str            # alt, lie, sporadic, tits
    name: str
    r: int | None = None
    family: str | None = None
    l: int | None = None
    q: int | None = None

    @property
    def p(self):
        return prime_power(self.q)[0] if self.q else None


_ALIASES = [
    (re.compile(r"^PSL(\d+)\((\d+)\)$"), lambda n, q: ("A", int(n) - 1, int(q))),
    (re.compile(r"^L(\d+)\((\d+)\)$"), lambda n, q: ("A", int(n) - 1, int(q))),
    (re.compile(r"^PSU(\d+)\((\d+)\)$"), lambda n, q: ("2A", int(n) - 1, int(q))),
    (re.compile(r"^U(\d+)\((\d+)\)$"), lambda n, q: ("2A", int(n) - 1, int(q))),
    (re.compile(r"^PSp(\d+)\((\d+)\)$"), lambda n, q: ("C", int(n) // 2, int(q))),
    (re.compile(r"^Sz\((\d+)\)$"), lambda q: ("2B2", 2, int(q))),
    (re.compile(r"^R\((\d+)\)$"), lambda q: ("2G2", 2, int(q))),
]
_LIE_RE = re.compile(r"^(2A|2D|2E6|2B2|2G2|2F4|3D4|G2|F4|E6|E7|E8|A|B|C|D)(\d*)\((\d+)\)$")

_NOT_SIMPLE = {("A", 1, 2), ("A", 1, 3), ("2A", 2, 2), ("C", 2, 2), ("B", 2, 2), ("G2", 2, 2),
               ("2B2", 2, 2), ("2G2", 2, 3), ("2F4", 4, 2)}


def parse_group(text: str) -> GroupDesc:
    """'A9' (alternating), 'G2(5)', 'A4(2)', '2B2(8)', 'PSL3(4)', 'M11', "2F4(2)'"."""
    s = text.strip().replace(" ", "")
    if s in ("2F4(2)'", "Tits"):
        return GroupDesc("tits", "2F4(2)'", family="2F4", l=4, q=2)
    if s in SPORADIC:
        return GroupDesc("sporadic", s)
    m = re.fullmatch(r"(?:A|Alt)(\d+)", s)
    if m:
        r = int(m.group(1))
        if r < 5:
            raise BoundError(f"A{r} is not simple")
        return GroupDesc("alt", f"A{r}", r=r)
    for rx, conv in _ALIASES:
        m = rx.fullmatch(s)
        if m:
            fam, l, q = conv(*m.groups())
            return _lie(fam, l, q)
    m = _LIE_RE.fullmatch(s)
    if m:
        fam, lstr, q = m.group(1), m.group(2), int(m.group(3))
        if fam in FIXED_RANK:
            return _lie(fam, FIXED_RANK[fam], q)
        if not lstr:
            raise BoundError(f"missing rank in {text!r}")
        return _lie(fam, int(lstr), q)
    raise BoundError(f"unsupported group descriptor {text!r}")


def _lie(fam: str, l: int, q: int) -> GroupDesc:
    p, f = prime_power(q)
    minimum = {"A": 1, "2A": 2, "B": 2, "C": 2, "D": 4, "2D": 4}
    if fam in minimum and l < minimum[fam]:
        raise BoundError(f"{fam}{l} needs rank at least {minimum[fam]}")
    if fam == "2B2" and (p != 2 or f % 2 == 0):
        raise BoundError("2B2(q) needs q an odd power of 2")
    if fam == "2F4" and (p != 2 or f % 2 == 0):
        raise BoundError("2F4(q) needs q an odd power of 2")
    if fam == "2G2" and (p != 3 or f % 2 == 0):
        raise BoundError("2G2(q) needs q an odd power of 3")
    if (fam, l, q) in _NOT_SIMPLE:
        raise BoundError(f"{fam}{l}({q}) is not simple")
    name = f"{fam}({q})" if fam in FIXED_RANK else f"{fam}{l}({q})"
    return GroupDesc("lie", name, family=fam, l=l, q=q)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _lie_order_and_out(fam: str, l: int, q: int) -> tuple:
    """(|S|, |Out(S)|) for a finite simple group of Lie type."""
    p, f = prime_power(q)
    g = math.gcd
    if fam == "A":
        d = g(l + 1, q - 1)
        o = q ** (l * (l + 1) // 2) * _prod(q**i - 1 for i in range(2, l + 2)) // d
        return o, d * f * (2 if l >= 2 else 1)
    if fam == "2A":
        d = g(l + 1, q + 1)
        o = q ** (l * (l + 1) // 2) * _prod(q**i - (-1) ** i for i in range(2, l + 2)) // d
        return o, d * 2 * f
    if fam in ("B", "C"):
        d = g(2, q - 1)
        o = q ** (l * l) * _prod(q ** (2 * i) - 1 for i in range(1, l + 1)) // d
        return o, d * f * (2 if l == 2 and p == 2 else 1)
    if fam == "D":
        d = g(4, q**l - 1)
        o = q ** (l * (l - 1)) * (q**l - 1) * _prod(q ** (2 * i) - 1 for i in range(1, l)) // d
        return o, d * f * (6 if l == 4 else 2)
    if fam == "2D":
        d = g(4, q**l + 1)
        o = q ** (l * (l - 1)) * (q**l + 1) * _prod(q ** (2 * i) - 1 for i in range(1, l)) // d
        return o, d * 2 * f
    if fam == "3D4":
        return q**12 * (q**8 + q**4 + 1) * (q**6 - 1) * (q**2 - 1), 3 * f
    if fam == "G2":
        return q**6 * (q**6 - 1) * (q**2 - 1), f * (2 if p == 3 else 1)
    if fam == "F4":
        return q**24 * (q**12 - 1) * (q**8 - 1) * (q**6 - 1) * (q**2 - 1), f * (2 if p == 2 else 1)
    if fam == "E6":
        d = g(3, q - 1)
        return q**36 * _prod(q**i - 1 for i in (12, 9, 8, 6, 5, 2)) // d, d * f * 2
    if fam == "2E6":
        d = g(3, q + 1)
        o = q**36 * (q**12 - 1) * (q**9 + 1) * (q**8 - 1) * (q**6 - 1) * (q**5 + 1) * (q**2 - 1) // d
        return o, d * 2 * f
    if fam == "E7":
        d = g(2, q - 1)
        return q**63 * _prod(q**i - 1 for i in (18, 14, 12, 10, 8, 6, 2)) // d, d * f
    if fam == "E8":
        return q**120 * _prod(q**i - 1 for i in (30, 24, 20, 18, 14, 12, 8, 2)), f
    if fam == "2B2":
        return q**2 * (q**2 + 1) * (q - 1), f
    if fam == "2G2":
        return q**3 * (q**3 + 1) * (q - 1), f
    if fam == "2F4":
        return q**12 * (q**6 + 1) * (q**4 - 1) * (q**3 + 1) * (q - 1), f
    raise BoundError(f"unsupported Lie family {fam!r}")


def aut_order(descriptor) -> int:
    g = descriptor if isinstance(descriptor, GroupDesc) else parse_group(descriptor)
    if g.kind == "alt":
        return 1440 if g.r == 6 else math.factorial(g.r)
    if g.kind == "tits":
        return _lie_order_and_out("2F4", 4, 2)[0]
    if g.kind == "sporadic":
        table = registry()["sporadic_aut_orders"]
        if g.name not in table:
            raise BoundError(f"no automorphism group order stored for {g.name}")
        return int(table[g.name])
    order, out = _lie_order_and_out(g.family, g.l, g.q)
    return order * out


# -- analytic lower bounds ----------------------------------------------------------

def fdpm_dim(r: int, p: int) -> int:
    return r - 2 if r % p == 0 else r - 1


def analytic_lower_bounds(descriptor, n: int | None = None, q0: int | None = None, *,
                          module: str = "other", characteristic: str | None = None,
                          orbit_size: int | None = None, self_paired: bool = False) -> BoundReport:
    """Evaluate every lower-bound formula that applies to the instance.

    module: "fdpm", "natural" or "other"; characteristic: "defining" or "cross"
    for groups of Lie type.  Inapplicable formulas are kept with a reason.
    """
    g = descriptor if isinstance(descriptor, GroupDesc) else parse_group(descriptor)
    p0 = prime_power(q0)[0] if q0 else None
    if n is None and g.kind == "alt" and module == "fdpm" and p0:
        n = fdpm_dim(g.r, p0)
    rep = BoundReport(f"{g.name}" + (f" n={n}" if n else "") + (f" q0={q0}" if q0 else ""))

    # growth of |Aut|: n <= 1 + d log2 |Aut|
    try:
        aut = aut_order(g)
    except BoundError as e:
        aut = None
        rep.add(Bound("eq3", "lower", None, "(n-1)/log2|Aut|", False, str(e)))
    if aut is not None:
        if n is None:
            rep.add(Bound("eq3", "lower", None, "(n-1)/log2|Aut|", False, "dimension not given"))
        else:
            x = (n - 1) / math.log2(aut)
            rep.add(Bound("eq3", "lower", max(1, ceil_tol(x)), "(n-1)/log2|Aut|", raw=x))

    if orbit_size is not None and n is not None and q0 is not None:
        rep.add(Bound("lemma21_min_diam", "lower", lemma21_min_diam(q0, n, orbit_size, self_paired),
                      "q0^n <= 1 + sum_i ((2,q0-1)|O|)^i"))

    if g.kind == "alt":
        _alt_bounds(rep, g.r, p0, module)
    else:
        rep.add(Bound("permalt", "lower", None, "", False, "not an alternating group"))
        rep.add(Bound("lowerdiamalt", "lower", None, "", False, "not an alternating group"))

    if g.kind in ("lie", "tits"):
        cross = characteristic == "cross" or (characteristic is None and p0 is not None and p0 != g.p)
        if characteristic is None and p0 is None:
            cross = False
        if cross:
            _lie_cross(rep, g)
            rep.add(Bound("lhalf", "lower", None, "", False, "cross characteristic"))
        else:
            rep.add(Bound("lowerdiamlie", "lower", None, "", False, "defining characteristic"))
            _lhalf(rep, g, n, module)
    else:
        rep.add(Bound("lowerdiamlie", "lower", None, "", False, "not of Lie type"))
        rep.add(Bound("lhalf", "lower", None, "", False, "not of Lie type"))
    return rep


def _alt_bounds(rep: BoundReport, r: int, p: int | None, module: str) -> None:
    if module == "fdpm":
        if p is None:
            rep.add(Bound("permalt", "lower", None, "", False, "field not given"))
        elif r % p:
            x = (r - 1) / 2
            rep.add(Bound("permalt", "lower", ceil_tol(x), "(r-1)/2, p not dividing r", raw=x))
        else:
            x = (r - 2) / 4
            rep.add(Bound("permalt", "lower", max(1, ceil_tol(x)), "(r-2)/4, p dividing r", raw=x))
        rep.add(Bound("lowerdiamalt", "lower", None, "", False, "fully deleted module"))
        return
    rep.add(Bound("permalt", "lower", None, "", False, "not the fully deleted module"))
    if r >= 15:
        x = (r * r - 5 * r - 2) / (2 * r * math.log2(r))
        rep.add(Bound("lowerdiamalt", "lower", ceil_tol(x), "(r^2-5r-2)/(2r log2 r)", raw=x))
    else:
        small = registry()["lowerdiamalt_small"]
        rep.add(Bound("lowerdiamalt", "lower", int(small[r]), "small-degree table"))


def _lie_cross(rep: BoundReport, g: GroupDesc) -> None:
    exc = registry()["lowerdiamlie_exceptions"]
    key = g.name if g.kind == "tits" else g.name
    if key in exc:
        rep.add(Bound("lowerdiamlie", "lower", int(exc[key]), f"exceptional case {key}"))
        return
    r, l, fam = g.q, g.l, g.family
    lr = math.log2(r)
    if fam in EXCEPTIONAL_UNTWISTED:
        x, form = r**l / (l * lr), "r^l/(l log2 r)"
    elif fam in TWISTED_SMALL:
        x, form = r ** (l - 1) / ((l - 1) * lr), "r^(l-1)/((l-1) log2 r)"
    else:
        x, form = (r**l - 3) / ((l + 1) ** 3 * lr), "(r^l-3)/((l+1)^3 log2 r)"
    rep.add(Bound("lowerdiamlie", "lower", max(1, ceil_tol(x)), form, raw=x))


def _lhalf(rep: BoundReport, g: GroupDesc, n: int | None, module: str) -> None:
    if module == "natural":
        rep.add(Bound("lhalf", "lower", None, "", False, "natural module excluded"))
        return
    l = g.l
    best = Bound("lhalf", "lower", max(1, l // 2), "floor(l/2)")
    if n is not None and n > (2 * l + 1) ** 2:
        x = l * l / 18
        v = ceil_tol(x)
        if v > best.value:
            best = Bound("lhalf", "lower", v, "l^2/18 for n > (2l+1)^2", raw=x)
    rep.add(best)


def upper_bounds(n: int, rank: int, has_scalars: bool) -> BoundReport:
    if rank < 2:
        raise BoundError("rank must be at least 2")
    rep = BoundReport(f"n={n} rank={rank}")
    rep.add(Bound("rankbound", "upper", rank - 1, "rank - 1"))
    rep.add(Bound("upperbound", "upper", n if has_scalars else None, "n (scalars present)",
                  has_scalars, "" if has_scalars else "scalar matrices not present"))
    return rep


# -- registry ---------------------------------------------------------------------

@functools.lru_cache(maxsize=1)
def registry() -> dict:
    text = resources.files("orbdiam").joinpath("data/registry.yaml").read_text()
    data = yaml.safe_load(text)
    for e in data["entries"]:
        if e["table"] not in data["tables"]:
            raise BoundError(f"entry {e['id']} refers to unknown table {e['table']}")
    return data


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.FloorDiv: operator.floordiv, ast.Pow: operator.pow,
           ast.Mod: operator.mod}
_CMPOPS = {ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt, ast.LtE: operator.le,
           ast.Gt: operator.gt, ast.GtE: operator.ge, ast.In: lambda a, b: a in b}


def evaluate(expr, env: dict):
    """Evaluate a stored table expression with a small whitelisted grammar."""
    if isinstance(expr, (int, float)):
        return expr
    p = env.get("p")
    funcs = {"floor": math.floor, "ceil": math.ceil, "gcd": math.gcd, "binom": math.comb,
             "log2": math.log2, "eps": lambda x: 1 if p and x % p == 0 else 0}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env or env[node.id] is None:
                raise KeyError(node.id)
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BoolOp):
            vals = (ev(v) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = ev(comp)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.IfExp):
            return ev(node.body) if ev(node.test) else ev(node.orelse)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in funcs:
            return funcs[node.func.id](*[ev(a) for a in node.args])
        if isinstance(node, ast.Tuple):
            return tuple(ev(e) for e in node.elts)
        if isinstance(node, ast.Dict):
            return {ev(k): ev(v) for k, v in zip(node.keys, node.values)}
        if isinstance(node, ast.Subscript):
            return ev(node.value)[ev(node.slice)]
        raise BoundError(f"unsupported expression element {ast.dump(node)}")

    return ev(ast.parse(str(expr), mode="eval"))


@dataclass
class RegistryEntry:
    id: str
    table: str
    match: dict
    n: int | None = None
    rank: object = None
    diameter: object = None
    diameter_lower: int | None = None
    diameter_upper: int | None = None
    possible_le2: bool = False
    requires: dict = field(default_factory=dict)
    requirements_met: bool = True
    note: str = ""

    @property
    def anchor(self) -> str:
        return self.table

    def as_dict(self) -> dict:
        return {"id": self.id, "table": self.table, "n": self.n, "rank": self.rank,
                "diameter": self.diameter, "diameter_lower": self.diameter_lower,
                "diameter_upper": self.diameter_upper, "possible_le2": self.possible_le2,
                "requires": self.requires, "requirements_met": self.requirements_met}

    def admits(self, d: int) -> bool:
        if self.diameter is not None:
            ok = d in self.diameter if isinstance(self.diameter, list) else d == self.diameter
            if not ok:
                return False
        if self.diameter_lower is not None and d < self.diameter_lower:
            return False
        if self.diameter_upper is not None and d > self.diameter_upper:
            return False
        return True


def _query_env(query: dict) -> dict:
    env = dict(query)
    for key in ("q", "q0"):
        if env.get(key) is not None and env.get("p") is None:
            env["p"] = prime_power(env[key])[0]
    if env.get("q0") is None and env.get("q") is not None and env.get("group") != "Alt":
        env["q0"] = env["q"]
    if env.get("l") is None and env.get("group") in FIXED_RANK:
        env["l"] = FIXED_RANK[env["group"]]
    return env


def _matches(entry: dict, env: dict) -> bool:
    for key, want in entry["match"].items():
        have = env.get(key)
        if have is None:
            return False
        allowed = want if isinstance(want, list) else [want]
        if have not in allowed and str(have) not in [str(a) for a in allowed]:
            return False
    if "when" in entry:
        try:
            if not evaluate(entry["when"], env):
                return False
        except KeyError:
            return False
    return True


def _num(value, env):
    if value is None:
        return None
    if isinstance(value, list):
        return [_num(v, env) for v in value]
    if value == "natural":
        return env.get("n")
    try:
        return evaluate(value, env)
    except KeyError:
        return None


def _build_entry(raw: dict, env: dict) -> RegistryEntry:
    lower = _num(raw.get("diameter_lower"), env)
    if isinstance(lower, float):
        lower = ceil_tol(lower)
    upper = _num(raw.get("diameter_upper"), env)
    requires = raw.get("requires", {})
    met = True
    if "scalars" in requires:
        want, have = requires["scalars"], env.get("scalars")
        met = bool(have) if want is True else have == want
    return RegistryEntry(raw["id"], raw["table"], raw["match"], _num(raw.get("n"), env),
                         raw.get("rank"), raw.get("diameter") if not isinstance(raw.get("diameter"), str)
                         else _num(raw["diameter"], env),
                         lower, upper, bool(raw.get("possible_le2", False)), requires, met,
                         raw.get("note", ""))


def registry_lookup(**query) -> list:
    """All registry entries matching the query (keys: group, module, weight, r, l, n, q, q0, scalars, cover)."""
    env = _query_env(query)
    return [_build_entry(e, env) for e in registry()["entries"] if _matches(e, env)]


def registry_expected(descriptor=None, **query) -> RegistryEntry | None:
    """First stored expectation for the instance, or None.

    ``descriptor`` may be a dict of query keys or a group string such as
    '2B2(8)' or 'A6'; keyword arguments refine it.
    """
    if isinstance(descriptor, dict):
        query = {**descriptor, **query}
    elif isinstance(descriptor, str):
        g = parse_group(descriptor)
        base = {"alt": {"group": "Alt", "r": g.r}, "sporadic": {"group": g.name}}.get(
            g.kind, {"group": g.family, "l": g.l, "q": g.q})
        query = {**base, **query}
    if query.get("group") == "Alt" and query.get("module") == "fdpm" and query.get("n") is None:
        q0 = query.get("q0")
        if q0:
            query["n"] = fdpm_dim(query["r"], prime_power(q0)[0])
    if query.get("module") == "natural" and query.get("weight") is None and \
            query.get("group") in LIE_FAMILIES:
        query["weight"] = "omega1"
    hits = registry_lookup(**query)
    if not hits:
        return None
    # prefer entries with a definite value
    hits.sort(key=lambda e: (e.diameter is None, e.diameter_lower is None))
    return hits[0]
