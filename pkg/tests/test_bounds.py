import math

import pytest
from hypothesis import given, strategies as st

from orbdiam.bounds import (
    BoundError,
    aut_order,
    analytic_lower_bounds,
    evaluate,
    gaussian_binomial,
    lemma21_min_diam,
    log22_value,
    orbit_upper_bound,
    parabolic_index_A,
    parse_group,
    registry,
    registry_expected,
    registry_lookup,
    upper_bounds,
)

# group orders from standard references
KNOWN_AUT = {
    "A5": 120, "A6": 1440, "A7": 5040, "A12": 479001600,
    "PSL2(8)": 1512, "PSL2(9)": 1440, "PSL3(2)": 336, "PSL3(4)": 241920,
    "PSU3(3)": 12096, "PSU4(2)": 51840, "PSp4(3)": 51840, "Sz(8)": 87360, "Sz(32)": 162688000,
    "G2(3)": 8491392, "G2(4)": 503193600, "3D4(2)": 634023936, "2F4(2)'": 35942400,
    "M11": 7920, "M12": 190080, "J2": 1209600,
}


@pytest.mark.parametrize("name,order", KNOWN_AUT.items())
def test_aut_orders(name, order):
    assert aut_order(name) == order


def test_aut_order_isomorphisms():
    assert aut_order("PSL2(4)") == aut_order("PSL2(5)") == aut_order("A5")
    assert aut_order("PSL4(2)") == aut_order("A8")
    assert aut_order("B3(2)") == aut_order("C3(2)")


@pytest.mark.parametrize("bad", ["A4", "PSL2(2)", "Sz(2)", "G2(2)", "Foo", "2B2(4)", "D3(2)"])
def test_unsupported_groups(bad):
    with pytest.raises(BoundError):
        aut_order(bad)


def test_lemma21_examples():
    assert lemma21_min_diam(2, 4, 5, True) == 2
    assert lemma21_min_diam(3, 4, 80, True) == 1
    assert lemma21_min_diam(3, 13, 140, False) >= 3
    assert lemma21_min_diam(2, 3, 1, True) == 7
    with pytest.raises(BoundError):
        lemma21_min_diam(2, 3, 0, True)


def _lemma21_direct(q0, n, size, paired):
    c = 1 if paired or q0 % 2 == 0 else 2
    d = 0
    while q0**n > 1 + sum((c * size) ** i for i in range(1, d + 1)):
        d += 1
    return d


@given(st.sampled_from([2, 3, 4, 5, 7, 9]), st.integers(1, 12), st.integers(1, 5000), st.booleans())
def test_lemma21_matches_direct_sum(q0, n, size, paired):
    assert lemma21_min_diam(q0, n, size, paired) == _lemma21_direct(q0, n, size, paired)


@given(st.sampled_from([2, 3, 5]), st.integers(2, 10), st.integers(1, 2000), st.booleans())
def test_lemma21_monotone(q0, n, size, paired):
    d = lemma21_min_diam(q0, n, size, paired)
    assert lemma21_min_diam(q0, n, size + 1, paired) <= d
    assert lemma21_min_diam(q0, n + 1, size, paired) >= d
    # O = -O means a smaller connection set, hence a larger bound
    assert lemma21_min_diam(q0, n, size, True) >= lemma21_min_diam(q0, n, size, False)


def test_log22_maximal_at_two():
    ks = [60, 61, 100, 999, 10**4, 123457, 10**6]
    for k in ks:
        top = log22_value(2, k)
        for q0 in range(3, 65):
            assert log22_value(q0, k) <= top + 1e-9


def test_parabolic_index_closed_form():
    for l in range(2, 9):
        for q in (2, 3, 4, 5):
            want = (q**l - 1) * (q ** (l + 1) - 1) // (q - 1) ** 2
            assert parabolic_index_A(l, q, {1, l}) == want
    assert parabolic_index_A(4, 2, {1, 4}) == 465
    assert parabolic_index_A(4, 2, {2}) == 155 == gaussian_binomial(5, 2, 2)
    with pytest.raises(BoundError):
        parabolic_index_A(4, 2, set())
    with pytest.raises(BoundError):
        parabolic_index_A(4, 2, {5})


def _subspace_count(n, k, p):
    """Count k-dim subspaces of GF(p)^n by counting ordered bases."""
    num = 1
    den = 1
    for i in range(k):
        num *= p**n - p**i
        den *= p**k - p**i
    return num // den


def test_gaussian_binomial_counts_subspaces():
    for n in range(1, 7):
        for k in range(n + 1):
            assert gaussian_binomial(n, k, 3) == _subspace_count(n, k, 3)


def test_orbit_upper_bound():
    assert orbit_upper_bound(2, 155) == 155
    assert orbit_upper_bound(4, 465) == 1395
    with pytest.raises(BoundError):
        orbit_upper_bound(2, 0)


def test_analytic_examples():
    r = analytic_lower_bounds("A9", q0=2, module="fdpm")
    assert r.get("permalt").value == 4 and r.lower == 4
    assert analytic_lower_bounds("G2(5)", characteristic="cross").get("lowerdiamlie").value == 4
    b = analytic_lower_bounds("A20", n=100, q0=2).get("lowerdiamalt")
    assert abs(b.raw - 298 / (40 * math.log2(20))) < 1e-12 and b.value == 2
    # p | r: (r-2)/4
    assert analytic_lower_bounds("A10", q0=2, module="fdpm").get("permalt").value == 2
    assert analytic_lower_bounds("A6", q0=2, module="fdpm").get("permalt").value == 1


def test_lowerdiamlie_parts():
    assert analytic_lower_bounds("2B2(8)", characteristic="cross").get("lowerdiamlie").value == 2
    assert analytic_lower_bounds("2B2(32)", characteristic="cross").get("lowerdiamlie").value == 5
    x = 128 / (1 * 7)
    assert analytic_lower_bounds("2B2(128)", characteristic="cross").get("lowerdiamlie").value == math.ceil(x)
    x = 7**2 / (2 * math.log2(7))
    assert analytic_lower_bounds("G2(7)", characteristic="cross").get("lowerdiamlie").value == 8
    x = (3**3 - 3) / (4**3 * math.log2(3))
    assert analytic_lower_bounds("PSL4(3)", characteristic="cross").get("lowerdiamlie").value == max(1, math.ceil(x))


def test_lhalf_takes_maximum():
    r = analytic_lower_bounds("A9(2)", n=10**4, q0=2, characteristic="defining")
    assert r.get("lhalf").value == max(9 // 2, math.ceil(81 / 18))
    r = analytic_lower_bounds("A12(2)", n=10**4, q0=2, characteristic="defining")
    assert r.get("lhalf").value == 8  # 144/18 beats 6
    r = analytic_lower_bounds("A12(2)", n=13, q0=2, characteristic="defining", module="natural")
    assert not r.get("lhalf").applicable


def test_tolerance_is_conservative():
    from orbdiam.bounds import ceil_tol
    assert ceil_tol(2.0 + 1e-12) == 2
    assert ceil_tol(2.0 + 1e-6) == 3
    assert ceil_tol(1.72) == 2


def test_upper_bounds():
    r = upper_bounds(4, 2, True)
    assert r.get("rankbound").value == 1 and r.get("upperbound").value == 4
    r = upper_bounds(4, 5, False)
    assert not r.get("upperbound").applicable and r.upper == 4
    with pytest.raises(BoundError):
        upper_bounds(4, 1, True)


def test_registry_examples():
    e = registry_expected("2B2(8)", module="natural", scalars=True)
    assert (e.rank, e.diameter, e.table) == (3, 2, "defchar")
    e = registry_expected({"group": "Alt", "r": 6, "module": "fdpm", "q0": 2})
    assert e.diameter == 1 and e.table == "classification"
    e = registry_expected("M11", n=5, q0=3, scalars=True)
    assert e.diameter == 2
    assert registry_expected({"group": "Alt", "r": 7, "module": "fdpm", "q0": 2}) is None
    e = registry_expected("M12", n=20, q0=2)
    assert e.diameter_lower == 3
    assert registry_expected("M12", n=10, q0=2) is None


def test_permalt_corrected_condition_in_registry():
    e = registry_expected({"group": "Alt", "r": 5, "module": "fdpm", "q0": 5, "scalars": 4})
    assert e.diameter == 2 and e.requirements_met
    e = registry_expected({"group": "Alt", "r": 5, "module": "fdpm", "q0": 5, "scalars": 2})
    assert not e.requirements_met


def test_registry_tables_are_known_and_expressions_evaluate():
    data = registry()
    assert data["version"] == 1
    for e in data["entries"]:
        assert e["table"] in data["tables"]
    env = {"l": 5, "p": 3, "q": 3, "q0": 3}
    for e in data["entries"]:
        for key in ("n", "diameter_lower"):
            if isinstance(e.get(key), str) and e[key] != "natural":
                try:
                    evaluate(e[key], env)
                except (KeyError, IndexError):
                    pass


def test_expression_evaluator_is_restricted():
    assert evaluate("binom(l+1, 3)", {"l": 5}) == 20
    assert evaluate("2-eps(2)", {"p": 2}) == 1
    with pytest.raises(BoundError):
        evaluate("__import__('os')", {})


def test_table_formulas():
    e = registry_lookup(group="A", l=5, weight="omega2", q=2)[0]
    assert e.n == 15 and e.diameter_lower == 3
    e = registry_lookup(group="A", l=8, weight="other", q=2)[0]
    assert e.diameter_lower == 4
    e = registry_lookup(group="A", l=12, weight="other", q=2)[0]
    assert e.diameter_lower == math.ceil(12 * 11 * 10 / (12 * 14))
    e = registry_lookup(group="C", l=3, weight="omega2", q=2)[0]
    assert e.n == 14
    e = registry_lookup(group="C", l=3, weight="omega2", q=3)[0]
    assert e.n == 2 * 9 - 3 - 1 - 1  # p | l
    e = registry_lookup(group="G2", weight="min", q=2)[0]
    assert e.diameter_lower == 1
    e = registry_lookup(group="E8", weight="other", q=2)[0]
    assert e.diameter_lower == 29


# instances (group, module, n, q0, characteristic, registry query) covered by stored diameters
SWEEP = [
    ("A4(2)", "other", 10, 2, "defining", dict(group="A", l=4, weight="omega2", q=2, scalars=True)),
    ("2B2(8)", "natural", 4, 8, "defining", dict(group="2B2", weight="omega1", q=8, scalars=True)),
    ("G2(4)", "other", 6, 4, "defining", dict(group="G2", weight="omega1", q=4, scalars=True)),
    ("G2(3)", "other", 7, 3, "defining", dict(group="G2", weight="omega1", q=3, scalars=True)),
    ("D5(2)", "other", 16, 2, "defining", dict(group="D", l=5, weight="omega5", q=2, scalars=True)),
    ("B4(3)", "other", 16, 3, "defining", dict(group="B", l=4, weight="omega4", q=3, scalars=True)),
    ("B3(3)", "other", 8, 3, "defining", dict(group="B", l=3, weight="omega3", q=3, scalars=True)),
    ("M11", "other", 5, 3, None, dict(group="M11", n=5, q0=3, scalars=True)),
    ("M24", "other", 11, 2, None, dict(group="M24", n=11, q0=2, scalars=True)),
    ("Suz", "other", 12, 3, None, dict(group="Suz", n=12, q0=3, scalars=True)),
    ("J2", "other", 6, 4, None, dict(group="J2", n=6, q0=4, scalars=True)),
    ("J2", "other", 6, 5, None, dict(group="J2", n=6, q0=5, scalars=True)),
    ("A9", "other", 8, 2, None, dict(group="Alt", cover="A9", n=8, q0=2, scalars=True)),
    ("A8", "other", 4, 2, None, dict(group="Alt", cover="A8", n=4, q0=2, scalars=True)),
    ("A7", "other", 4, 7, None, dict(group="Alt", cover="2.A7", n=4, q0=7, scalars=True)),
    ("A7", "other", 3, 25, None, dict(group="Alt", cover="3.A7", n=3, q0=25, scalars=True)),
    ("A6", "other", 3, 4, None, dict(group="Alt", cover="3.A6", n=3, q0=4, scalars=True)),
    ("A6", "other", 3, 9, None, dict(group="Alt", cover="A6", n=3, q0=9, scalars=True)),
    ("A5", "other", 3, 9, None, dict(group="Alt", cover="A5", n=3, q0=9, scalars=True)),
] + [(f"A{r}", "fdpm", None, q0, None, dict(group="Alt", r=r, module="fdpm", q0=q0))
     for r, q0 in [(6, 2), (5, 2), (8, 2), (10, 2), (6, 3), (5, 5), (5, 3), (5, 4), (5, 7)]]


@pytest.mark.parametrize("group,module,n,q0,char,query", SWEEP)
def test_registry_consistent_with_analytic_bounds(group, module, n, q0, char, query):
    entry = registry_expected(query)
    assert entry is not None
    rep = analytic_lower_bounds(group, n, q0, module=module, characteristic=char)
    lo = rep.lower
    for d in ([entry.diameter] if not isinstance(entry.diameter, list) else entry.diameter):
        if d is not None:
            assert lo is None or d >= lo, (entry.id, d, lo)
    if entry.diameter_upper is not None:
        assert lo is None or entry.diameter_upper >= lo


def test_parse_group_forms():
    g = parse_group("2B2(8)")
    assert (g.family, g.l, g.q) == ("2B2", 2, 8)
    assert parse_group("A9").kind == "alt"
    assert parse_group("A4(2)").family == "A"
    assert parse_group("PSU3(3)").family == "2A"
