"""Command-line interface: rep, diam, verify and bounds."""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import tool_version
from .bounds import (
    BoundError,
    BoundReport,
    analytic_lower_bounds,
    parse_group,
    registry_expected,
    upper_bounds,
)
from .gf import FieldError
from .linalg import DEFAULT_SPACE_CAP, SpaceCapError, Vec, check_space, coords_to_indices, indices_to_coords
from .orbgraph import STRATEGIES, DisconnectedError, distance_to, orbdiam_all, two_step_cover
from .orbits import OrbitData, orbit_of, orbit_partition
from .repfactory import (
    DESCRIPTOR_GRAMMAR,
    DescriptorError,
    GenFileError,
    GroupRep,
    RepError,
    adjoin_scalars,
    build,
    fdpm_coords,
    fully_deleted_rep,
    import_rep,
    ree_stabilizer_rep,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- cache ------------------------------------------------------------------------------

def rep_hash(rep: GroupRep) -> str:
    """Content hash of field, dimension and the sorted generator matrices."""
    F = rep.field
    h = hashlib.sha256()
    h.update(f"{F.p},{F.k},{','.join(map(str, F.modulus))};{rep.n};".encode())
    blobs = sorted(np.ascontiguousarray(g.a, dtype=np.int64).tobytes() for g in rep.generators)
    for b in blobs:
        h.update(b)
    return h.hexdigest()


def cache_dir() -> Path | None:
    d = os.environ.get("ORBDIAM_CACHE")
    return Path(d) if d else None


def _cache_load(key: str):
    d = cache_dir()
    if d is None:
        return None
    path = d / f"{key}.json"
    if path.exists():
        return json.loads(path.read_text())
    return None


def _cache_store(key: str, payload: dict) -> None:
    d = cache_dir()
    if d is None:
        return
    d.mkdir(parents=True, exist_ok=True)
    tmp = d / f".{key}.tmp"
    tmp.write_text(json.dumps(payload, sort_keys=True))
    tmp.replace(d / f"{key}.json")


# -- diameter reports ---------------------------------------------------------------------

def diameter_core(rep: GroupRep, strategy: str = "auto", cap: int | None = DEFAULT_SPACE_CAP,
                  jobs: int = 1, use_cache: bool = True) -> dict:
    """Orbit and diameter data for a rep, served from the cache when possible."""
    check_space(rep.field, rep.n, cap)
    key = f"{rep_hash(rep)}-{strategy}"
    if use_cache:
        hit = _cache_load(key)
        if hit is not None:
            return hit
    t0 = time.perf_counter()
    part = orbit_partition(rep, cap)
    t1 = time.perf_counter()
    res = orbdiam_all(rep, strategy, cap, jobs, part)
    t2 = time.perf_counter()
    core = {
        "rank": res.rank,
        "rank_undirected": res.rank_undirected,
        "orbit_sizes": sorted(o.size for o in part.orbits),
        "orbitals": [{"rep_index": e.rep_index, "size": e.size, "self_paired": e.self_paired,
                      "diameter": e.diameter, "profile": e.profile, "witness_index": e.witness_index}
                     for e in res.entries],
        "orbital_diameter": res.orbital_diameter,
        "timings": {"orbits_s": round(t1 - t0, 4), "diameters_s": round(t2 - t1, 4)},
    }
    if use_cache:
        _cache_store(key, core)
    return core


def diam_report(rep: GroupRep, core: dict, bounds: BoundReport | None = None) -> dict:
    F = rep.field
    ub = upper_bounds(rep.n, core["rank"], rep.contains_scalars or F.q == 2)
    b = ub if bounds is None else bounds.merge(ub)
    return {
        "tool_version": tool_version,
        "field": {"p": F.p, "k": F.k, "modulus": list(map(int, F.modulus))},
        "dim": rep.n,
        "descriptor": rep.descriptor,
        "rank": core["rank"],
        "rank_undirected": core["rank_undirected"],
        "orbitals": core["orbitals"],
        "orbital_diameter": core["orbital_diameter"],
        "bounds": [x.as_dict() for x in b.bounds],
        "timings": core["timings"],
    }


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- scenarios ----------------------------------------------------------------------------

@dataclass
class CaseResult:
    name: str
    descriptor: str
    status: str                       # pass, fail, skipped
    computed: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    reason: str = ""
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "descriptor": self.descriptor, "status": self.status,
                "computed": self.computed, "expected": self.expected, "reason": self.reason,
                "seconds": round(self.seconds, 3)}


@dataclass
class ScenarioResult:
    scenario: str
    cases: list

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.cases)

    def as_dict(self) -> dict:
        return {"tool_version": tool_version, "scenario": self.scenario, "ok": self.ok,
                "cases": [c.as_dict() for c in self.cases]}


def _bound_violations(d: int, group: str | None, n: int, q0: int, module: str, rank: int | None,
                      scalars: bool, **kw) -> list:
    rep = BoundReport("check")
    if group is not None:
        rep = analytic_lower_bounds(group, n, q0, module=module, **kw)
    if rank is not None:
        rep = rep.merge(upper_bounds(n, rank, scalars))
    return rep.admits(d)


def _judge(case: CaseResult, d: int, expected, exact_rank=None, rank=None, bounds_args=None) -> CaseResult:
    """Compare a diameter (a certified lower bound when ``d`` comes from a witness) with the registry."""
    problems = []
    if expected is None:
        problems.append("no registry expectation")
    else:
        case.expected = expected.as_dict() if hasattr(expected, "as_dict") else dict(expected)
        if hasattr(expected, "admits"):
            if not expected.admits(d):
                problems.append(f"diameter {d} not admitted by {expected.id}")
            if expected.rank is not None and rank is not None and not isinstance(expected.rank, list) \
                    and expected.rank != rank:
                problems.append(f"rank {rank} != expected {expected.rank}")
        else:
            want = expected.get("diameter_lower")
            if want is not None and d < want:
                problems.append(f"distance {d} below {want}")
    if exact_rank is not None and rank != exact_rank:
        problems.append(f"rank {rank} != {exact_rank}")
    if bounds_args is not None:
        bad = _bound_violations(d, **bounds_args)
        if bad:
            problems.append("violates bounds " + ",".join(bad))
    case.status = "fail" if problems else "pass"
    case.reason = "; ".join(problems)
    return case


def _fdpm_case(r: int, q0: int, scalar_order: int | None, alt: bool = False) -> CaseResult:
    t = time.perf_counter()
    rep = fully_deleted_rep(r, alt, q0)
    rep = adjoin_scalars(rep, scalar_order)
    core = diameter_core(rep)
    d = core["orbital_diameter"]
    scal = rep.contains_scalars if scalar_order is None else scalar_order
    exp = registry_expected({"group": "Alt", "r": r, "module": "fdpm", "q0": q0, "scalars": scal})
    case = CaseResult(f"fdpm r={r} q0={q0}", rep.descriptor, "pass",
                      {"orbital_diameter": d, "rank": core["rank"], "orbit_sizes": core["orbit_sizes"]})
    _judge(case, d, exp, rank=core["rank"],
           bounds_args=dict(group=f"A{r}", n=rep.n, q0=q0, module="fdpm", rank=core["rank"],
                            scalars=rep.contains_scalars or q0 == 2))
    case.seconds = time.perf_counter() - t
    return case


def scenario_fdpm_classification(jobs: int = 1) -> ScenarioResult:
    specs = [(6, 2, None), (5, 2, None), (8, 2, None), (10, 2, None), (6, 3, None),
             (5, 5, 4), (5, 3, None), (5, 4, None)]
    with ThreadPoolExecutor(max(1, jobs)) as ex:
        cases = list(ex.map(lambda s: _fdpm_case(*s), specs))
    return ScenarioResult("fdpm-classification", cases)


def _natural_case(desc: str, group: str, lie: str | None, module: str, n_nat: int,
                  q: int, bounds_group: str | None, q0: int) -> CaseResult:
    t = time.perf_counter()
    rep = build(desc)
    core = diameter_core(rep)
    d = core["orbital_diameter"]
    exp = registry_expected({"group": group, "module": "natural", "n": n_nat, "q": q,
                             "scalars": rep.contains_scalars})
    case = CaseResult(f"{group}{n_nat}({q})", desc, "pass",
                      {"orbital_diameter": d, "rank": core["rank"], "orbit_sizes": core["orbit_sizes"]})
    _judge(case, d, exp, rank=core["rank"],
           bounds_args=dict(group=bounds_group, n=rep.n, q0=q0, module=module, rank=core["rank"],
                            scalars=rep.contains_scalars or q0 == 2))
    case.seconds = time.perf_counter() - t
    return case


def scenario_natural_modules(jobs: int = 1) -> ScenarioResult:
    specs = [
        ("sl:n=2,q=3", "SL", None, "natural", 2, 3, None, 3),
        ("sl:n=2,q=8", "SL", None, "natural", 2, 8, "PSL2(8)", 8),
        ("sp:n=4,q=3", "Sp", None, "natural", 4, 3, "PSp4(3)", 3),
        ("su:n=3,q=4", "SU", None, "natural", 3, 2, None, 4),
        # the 6-dim orthogonal module of SL4(2) = Omega6+(2)
        ("sl:n=4,q=2;functor=ext2", "Omega", None, "other", 6, 2, "PSL4(2)", 2),
        # the 3-dim orthogonal module of SL2(5), q = 1 mod 4
        ("sl:n=2,q=5;functor=sym2;scalars", "Omega", None, "other", 3, 5, "PSL2(5)", 5),
    ]
    with ThreadPoolExecutor(max(1, jobs)) as ex:
        cases = list(ex.map(lambda s: _natural_case(*s), specs))
    return ScenarioResult("natural-modules", cases)


def scenario_defchar_small(jobs: int = 1) -> ScenarioResult:
    cases = []
    t = time.perf_counter()
    rep = build("sl:n=5,q=2;functor=ext2")
    core = diameter_core(rep)
    exp = registry_expected("A4(2)", weight="omega2", scalars=True)
    case = CaseResult("A4(2) omega2", rep.descriptor, "pass",
                      {"orbital_diameter": core["orbital_diameter"], "rank": core["rank"],
                       "orbit_sizes": core["orbit_sizes"]})
    _judge(case, core["orbital_diameter"], exp, rank=core["rank"],
           bounds_args=dict(group="PSL5(2)", n=10, q0=2, module="other", rank=core["rank"], scalars=True))
    case.seconds = time.perf_counter() - t
    cases.append(case)

    t = time.perf_counter()
    rep = build("suzuki:q=8;scalars")
    core = diameter_core(rep)
    exp = registry_expected("2B2(8)", module="natural", scalars=True)
    case = CaseResult("2B2(8) natural", rep.descriptor, "pass",
                      {"orbital_diameter": core["orbital_diameter"], "rank": core["rank"],
                       "orbit_sizes": core["orbit_sizes"]})
    _judge(case, core["orbital_diameter"], exp, rank=core["rank"],
           bounds_args=dict(group="2B2(8)", n=4, q0=8, module="natural", rank=core["rank"], scalars=True))
    if core["orbit_sizes"][0] != 455:
        case.status = "fail"
        case.reason = (case.reason + "; " if case.reason else "") + "smaller orbit is not 455"
    case.seconds = time.perf_counter() - t
    cases.append(case)
    return ScenarioResult("defchar-small", cases)


def ree_certificate(q: int = 27) -> dict:
    """Orbit of e_-3 as multiples of e_-3 plus stabilizer images of e_3, and the two-step test on k e_-2."""
    rep = ree_stabilizer_rep(q)
    F = rep.field
    orb3 = orbit_of(rep, rep.vectors["e3"], dense=False)
    em3 = rep.vectors["e-3"].coords
    mults = coords_to_indices(F, np.array([F.mul(a, em3) for a in range(1, q)]))
    members = np.union1d(orb3.members, mults)
    O = OrbitData(int(members[0]), len(members), members,
                  Vec(F, indices_to_coords(F, rep.n, int(members[0]))))
    e2 = rep.vectors["e-2"].coords
    covered = two_step_cover(rep, O, [F.mul(a, e2) for a in range(1, q)])
    return {"orbit_size": int(O.size), "expected_size": (q - 1) * (q**3 + 1),
            "covered": [bool(c) for c in covered]}


def scenario_ree_orbit(jobs: int = 1, q: int = 27) -> ScenarioResult:
    t = time.perf_counter()
    cert = ree_certificate(q)
    ok = cert["orbit_size"] == cert["expected_size"] and not any(cert["covered"])
    reason = "" if ok else "orbit size mismatch or some k e_-2 within distance 2"
    comp = {"orbit_size": cert["orbit_size"], "two_step_hits": sum(cert["covered"]),
            "diameter_lower": 3 if not any(cert["covered"]) else None}
    viol = _bound_violations(3, f"2G2({q})", 7, q, "other", None, False)
    if viol:
        ok, reason = False, "violates bounds " + ",".join(viol)
    case = CaseResult(f"2G2({q}) e_-3 orbit", f"ree-stab:q={q}", "pass" if ok else "fail", comp,
                      {"orbit_size": cert["expected_size"], "diameter_lower": 3}, reason,
                      time.perf_counter() - t)
    return ScenarioResult("ree-orbit", [case])


PERMALT_WITNESSES = {
    # r odd: (1,-1,...,1,-1,0); 4 does not divide r, p = 2: (1,0,...,1,0,0,0)
    (9, 2): ([1, -1] * 4 + [0], "(r-1)/2", 4),
    (7, 3): ([1, -1] * 3 + [0], "(r-1)/2", 3),
    (10, 2): ([1, 0] * 4 + [0, 0], "(r-2)/4", 2),
}


def permalt_distance(r: int, q0: int, witness) -> tuple:
    rep = adjoin_scalars(fully_deleted_rep(r, False, q0))
    F = rep.field
    b = fdpm_coords(F, r, [1, -1] + [0] * (r - 2))
    orb = orbit_of(rep, b)
    return distance_to(rep, orb, fdpm_coords(F, r, witness)), rep


def scenario_permalt_witness(jobs: int = 1) -> ScenarioResult:
    cases = []
    for (r, q0), (w, form, need) in PERMALT_WITNESSES.items():
        t = time.perf_counter()
        d, rep = permalt_distance(r, q0, w)
        case = CaseResult(f"S{r} over GF({q0})", rep.descriptor, "pass",
                          {"witness": w, "distance": d})
        _judge(case, d, {"diameter_lower": need, "formula": form},
               bounds_args=None)
        case.seconds = time.perf_counter() - t
        cases.append(case)
    return ScenarioResult("permalt-witness", cases)


def adjoint_witness_search(q: int = 3) -> dict:
    """Search companion matrices of x^3 - b x - c for the farthest point in the rank-one orbital graph."""
    rep = build(f"sl:n=3,q={q};functor=adjoint")
    F, M = rep.field, rep.model
    part = orbit_partition(rep)
    ranks = {o.orbit_id: M.rank(o.representative.coords) for o in part.orbits}
    small = min(part.orbits, key=lambda o: (ranks[o.orbit_id], o.size))
    best = None
    for b in F.elements():
        for c in F.elements():
            A = np.array([[0, 0, c], [1, 0, b], [0, 1, 0]], dtype=np.int64)
            d = distance_to(rep, small, M.from_matrix(A))
            if best is None or d > best[0]:
                best = (d, int(b), int(c))
    return {"rep": rep, "partition": part, "orbit": small, "orbit_rank": ranks[small.orbit_id],
            "distance": best[0], "b": best[1], "c": best[2]}


def scenario_adjoint_sl3(jobs: int = 1) -> ScenarioResult:
    t = time.perf_counter()
    res = adjoint_witness_search(3)
    rep = res["rep"]
    core = diameter_core(rep)
    comp = {"witness_poly": f"x^3 - {res['b']}x - {res['c']}", "witness_distance": res["distance"],
            "rank_one_orbit_size": res["orbit"].size, "orbital_diameter": core["orbital_diameter"],
            "rank": core["rank"], "rank_undirected": core["rank_undirected"]}
    case = CaseResult("adjoint SL3(3)", rep.descriptor, "pass", comp)
    _judge(case, res["distance"], {"diameter_lower": 3},
           bounds_args=dict(group="PSL3(3)", n=7, q0=3, module="other", rank=core["rank"],
                            scalars=False))
    if core["orbital_diameter"] < res["distance"]:
        case.status, case.reason = "fail", "full BFS disagrees with the witness"
    case.seconds = time.perf_counter() - t
    return ScenarioResult("adjoint-sl3", [case])


SPORADIC_FILES = {"M11": (5, 3)}


def find_generator_file(gens_dir, name: str) -> Path | None:
    if gens_dir is None:
        return None
    d = Path(gens_dir)
    if not d.is_dir():
        return None
    for path in sorted(d.iterdir()):
        if path.is_file() and path.stem.split("_")[0].split(".")[0].upper() == name.upper():
            return path
    return None


def scenario_sporadic_ingest(jobs: int = 1, gens_dir=None) -> ScenarioResult:
    cases = []
    for name, (n, q0) in SPORADIC_FILES.items():
        t = time.perf_counter()
        path = find_generator_file(gens_dir, name)
        if path is None:
            cases.append(CaseResult(f"{name} <= GL{n}({q0})", name, "skipped",
                                    reason=f"no generator file for {name} in --gens-dir"))
            continue
        try:
            rep = import_rep(path)
        except (GenFileError, RepError, FieldError) as e:
            cases.append(CaseResult(f"{name} <= GL{n}({q0})", str(path), "fail", reason=str(e)))
            continue
        if not rep.contains_scalars:
            rep = adjoin_scalars(rep)
        core = diameter_core(rep)
        exp = registry_expected(name, n=rep.n, q0=rep.field.q, scalars=True)
        case = CaseResult(f"{name} <= GL{n}({q0})", str(path), "pass",
                          {"orbital_diameter": core["orbital_diameter"], "rank": core["rank"],
                           "orbit_sizes": core["orbit_sizes"]})
        _judge(case, core["orbital_diameter"], exp, rank=core["rank"],
               bounds_args=dict(group=name, n=rep.n, q0=rep.field.q, module="other",
                                rank=core["rank"], scalars=True))
        case.seconds = time.perf_counter() - t
        cases.append(case)
    return ScenarioResult("sporadic-ingest", cases)


SCENARIOS = {
    "fdpm-classification": scenario_fdpm_classification,
    "natural-modules": scenario_natural_modules,
    "defchar-small": scenario_defchar_small,
    "ree-orbit": scenario_ree_orbit,
    "permalt-witness": scenario_permalt_witness,
    "adjoint-sl3": scenario_adjoint_sl3,
    "sporadic-ingest": scenario_sporadic_ingest,
}


def run_scenario(name: str, jobs: int = 1, gens_dir=None) -> ScenarioResult:
    if name not in SCENARIOS:
        raise UsageError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    if name == "sporadic-ingest":
        return scenario_sporadic_ingest(jobs, gens_dir)
    return SCENARIOS[name](jobs)


# -- bounds command -------------------------------------------------------------------

def bounds_report(group: str, module: str = "other", q0: int | None = None, n: int | None = None,
                  cross: bool = False, r: int | None = None, rank: int | None = None,
                  scalars: bool = False) -> dict:
    text = group
    if r is not None and "(" not in group:
        text = f"{group}({r})"
    try:
        g = parse_group(text)
    except (BoundError, FieldError) as e:
        return {"tool_version": tool_version, "group": text, "status": "unsupported", "reason": str(e)}
    char = "cross" if cross else ("defining" if g.kind in ("lie", "tits") and q0 is None else None)
    rep = analytic_lower_bounds(g, n, q0, module=module, characteristic=char)
    if n is None and g.kind == "alt" and module == "fdpm" and q0:
        from .bounds import fdpm_dim
        from .gf import prime_power
        n = fdpm_dim(g.r, prime_power(q0)[0])
    has_scalars = scalars or q0 == 2
    if n is not None:
        rep = rep.merge(upper_bounds(n, rank if rank is not None else 2 ** 62, has_scalars)
                        if rank is not None else _n_bound_only(n, has_scalars))
    out = {"tool_version": tool_version, "group": g.name, "status": "ok", "n": n, "q0": q0}
    out.update(rep.as_dict())
    entry = None
    if g.kind == "alt":
        entry = registry_expected({"group": "Alt", "r": g.r, "module": module, "q0": q0, "n": n,
                                   "scalars": has_scalars})
    elif g.kind == "sporadic":
        entry = registry_expected(g.name, n=n, q0=q0, scalars=has_scalars)
    out["registry"] = entry.as_dict() if entry else None
    return out


def _n_bound_only(n: int, has_scalars: bool) -> BoundReport:
    rep = upper_bounds(n, 2, has_scalars)
    rep.bounds = [b for b in rep.bounds if b.name == "upperbound"]
    return rep


# -- argument parsing -------------------------------------------------------------------

def _int_arg(s: str) -> int:
    try:
        if "^" in s:
            b, e = s.split("^", 1)
            return int(b) ** int(e)
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None


def _load_rep(args) -> GroupRep:
    if args.file:
        return import_rep(args.file)
    if not args.descriptor:
        raise UsageError("give a descriptor or --file")
    return build(args.descriptor)


def _add_rep_args(p):
    p.add_argument("descriptor", nargs="?", help="builtin descriptor, e.g. fdpm:r=8,q=2")
    p.add_argument("--file", help="generator file")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbdiam", description=__doc__,
                                 epilog=DESCRIPTOR_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=tool_version)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("rep", help="build a representation and print a summary")
    _add_rep_args(p)
    p.add_argument("--export", help="write the generators to a file")

    p = sub.add_parser("diam", help="orbits, rank and orbital diameters")
    _add_rep_args(p)
    p.add_argument("--max-space", type=_int_arg, default=DEFAULT_SPACE_CAP)
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--group", help="simple group for analytic bounds, e.g. A9 or G2(5)")
    p.add_argument("--module", choices=("fdpm", "natural", "other"), default="other")

    p = sub.add_parser("verify", help="run a named scenario")
    p.add_argument("scenario", choices=sorted(SCENARIOS))
    p.add_argument("--gens-dir")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", help="write the scenario report here ('-' for stdout)")

    p = sub.add_parser("bounds", help="evaluate analytic bounds")
    p.add_argument("--group", required=True)
    p.add_argument("--module", choices=("fdpm", "natural", "other"), default="other")
    p.add_argument("--q", type=_int_arg, dest="q0", help="field size q0 of the module")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=_int_arg, help="field size of a Lie-type group")
    p.add_argument("--cross", action="store_true", help="cross characteristic")
    p.add_argument("--rank", type=int)
    p.add_argument("--scalars", action="store_true")
    return ap


def _write(text: str, dest: str | None):
    if dest is None:
        return
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def cmd_rep(args) -> int:
    rep = _load_rep(args)
    print(rep.summary())
    if args.export:
        from .repfactory import export_rep
        export_rep(rep, args.export)
    return EXIT_PASS


def cmd_diam(args) -> int:
    rep = _load_rep(args)
    core = diameter_core(rep, args.strategy, args.max_space, args.jobs, not args.no_cache)
    bounds = None
    if args.group:
        bounds = analytic_lower_bounds(args.group, rep.n, rep.field.q, module=args.module)
    report = diam_report(rep, core, bounds)
    if args.json != "-":
        print(rep.summary())
        print(f"rank {report['rank']} (undirected {report['rank_undirected']})")
        print(f"{'rep_index':>12} {'size':>10} {'paired':>6} {'diam':>4}  profile")
        for o in report["orbitals"]:
            print(f"{o['rep_index']:>12} {o['size']:>10} {'yes' if o['self_paired'] else 'no':>6} "
                  f"{o['diameter']:>4}  {o['profile']}")
        print(f"orbital diameter {report['orbital_diameter']}")
    _write(dump_json(report), args.json)
    return EXIT_PASS


def cmd_verify(args) -> int:
    res = run_scenario(args.scenario, args.jobs, args.gens_dir)
    if args.json != "-":
        for c in res.cases:
            line = f"{c.status.upper():7} {c.name:28} {json.dumps(c.computed, sort_keys=True)}"
            if c.reason:
                line += f"  ({c.reason})"
            print(line)
    _write(dump_json(res.as_dict()), args.json)
    return EXIT_PASS if res.ok else EXIT_FAIL


def cmd_bounds(args) -> int:
    out = bounds_report(args.group, args.module, args.q0, args.n, args.cross, args.r, args.rank,
                        args.scalars)
    sys.stdout.write(dump_json(out))
    return EXIT_PASS if out["status"] == "ok" else EXIT_FAIL


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_PASS
    handlers = {"rep": cmd_rep, "diam": cmd_diam, "verify": cmd_verify, "bounds": cmd_bounds}
    try:
        return handlers[args.cmd](args)
    except (DescriptorError, UsageError, GenFileError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SpaceCapError, DisconnectedError, RepError, FieldError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
