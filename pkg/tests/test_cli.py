import json

import pytest

from orbdiam import cli
from orbdiam.repfactory import build, export_rep


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rep_summaries(capsys):
    code, out, _ = run(capsys, "rep", "fdpm:r=8,q=2")
    assert code == 0 and "dim 6 over GF(2), 2 generators" in out
    code, out, _ = run(capsys, "rep", "sl:n=5,q=2;functor=ext2")
    assert "dim 10" in out


def test_bad_descriptor_is_usage_error(capsys):
    code, _, err = run(capsys, "rep", "sl:n=5;q")
    assert code == 2 and "descriptor grammar" in err and "position" in err
    code, _, _ = run(capsys, "diam")
    assert code == 2
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_diam_json_schema(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("ORBDIAM_CACHE", raising=False)
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "diam", "sl:n=5,q=2;functor=ext2", "--json", str(path))
    assert code == 0 and "orbital diameter 2" in out
    data = json.loads(path.read_text())
    for key in ("tool_version", "field", "dim", "descriptor", "rank", "orbitals", "orbital_diameter",
                "bounds", "timings"):
        assert key in data
    assert data["field"] == {"p": 2, "k": 1, "modulus": [1, 1]}
    assert data["rank"] == 3 and data["orbital_diameter"] == 2
    assert set(data["orbitals"][0]) == {"rep_index", "size", "self_paired", "diameter", "profile",
                                        "witness_index"}


def test_diam_cap_error(capsys):
    code, _, err = run(capsys, "diam", "sl:n=8,q=4", "--max-space", "2^10", "--no-cache")
    assert code == 1 and "cap" in err


def test_cache_gives_identical_json(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("ORBDIAM_CACHE", str(tmp_path / "cache"))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "diam", "fdpm:r=8,q=2", "--json", str(a))
    run(capsys, "diam", "fdpm:r=8,q=2", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert len(list((tmp_path / "cache").glob("*.json"))) == 1


def test_cache_key_ignores_descriptor_spelling(tmp_path):
    rep = build("fdpm:r=6,q=2")
    path = tmp_path / "g.txt"
    export_rep(rep, path)
    from orbdiam.repfactory import import_rep
    assert cli.rep_hash(import_rep(path)) == cli.rep_hash(rep)
    assert cli.rep_hash(build("fdpm:r=6,q=2,alt=1")) != cli.rep_hash(rep)


def test_diam_from_file(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("ORBDIAM_CACHE", raising=False)
    path = tmp_path / "g.txt"
    export_rep(build("fdpm:r=6,q=2"), path)
    code, out, _ = run(capsys, "diam", "--file", str(path), "--json", "-")
    assert code == 0 and json.loads(out)["orbital_diameter"] == 1


def test_bounds_command(capsys):
    code, out, _ = run(capsys, "bounds", "--group", "A9", "--module", "fdpm", "--q", "2")
    data = json.loads(out)
    assert code == 0 and data["lower"] == 4 and data["upper"] == 8
    code, out, _ = run(capsys, "bounds", "--group", "G2", "--cross", "--r", "5")
    assert json.loads(out)["lower"] == 4
    code, out, _ = run(capsys, "bounds", "--group", "Nonsense")
    assert code == 1 and json.loads(out)["status"] == "unsupported"


@pytest.mark.parametrize("scenario", ["fdpm-classification", "natural-modules", "defchar-small",
                                      "permalt-witness", "adjoint-sl3"])
def test_verify_scenarios_pass(capsys, scenario, monkeypatch):
    monkeypatch.delenv("ORBDIAM_CACHE", raising=False)
    code, out, _ = run(capsys, "verify", scenario, "--json", "-")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert all(c["status"] == "pass" for c in data["cases"])


def test_fdpm_classification_has_eight_cases():
    res = cli.run_scenario("fdpm-classification", jobs=3)
    names = [c.name for c in res.cases]
    assert len(names) == 8 and names[0] == "fdpm r=6 q0=2"  # order fixed regardless of jobs


def test_sporadic_ingest_skips_without_files(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "sporadic-ingest", "--gens-dir", str(tmp_path))
    assert code == 0 and "SKIPPED" in out


def test_sporadic_ingest_reads_files(capsys, tmp_path, monkeypatch):
    """Any file named M11* is ingested; a wrong group is reported as a failure."""
    monkeypatch.delenv("ORBDIAM_CACHE", raising=False)
    export_rep(build("fdpm:r=6,q=3"), tmp_path / "M11.gens")
    res = cli.run_scenario("sporadic-ingest", gens_dir=tmp_path)
    assert res.cases[0].status == "fail"
    (tmp_path / "M11.gens").write_text("field 3 1\ndim 2\n")
    res = cli.run_scenario("sporadic-ingest", gens_dir=tmp_path)
    assert res.cases[0].status == "fail" and "line" in res.cases[0].reason


def test_unknown_scenario():
    with pytest.raises(cli.UsageError):
        cli.run_scenario("nope")
