import csv
import io
import json

import pytest

from replica_knots import cli


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_moments_json(capsys):
    code, out, _ = run(capsys, "moments", "--traces", "3,3", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["replica"] == "3"
    assert data["polynomial"] == {"1": "3", "3": "12"}


def test_moments_odd(capsys):
    code, out, _ = run(capsys, "moments", "--traces", "3,3,3", "--json")
    assert code == 0
    assert json.loads(out)["polynomial"] == {}


def test_moments_coupled(capsys):
    code, out, _ = run(capsys, "moments", "--traces", "[AB]", "--coupling", "1/2", "--json")
    assert code == 0
    assert json.loads(out)["polynomial"] == {"2": "2/3"}


def test_zeros_csv(capsys):
    code, out, _ = run(capsys, "zeros", "--family", "trivalent", "--gmax", "1", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2
    assert all(float(r["re"]) == 0.5 for r in rows)
    assert list(rows[0]) == ["g", "re", "im", "modulus", "arg_degrees", "residual"]


def test_zeros_density(capsys):
    code, out, _ = run(capsys, "zeros", "--gmax", "10", "--density", "--bins", "16", "--csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["lo", "hi", "count"] and len(rows) == 17
    assert sum(int(r[2]) for r in rows[1:]) == sum(2 * g for g in range(1, 11))


def test_replica_series_records(capsys):
    code, out, _ = run(capsys, "replica-series", "--k", "3", "--degree", "16", "--json")
    assert code == 0
    records = json.loads(out)
    assert {"exponents": [8, 4, 4], "coefficient": "11/1152"} in records


def test_seifert_emit(capsys):
    code, out, _ = run(capsys, "seifert", "--family", "trivalent", "--g", "2", "--emit", "alexander")
    assert code == 0 and json.loads(out) == [4, -11, 15, -11, 4]
    code, out, _ = run(capsys, "seifert", "--family", "trivalent", "--g", "1", "--emit", "matrix")
    assert json.loads(out) == [[1, 1], [0, 1]]


def test_seifert_matrix_file(capsys, tmp_path):
    f = tmp_path / "v52.json"
    f.write_text("[[1, 1], [0, 2]]")
    code, out, _ = run(capsys, "seifert", "--matrix", str(f), "--emit", "conway", "--json")
    assert code == 0 and json.loads(out)["conway"] == [1, 0, 2]


def test_bands_census(capsys, tmp_path):
    f = tmp_path / "skeleton.json"
    f.write_text(json.dumps({"strands": 2, "rungs": [{"pair": [1, 2], "height": h} for h in range(3)]}))
    code, out, _ = run(capsys, "bands", "--census", str(f), "--json")
    assert code == 0
    assert json.loads(out)["counts"]["KNOT-CANDIDATE"] == 2


def test_jones_and_vassiliev(capsys, tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps([[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]]))
    code, out, _ = run(capsys, "vassiliev", "--pd", str(f), "--jmax", "4", "--json")
    assert code == 0 and json.loads(out)["v"][2] == "-6"
    code, out, _ = run(capsys, "jones", "--fixture", "3_1", "--json")
    assert json.loads(out)["jones"] == "t^-1 + t^-3 - t^-4"


def test_catalogue(capsys):
    code, out, _ = run(capsys, "catalogue", "--knot", "6_2", "--json")
    assert code == 0 and json.loads(out)[0]["monomial"] == [6, 4, 2]
    code, out, _ = run(capsys, "catalogue", "--mean", "3,3,2,2,2,2", "--json")
    assert [e["name"] for e in json.loads(out)] == ["7_2", "7_4"]


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "eq9", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and len(data["checks"]) == 8


def test_reproduce_zero_locus_writes_files(capsys, tmp_path):
    code, _, _ = run(capsys, "reproduce", "fig1", "--gmax", "12", "--data-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "zero_locus.csv").exists() and (tmp_path / "zero_density.csv").exists()


def _error(err):
    lines = err.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


@pytest.mark.parametrize(
    "argv, code",
    [
        (["moments"], 1),
        (["nosuch"], 1),
        ([], 1),
        (["moments", "--traces", "3,x"], 1),
        (["moments", "--traces", "[AB]"], 1),
        (["moments", "--traces", "3,3", "--digits", "10"], 1),
        (["reproduce", "eq99"], 1),
        (["catalogue", "--knot", "9_9"], 1),
        (["moments", "--traces", "3,3,3,3,3,3", "--method", "brute", "--pairing-budget", "100"], 2),
        (["jones", "--fixture", "5_2", "--crossing-cap", "3"], 2),
        (["zeros", "--family", "torus", "--g", "9", "--digits", "15", "--method", "exact"], 0),
        (["catalogue", "--list", "--csv"], 0),
        (["bands", "--braid", "1,1,1", "--csv"], 1),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    if code:
        rec = _error(err)
        assert rec["exit_code"] == code and rec["error"] and rec["message"]


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("REPLICA_KNOTS_PAIRING_BUDGET", "100")
    got, _, err = run(capsys, "moments", "--traces", "3,3,3,3,3,3", "--method", "brute")
    assert got == 2 and _error(err)["error"] == "CapExceeded"
    # a flag wins over the environment
    got, _, _ = run(capsys, "moments", "--traces", "3,3", "--method", "brute", "--pairing-budget", "1000")
    assert got == 0


def test_bad_env(capsys, monkeypatch):
    monkeypatch.setenv("REPLICA_KNOTS_DIGITS", "lots")
    got, _, err = run(capsys, "moments", "--traces", "3,3")
    assert got == 1 and "REPLICA_KNOTS_DIGITS" in _error(err)["message"]


def test_out_file(capsys, tmp_path):
    dest = tmp_path / "m.json"
    assert cli.run(["moments", "--traces", "5,5", "--json", "--out", str(dest)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(dest.read_text())["replica"] == "165"


@pytest.mark.parametrize(
    "argv",
    [
        ["moments", "--traces", "3,3,3,3", "--method", "brute", "--json"],
        ["jones", "--fixture", "5_2", "--chunks", "4", "--json"],
        ["zeros", "--gmax", "8", "--csv"],
    ],
)
def test_output_independent_of_threads(capsys, argv):
    outs = set()
    for threads in ("1", "2"):
        assert cli.run(argv + ["--threads", threads]) == 0
        outs.add(capsys.readouterr().out)
    assert len(outs) == 1


def test_run_config_invariants():
    with pytest.raises(cli.UsageError):
        cli.RunConfig("moments", digits=14)
    with pytest.raises(cli.UsageError):
        cli.RunConfig("moments", threads=0)
    with pytest.raises(cli.UsageError):
        cli.RunConfig("moments", fmt="xml")
