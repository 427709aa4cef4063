import csv
import json

import pytest

import main
from oracle.report import VerificationReport


def test_spectrum_table(capsys):
    assert main.dispatch(["spectrum", "--well", "II", "--a", "8.48"]) == main.EXIT_OK
    out = capsys.readouterr().out
    assert "5 bound state(s)" in out
    assert len(out.strip().splitlines()) == 6


def test_spectrum_json(capsys):
    assert main.dispatch(["spectrum", "--well", "I", "--a", "32", "--json"]) == main.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["well"] == "I"
    assert len(data["levels"]) == 10
    assert all(-1.0 < level["energy"] < 0.0 for level in data["levels"])


def test_spectrum_in_physical_units(capsys):
    assert main.dispatch(["spectrum", "--well", "II", "--u0", "50", "--alpha", "2", "--mass", "0.5",
                          "--json"]) == main.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["a"] == pytest.approx(200 ** 0.5 / 2)
    assert all(-50.0 < level["energy"] < 0.0 for level in data["levels"])


def test_hbar_enters_the_depth_parameter(capsys):
    assert main.dispatch(["spectrum", "--well", "II", "--u0", "50", "--alpha", "2", "--mass", "0.5", "--hbar", "2",
                          "--json"]) == main.EXIT_OK
    assert json.loads(capsys.readouterr().out)["a"] == pytest.approx(200 ** 0.5 / 4)
    assert main.dispatch(["spectrum", "--well", "II", "--hbar", "0.5", "--json"]) == main.EXIT_OK
    assert json.loads(capsys.readouterr().out)["a"] == pytest.approx(8 ** 0.5 / 0.5)


def test_default_windows_and_routes():
    parser = main.build_parser()
    args = parser.parse_args(["scatter", "map"])
    assert (args.a_min, args.a_max, args.a_steps) == (0.1, 10.0, 100)
    assert (args.beta_min, args.beta_max, args.beta_steps) == (0.05, 5.0, 100)
    assert parser.parse_args(["semiclassical"]).jwkb_form == "scaled"


def test_usage_errors():
    assert main.dispatch([]) == main.EXIT_USAGE
    assert main.dispatch(["spectrum", "--well", "III", "--a", "2"]) == main.EXIT_USAGE
    assert main.dispatch(["figure"]) == main.EXIT_USAGE


def test_domain_errors():
    assert main.dispatch(["spectrum", "--well", "I"]) == main.EXIT_DOMAIN
    assert main.dispatch(["spectrum", "--well", "I", "--a", "-3"]) == main.EXIT_DOMAIN
    assert main.dispatch(["scatter", "--a", "4"]) == main.EXIT_DOMAIN
    assert main.dispatch(["scatter", "map"]) == main.EXIT_DOMAIN
    assert main.dispatch(["susy", "--well", "I", "--a", "8.48", "--depth", "3"]) == main.EXIT_DOMAIN


def test_scatter_point(capsys):
    assert main.dispatch(["scatter", "--a", "3", "--beta", "0.01"]) == main.EXIT_OK
    line = capsys.readouterr().out.strip().splitlines()[-1]
    r = float(line.split()[0].split("=")[1])
    assert r >= 0.95


def test_scatter_map(tmp_path):
    out = tmp_path / "map.csv"
    assert main.dispatch(["scatter", "map", "--a-min", "1", "--a-max", "2", "--a-steps", "2", "--beta-min", "0.5",
                          "--beta-max", "1", "--beta-steps", "3", "--out", str(out)]) == main.EXIT_OK
    with open(out, newline="") as f:
        assert len(list(csv.reader(f))) == 7
    with open(tmp_path / "map_manifest.json") as f:
        manifest = json.load(f)
    assert manifest["parameters"]["a_steps"] == 2
    assert manifest["command"].startswith("expwell scatter map")


def test_susy_potentials(tmp_path, capsys):
    out = tmp_path / "partners.csv"
    assert main.dispatch(["susy", "--well", "I", "--a", "11.75", "--depth", "2",
                          "--emit-potentials", str(out)]) == main.EXIT_OK
    assert capsys.readouterr().out.count("k=") == 2
    with open(out, newline="") as f:
        assert next(csv.reader(f)) == ["x", "V_plus_1_shifted", "V_plus_2_shifted"]


def test_variational(capsys):
    assert main.dispatch(["variational", "--family", "gauss-ii", "--a", "5"]) == main.EXIT_OK
    assert "gauss-ii: a=5" in capsys.readouterr().out
    assert main.dispatch(["variational", "--family", "gauss-x", "--a", "2"]) == main.EXIT_OK
    assert "no stationary minimum" in capsys.readouterr().out


def test_semiclassical(capsys):
    assert main.dispatch(["semiclassical", "--well", "II", "--a", "8.48", "--schemes", "wkb,swkb"]) == main.EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split() == ["n", "exact", "wkb", "swkb", "delta_wkb", "delta_swkb"]
    assert len(lines) == 6


def test_figure(tmp_path, capsys):
    assert main.dispatch(["figure", "--id", "5", "--out", str(tmp_path)]) == main.EXIT_OK
    assert (tmp_path / "fig5_semiclassical.csv").exists()
    assert (tmp_path / "fig5_manifest.json").exists()


def test_failed_verification_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(main, "run_suite", lambda name: [VerificationReport(name="demo", passed=False)])
    assert main.dispatch(["verify", "--suite", "exact"]) == main.EXIT_VERIFICATION
    assert "FAIL  demo" in capsys.readouterr().out


def test_passed_verification_json(monkeypatch, capsys):
    monkeypatch.setattr(main, "run_suite", lambda name: [VerificationReport(name="demo", passed=True)])
    assert main.dispatch(["verify", "--json"]) == main.EXIT_OK
    out = capsys.readouterr().out
    assert json.loads(out[:out.rindex("]") + 1])[0]["name"] == "demo"
