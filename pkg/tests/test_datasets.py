import csv
import json

import numpy as np
import pytest

from datasets.figures import FIGURE_PARAMETERS, emit_figure
from datasets.output import RunManifest, format_number, to_json, write_csv, write_json, write_manifest
from errors import ExpwellError


def test_format_number():
    assert format_number(0.1) == "0.10000000000000001"
    assert format_number(np.float64(-2.5)) == "-2.5"
    assert format_number(float("nan")) == ""
    assert format_number(None) == ""
    assert format_number(True) == "true"
    assert format_number(np.int64(7)) == "7"
    assert format_number("II") == "II"


def test_write_csv(tmp_path):
    path = write_csv(tmp_path / "sub" / "table.csv", ["a", "R"], [(1.0, 0.25), (2, float("nan"))])
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows == [["a", "R"], ["1", "0.25"], ["2", ""]]


def test_json_converts_numpy_values(tmp_path):
    data = {"energies": np.array([-0.5, np.nan]), "count": np.int32(3), "ok": np.bool_(True)}
    assert json.loads(to_json(data)) == {"energies": [-0.5, None], "count": 3, "ok": True}
    path = write_json(tmp_path / "out.json", data)
    with open(path) as f:
        assert json.load(f)["count"] == 3


def test_manifest(tmp_path):
    manifest = RunManifest(command="spectrum --well II --a 8.48", parameters={"a": 8.48},
                           output_files=["levels.csv"])
    path = write_manifest(tmp_path, manifest)
    with open(path) as f:
        written = json.load(f)
    assert written["command"] == "spectrum --well II --a 8.48"
    assert written["parameters"] == {"a": 8.48}
    assert written["tool_version"] == manifest.tool_version
    assert written["timestamp"]


def test_emit_level_figure(tmp_path):
    manifest = emit_figure("1", tmp_path, overrides={"samples": 41})
    assert len(manifest.output_files) == 2
    with open(tmp_path / "fig1_wavefunctions.csv", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["x", "U", "psi_0", "psi_1", "psi_2", "psi_3", "psi_4"]
    assert len(rows) == 42
    assert (tmp_path / "fig1_manifest.json").exists()


def test_emit_reflection_figure(tmp_path):
    emit_figure("2", tmp_path, overrides={"a_range": (1.0, 2.0, 2), "beta_range": (0.5, 1.0, 2)})
    with open(tmp_path / "fig2_reflection.csv", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["a", "beta", "R"]
    assert len(rows) == 5
    assert all(0.0 <= float(row[2]) <= 1.0 for row in rows[1:])


def test_reflection_figure_default_window():
    assert FIGURE_PARAMETERS["2"] == {"a_range": (0.1, 10.0, 100), "beta_range": (0.05, 5.0, 100)}


def test_emit_partner_figure(tmp_path):
    manifest = emit_figure("3b", tmp_path, overrides={"samples": 21})
    assert any(name.endswith("fig3b_potentials.csv") for name in manifest.output_files)
    with open(tmp_path / "fig3b_levels.csv", newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["depth", "n", "energy"]


def test_unknown_figure(tmp_path):
    with pytest.raises(ExpwellError):
        emit_figure("9", tmp_path)
