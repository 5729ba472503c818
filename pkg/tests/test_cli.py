import csv
import json
import math
import shutil
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from scipy.signal import argrelmax

from qbouncer import cli


def run(tmp_path, *args):
    return cli.main([*args, "--out-dir", str(tmp_path), "--reproducible"])


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_zeros_table(tmp_path):
    assert run(tmp_path, "zeros", "--n", "12") == 0
    header, rows = read_csv(tmp_path / "zeros.csv")
    assert header == ["n", "a_n", "a_n_asymptotic", "rel_error", "ai_prime"]
    assert (tmp_path / "zeros.csv").read_text().splitlines()[0] == "n,a_n,a_n_asymptotic,rel_error,ai_prime"
    assert len(rows) == 12
    assert float(rows[0][1]) == pytest.approx(-2.33811, abs=1e-4)
    rel = [float(r[3]) for r in rows[2:]]
    assert all(b < a for a, b in zip(rel, rel[1:]))


def test_density_table_and_figure(tmp_path):
    assert run(tmp_path, "density", "--n", "3", "--grid", "801") == 0
    header, rows = read_csv(tmp_path / "density_n3.csv")
    assert header == ["zeta_over_h", "rho_quantum", "rho_classical"]
    data = np.array(rows, dtype=float)
    assert (data[:, 1:] >= 0).all()
    assert (data[data[:, 0] > 1.0, 2] == 0).all()
    inside = data[data[:, 0] < 1.0, 1]
    assert len(argrelmax(inside)[0]) == 3
    root = ET.parse(tmp_path / "density_n3.svg").getroot()
    assert root.tag.endswith("svg")
    assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 2


def test_tailprob_records(tmp_path):
    assert run(tmp_path, "tailprob", "--n-list", "1,30") == 0
    records = json.loads((tmp_path / "tailprob.json").read_text())
    assert [r["n"] for r in records] == [1, 30]
    assert records[0]["abs_difference"] < 1e-8
    assert records[1]["quoted_value"] == 0.0077
    assert set(records[0]) == {"n", "closed_form", "quadrature", "abs_difference", "quoted_value"}


def test_tailprob_unannotated_state(tmp_path):
    assert run(tmp_path, "tailprob", "--n-list", "4") == 0
    assert json.loads((tmp_path / "tailprob.json").read_text())[0]["quoted_value"] is None


def test_fourier_table(tmp_path):
    assert run(tmp_path, "fourier", "--n", "10", "--q-max", "30", "--grid", "31") == 0
    header, rows = read_csv(tmp_path / "fourier_n10.csv")
    assert header[0] == "Q" and "dev_albright0_closed_form" in header
    col = {name: i for i, name in enumerate(header)}
    first = rows[0]
    assert float(first[0]) == 0.0
    for route in cli.DEFAULT_ROUTES:
        assert float(first[col[f"re_{route}"]]) == pytest.approx(1 / (2 * math.pi), abs=1e-12)
        assert abs(float(first[col[f"im_{route}"]])) < 1e-12
    dev = [float(r[col["dev_albright0_closed_form"]]) for r in rows]
    assert max(dev) < 1e-10
    a10 = 12.828776752865757
    for r in rows:
        Q = float(r[0])
        assert float(r[col["dev_numeric_albright1"]]) < max(1e-12, 5 * (1 + Q) ** 3 * a10 ** -6)


def test_limit_outputs(tmp_path):
    assert run(tmp_path, "limit", "--n-list", "10,20,50") == 0
    reports = json.loads((tmp_path / "limit.json").read_text())
    assert reports[0]["fitted_exponent"] == pytest.approx(-3.0, abs=0.5)
    l1 = [r["l1_error"] for r in reports]
    assert l1[0] > l1[1] > l1[2]
    ET.parse(tmp_path / "limit.svg")
    manifest = json.loads((tmp_path / "limit_manifest.json").read_text())
    assert manifest["outputs"] == ["limit.json", "limit.svg"]


def test_regime_species(tmp_path):
    assert run(tmp_path, "regime") == 0
    header, rows = read_csv(tmp_path / "regime.csv")
    assert header == ["label", "l_g_um", "height_mm", "n_estimate", "suppression"]
    by_label = {r[0]: r for r in rows}
    assert float(by_label["Cs"][3]) == pytest.approx(62500, rel=0.02)
    assert float(by_label["neutron"][3]) == pytest.approx(470, rel=0.05)


def test_regime_explicit_length(tmp_path):
    assert run(tmp_path, "regime", "--lg-um", "0.73", "--height-mm", "1", "--label", "Na") == 0
    _, rows = read_csv(tmp_path / "regime.csv")
    n, supp = float(rows[0][3]), float(rows[0][4])
    assert n == pytest.approx(10000, rel=0.10)
    assert 1e-11 < supp < 1e-9


def test_manifest_contents(tmp_path):
    assert run(tmp_path, "zeros", "--n", "3") == 0
    manifest = json.loads((tmp_path / "zeros_manifest.json").read_text())
    assert manifest["command"] == "zeros"
    assert manifest["outputs"] == ["zeros.csv"]
    assert manifest["parameters"]["n_max"] == 3
    assert len(manifest["versions"]["config_sha256"]) == 64
    assert "artifact" in manifest["versions"]


@pytest.mark.parametrize("argv", [
    ["zeros", "--n", "4"],
    ["density", "--n", "3", "--grid", "101"],
    ["fourier", "--n", "5", "--q-max", "10", "--grid", "5"],
    ["limit", "--n-list", "10,20"],
])
def test_rerun_is_byte_identical(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(a, *argv) == 0 and run(b, *argv) == 0
    for f in a.iterdir():
        if f.name.endswith("_manifest.json"):
            continue
        assert f.read_bytes() == (b / f.name).read_bytes(), f.name


def test_svg_timestamp_only_without_reproducible(tmp_path):
    assert cli.main(["density", "--n", "2", "--grid", "51", "--out-dir", str(tmp_path)]) == 0
    text = (tmp_path / "density_n2.svg").read_text()
    assert "<!-- generated" in text
    ET.fromstring(text)


@pytest.mark.parametrize("argv", [
    ["tailprob", "--n-list", ""],
    ["tailprob", "--n-list", "1,x"],
    ["regime", "--species", "unobtainium"],
    ["zeros", "--n", "0"],
    ["fourier", "--n", "3", "--routes", "bogus"],
    ["limit", "--n-list", "10"],
    ["nonsense"],
])
def test_usage_errors_exit_1(tmp_path, argv):
    assert run(tmp_path, *argv) == 1


def test_accuracy_budget_exit_3(tmp_path):
    assert run(tmp_path, "fourier", "--n", "2", "--q-max", "5000", "--grid", "2", "--routes", "numeric") == 3


def test_io_failure_exit_2(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert cli.main(["zeros", "--n", "2", "--out-dir", str(blocker / "sub")]) == 2


def test_config_env_var(tmp_path, monkeypatch):
    cfg = tmp_path / "species.ini"
    cfg.write_text("[rb]\nlabel = Rb\nmass_kg = 1.443160648e-25\ngravity = 9.81\n")
    monkeypatch.setenv("BOUNCER_CONFIG", str(cfg))
    out = tmp_path / "out"
    assert run(out, "regime", "--species", "rb") == 0
    _, rows = read_csv(out / "regime.csv")
    assert rows[0][0] == "Rb"


def test_console_script_runs(tmp_path):
    exe = shutil.which("qbouncer")
    cmd = [exe] if exe else [sys.executable, "-m", "qbouncer.cli"]
    proc = subprocess.run([*cmd, "regime", "--species", "nope", "--out-dir", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "unknown species" in proc.stderr
