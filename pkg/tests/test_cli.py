import json
import math

import numpy as np
import pytest

from spinsqueeze.cli import parse_and_dispatch


def run_cli(capsys, *argv):
    code = parse_and_dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_spin32(capsys):
    code, out, _ = run_cli(capsys, "classify", "--j", "3/2")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "1"
    classes = payload["classes"]
    assert len(classes) == 4
    assert [c["subspins"] for c in classes] == [
        ["3/2"],
        ["0", "1"],
        ["1/2", "1/2"],
        ["0", "0", "1/2"],
    ]
    fs = [c["f"] for c in classes]
    assert fs == pytest.approx([1.0, math.sqrt(2.5), math.sqrt(5.0), math.sqrt(10.0)], abs=1e-12)
    assert classes[0]["example_subset"] == [1, 2, 3]


def test_classify_emit_matrices(capsys):
    code, out, _ = run_cli(capsys, "classify", "--j", "1", "--emit-matrices")
    assert code == 0
    payload = json.loads(out)
    entry = payload["classes"][0]
    assert "o3_re" in entry and "o1_im" in entry
    o3 = np.array(entry["o3_re"]) + 1j * np.array(entry["o3_im"])
    assert np.allclose(o3, np.diag([1.0, 0.0, -1.0]))


def test_generators_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "generators", "--j", "3/2")
    assert code == 0
    payload = json.loads(out)
    assert payload["j"] == "3/2"
    gens = payload["generators"]
    assert [g["name"] for g in gens][:3] == ["Jx", "Jy", "Jz"]
    assert len(gens) == 15
    jz = np.array(gens[2]["re"]) + 1j * np.array(gens[2]["im"])
    assert np.allclose(jz, np.diag([1.5, 0.5, -0.5, -1.5]), atol=1e-16)
    # 17-significant-digit float text survives the round trip exactly
    y = np.array(gens[7]["re"])
    assert y[0][0] == math.sqrt(5.0) / 2.0


def test_roots_output(capsys):
    code, out, _ = run_cli(capsys, "roots", "--j", "3/2")
    assert code == 0
    payload = json.loads(out)
    roots = payload["roots"]
    assert len(roots) == 12
    tops = {tuple(np.round(r["root"], 6)) for r in roots}
    assert (1.0, round(math.sqrt(5.0), 6), 2.0) in tops
    first = roots[0]
    ladder = np.array(first["ladder_re"]) + 1j * np.array(first["ladder_im"])
    assert ladder.shape == (4, 4)


def test_limits_type_i(capsys):
    code, out, _ = run_cli(
        capsys, "limits", "--j", "3/2", "--class", "1,2,3", "--n", "100000", "--zeta", "1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "ok"
    assert abs(payload["xi2_min"] / 2.354e-4 - 1) < 0.05
    assert abs(payload["mu_min"] / 5.36e-4 - 1) < 0.05


def test_limits_no_squeezing_exit_code(capsys):
    code, out, _ = run_cli(
        capsys, "limits", "--j", "1/2", "--class", "1", "--n", "1", "--zeta", "1"
    )
    assert code == 2
    assert json.loads(out)["status"] == "no_squeezing"


def test_oat_sweep_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        "oat-sweep", "--j", "3/2", "--class", "1,3", "--n", "6",
        "--zeta", "0.70710678118654752,0.70710678118654752",
        "--mu-max", "1.0", "--mu-points", "5", "--no-banner",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "mu,perp,var_min,var_max,nu_min,xi2"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[5]) == pytest.approx(1.0, abs=1e-10)


def test_oat_sweep_banner_and_determinism(capsys):
    args = (
        "oat-sweep", "--j", "3/2", "--class", "1,2,3", "--n", "4",
        "--zeta", "1", "--mu-max", "0.5", "--mu-points", "3",
    )
    code, out_a, _ = run_cli(capsys, *args)
    code_b, out_b, _ = run_cli(capsys, *args)
    assert code == code_b == 0
    assert out_a == out_b
    assert out_a.splitlines()[0].startswith("# spinsqueeze ")


def test_class_selector_by_subspins(capsys):
    code, out, _ = run_cli(
        capsys, "limits", "--j", "3/2", "--class", "1/2+1/2", "--n", "1000",
        "--zeta", "0.70710678118654752,0.70710678118654752",
    )
    assert code == 0
    code2, out2, _ = run_cli(
        capsys, "limits", "--j", "3/2", "--class", "1,3", "--n", "1000",
        "--zeta", "0.70710678118654752,0.70710678118654752",
    )
    assert json.loads(out)["xi2_min"] == json.loads(out2)["xi2_min"]


def test_zeta_parsing_strict_and_renormalize(capsys):
    code, _, err = run_cli(
        capsys, "limits", "--j", "3/2", "--class", "1,2,3", "--n", "100",
        "--zeta", "0.5", "--strict",
    )
    assert code == 1
    assert "strict" in err
    code, out, err = run_cli(
        capsys, "limits", "--j", "3/2", "--class", "1,2,3", "--n", "100", "--zeta", "0.5"
    )
    assert code == 0
    assert "renormalizing" in err


def test_usage_errors(capsys):
    code, _, err = run_cli(capsys, "limits", "--j", "nonsense", "--class", "1", "--n", "5", "--zeta", "1")
    assert code == 1
    code, _, _ = run_cli(capsys, "unknown-command")
    assert code == 1
    code, _, err = run_cli(
        capsys, "limits", "--j", "3/2", "--class", "9", "--n", "5", "--zeta", "1"
    )
    assert code == 1


def test_coherent_report(capsys):
    code, out, _ = run_cli(
        capsys, "coherent", "--j", "3/2", "--class", "1,2,3", "--n", "4", "--zeta", "1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["perp_expectation"] == pytest.approx(6.0, abs=1e-12)
    assert payload["fluctuation"] == pytest.approx(3.0, abs=1e-12)
    assert payload["xi2"] == 1.0
    # minimum-uncertainty identity encoded in the report
    assert payload["uncertainty_product"] == pytest.approx(
        payload["min_uncertainty_bound"], rel=1e-12
    )


def test_oracle_check_passes(capsys):
    code, out, err = run_cli(
        capsys,
        "oracle-check", "--j", "3/2", "--class", "1,3", "--n", "8",
        "--zeta", "0.70710678118654752,0.70710678118654752",
        "--mu-points", "12", "--no-banner",
    )
    assert code == 0
    assert "max discrepancy" in err
    lines = out.strip().splitlines()
    assert lines[0].split(",")[:3] == ["mu", "perp_analytic", "perp_oracle"]
    assert len(lines) == 13


def test_zeta_scan_cli_and_config(tmp_path, capsys):
    cfg = tmp_path / "scan.json"
    cfg.write_text(
        json.dumps({"j": "3/2", "class": "1,3", "n": 1000, "zeta1_sq_grid": [0.3, 0.5, 0.7]})
    )
    code, out, _ = run_cli(capsys, "zeta-scan", "--config", str(cfg), "--no-banner")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "zeta1_sq,xi2_min,mu_min,status"
    assert len(lines) == 4
    assert [float(l.split(",")[0]) for l in lines[1:]] == [0.3, 0.5, 0.7]


def test_fit_cli(tmp_path, capsys):
    path = tmp_path / "points.csv"
    rows = ["n,xi2_min"]
    for n in np.geomspace(100, 1e5, 8):
        rows.append(f"{n},{2.5 * n ** -0.6}")
    path.write_text("\n".join(rows))
    code, out, _ = run_cli(capsys, "fit", "--input", str(path), "--model", "power")
    assert code == 0
    payload = json.loads(out)
    assert payload["params"]["a"]["value"] == pytest.approx(2.5, rel=1e-6)
    assert payload["params"]["p"]["value"] == pytest.approx(0.6, rel=1e-6)


def test_table_subcommands_json_format(capsys):
    code, out, _ = run_cli(
        capsys, "oat-sweep", "--j", "3/2", "--class", "1,2,3", "--n", "4",
        "--zeta", "1", "--mu-max", "0.4", "--mu-points", "2", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "1"
    assert payload["rows"][0]["xi2"] == 1
    code, out, _ = run_cli(
        capsys, "zeta-scan", "--j", "3/2", "--class", "1,3", "--n", "200",
        "--grid-points", "3", "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["zeta1_sq"] for r in rows] == [0.0, 0.5, 1.0]


def test_output_file_writing(tmp_path, capsys):
    target = tmp_path / "classes.json"
    code, out, _ = run_cli(capsys, "classify", "--j", "1", "--output", str(target))
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert len(payload["classes"]) == 2
