"""Command line interface: records, formats, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from pfapart import cli


def run_cli(args, capsys):
    code = cli.main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_records(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, ln.split(","))) for ln in lines[1:]]


def csv_metadata(text):
    meta = {}
    for ln in text.splitlines():
        if ln.startswith("# "):
            key, _, val = ln[2:].partition("=")
            meta[key] = val
    return meta


def test_measure_plancherel_record_count(capsys):
    code, out, _ = run_cli(
        ["measure", "--family", "plancherel_theta2", "--eta", "1", "--n-cut", "3"], capsys
    )
    assert code == 0
    recs = csv_records(out)
    assert len(recs) == 7
    assert recs[0]["partition"] == "-"
    assert float(recs[0]["m_re"]) == pytest.approx(0.36787944117144233)
    assert [r["partition"] for r in recs if r["size"] == "3"] == ["3", "2+1", "1+1+1"]


def test_measure_weights_sum_toward_one(capsys):
    code, out, _ = run_cli(
        ["measure", "--family", "z_theta2", "--z", "2.5", "--xi", "0.2", "--n-cut", "20"],
        capsys,
    )
    assert code == 0
    total = sum(float(r["m_re"]) for r in csv_records(out))
    assert total == pytest.approx(1.0, abs=1e-6)


def test_bad_xi_is_config_error(capsys):
    code, _, err = run_cli(
        ["correlate", "--family", "z_theta2", "--z", "2.5", "--xi", "1.2", "--points=1"],
        capsys,
    )
    assert code == 2
    assert "configuration error" in err


def test_missing_family_parameters_is_config_error(capsys):
    code, _, err = run_cli(["measure", "--family", "plancherel_theta2"], capsys)
    assert code == 2
    assert "eta" in err


def test_kernel_grid_diagonal_vanishes(capsys):
    code, out, _ = run_cli(
        [
            "kernel",
            "--family",
            "plancherel_theta2",
            "--eta",
            "1",
            "--route",
            "closed",
            "--x-range=-4:0",
            "--y-range=-4:0",
        ],
        capsys,
    )
    assert code == 0
    recs = csv_records(out)
    assert len(recs) == 25
    for r in recs:
        if r["x"] == r["y"]:
            assert abs(float(r["S_re"])) < 1e-11


def test_kernel_diff_mode_reports_gap(capsys):
    code, out, _ = run_cli(
        [
            "kernel",
            "--family",
            "z_theta2",
            "--z",
            "2.5",
            "--xi",
            "0.2",
            "--route",
            "closed",
            "--x-range=-3:-1",
            "--y-range=-3:-1",
            "--diff-with",
            "contour",
        ],
        capsys,
    )
    assert code == 0
    meta = csv_metadata(out)
    assert float(meta["max_route_gap"]) < 1e-9
    for r in csv_records(out):
        assert float(r["route_gap"]) < 1e-9


def test_correlate_empty_set(capsys):
    code, out, _ = run_cli(
        ["correlate", "--family", "plancherel_theta2", "--eta", "0.8", "--points="],
        capsys,
    )
    assert code == 0
    rec = csv_records(out)[0]
    assert rec["points"] == "-"
    assert float(rec["rho_re"]) == 1.0


def test_correlate_duplicate_points_rejected(capsys):
    code, _, err = run_cli(
        ["correlate", "--family", "plancherel_theta2", "--eta", "0.8", "--points=2,2"],
        capsys,
    )
    assert code == 2
    assert "distinct" in err


def test_correlate_oracle_agreement(capsys):
    code, out, _ = run_cli(
        [
            "correlate",
            "--family",
            "plancherel_theta2",
            "--eta",
            "0.8",
            "--points=-4,-2",
            "--oracle",
            "--n-cut",
            "30",
            "--format",
            "json",
        ],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    rec = payload["records"][0]
    assert rec["discrepancy"] < 1e-8
    assert rec["rho_re"] == pytest.approx(rec["oracle_re"], abs=1e-8)


def test_correlate_oracle_mismatch_exit_code(capsys, monkeypatch):
    # force a disagreement to confirm the discrepancy exit path
    monkeypatch.setattr(cli, "correlation_pfaffian", lambda kernel, pts: 0.5 + 0j)
    code, out, _ = run_cli(
        [
            "correlate",
            "--family",
            "plancherel_theta2",
            "--eta",
            "0.8",
            "--points=-2",
            "--oracle",
            "--n-cut",
            "30",
        ],
        capsys,
    )
    assert code == 4


def test_correlate_unconverged_oracle_exit_code(capsys):
    # a tolerance far below what the cutoff supports fails the tail check
    code, _, err = run_cli(
        [
            "correlate",
            "--family",
            "z_theta2",
            "--z",
            "2.5",
            "--xi",
            "0.2",
            "--points=-2",
            "--oracle",
            "--n-cut",
            "4",
            "--tol",
            "1e-12",
        ],
        capsys,
    )
    assert code == 3
    assert "tail" in err


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text(
        "# shared settings\nfamily=z_theta2\nz=2.5\nxi=0.2\nroute=closed\nformat=json\n"
    )
    code, out, _ = run_cli(
        ["correlate", "--config", str(cfgfile), "--points=-2"], capsys
    )
    assert code == 0
    assert json.loads(out)["metadata"]["route"] == "closed"
    code, out, _ = run_cli(
        ["correlate", "--config", str(cfgfile), "--route", "contour", "--points=-2"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["metadata"]["route"] == "contour"


def test_config_file_unknown_key(tmp_path, capsys):
    cfgfile = tmp_path / "bad.cfg"
    cfgfile.write_text("zeta=1.5\n")
    code, _, err = run_cli(["measure", "--config", str(cfgfile)], capsys)
    assert code == 2
    assert "unknown key" in err


def test_output_is_deterministic(tmp_path):
    args = [
        "kernel",
        "--family",
        "plancherel_theta2",
        "--eta",
        "0.8",
        "--route",
        "series",
        "--x-range=-5:1",
        "--y-range=-5:1",
    ]
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    assert cli.main(args + ["--output", str(out1)]) == 0
    assert cli.main(args + ["--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_report(tmp_path, capsys):
    out = tmp_path / "verify.json"
    code = cli.main(["verify", "--n-cut", "24", "--output", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["all_passed"] is True
    assert payload["identities"]["all_passed"] is True
    assert len(payload["comparisons"]) == 5
    for entry in payload["comparisons"]:
        assert entry["passed"] is True
        assert entry["discrepancy"] <= entry["bound"]


def test_generic_pi_through_cli(tmp_path, capsys):
    pi_file = tmp_path / "pi.json"
    pi_file.write_text("[1.0, 0.6, 0.18, 0.03]")
    code, out, _ = run_cli(
        [
            "correlate",
            "--family",
            "generic_pi",
            "--pi-file",
            str(pi_file),
            "--route",
            "series",
            "--points=-2",
            "--oracle",
            "--n-cut",
            "14",
            "--tol",
            "1e-5",
        ],
        capsys,
    )
    assert code == 0
    rec = csv_records(out)[0]
    assert float(rec["discrepancy"]) < 1e-5


def test_generic_pi_rejects_closed_route(tmp_path, capsys):
    pi_file = tmp_path / "pi.json"
    pi_file.write_text("[1.0, 0.5]")
    code, _, err = run_cli(
        [
            "correlate",
            "--family",
            "generic_pi",
            "--pi-file",
            str(pi_file),
            "--route",
            "closed",
            "--points=-2",
        ],
        capsys,
    )
    assert code == 2


def test_module_entry_point_runs():
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "pfapart.cli",
            "measure",
            "--family",
            "plancherel_theta2",
            "--eta",
            "1",
            "--n-cut",
            "2",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "size,partition,m_re,m_im" in proc.stdout
