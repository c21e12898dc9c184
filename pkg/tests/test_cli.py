"""Front-end plumbing: every subcommand runs, output is deterministic,
config precedence holds, and domain errors come back as clean messages
with a nonzero exit instead of tracebacks."""

import json
import math

import pytest

from pennerlab import cli

SQRT3_STR = repr(math.sqrt(3.0))


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_zeros_smoke_degree_two(capsys):
    code, out, err = run(["zeros", "--t", SQRT3_STR, "--r", "0.142857",
                          "--n", "2"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "kind,re,im"
    assert sum(1 for ln in lines if ln.startswith("zero,")) == 2
    assert "np." not in out  # rows must be plain float reprs
    assert "on-interval" in err
    for ln in lines[1:]:
        kind, re, im = ln.split(",")
        float(re), float(im)


def test_support_json(capsys):
    code, out, _ = run(["support", "--t", "2", "--l", "0.5",
                        "--format", "json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["a"] == pytest.approx(3.0 - 2.0 * math.sqrt(2.0), rel=1e-12)
    assert len(d["oval"]) > 10


def test_density_rows(capsys):
    code, out, _ = run(["density", "--t", "2", "--l", "0.5", "--n", "40"],
                       capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "component,re,im,weight"
    assert any(ln.startswith("oval,") for ln in lines)


def test_electro_json_report(capsys):
    code, out, _ = run(["electro", "--t", "2", "--l", "0.5",
                        "--format", "json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["free_energy_relation_gap"] < 1e-9


def test_partition_csv_and_json_agree(capsys):
    code, out_csv, _ = run(["partition", "--p", "5", "--q", "2",
                            "--n-max", "8"], capsys)
    assert code == 0
    code, out_json, _ = run(["partition", "--p", "5", "--q", "2",
                             "--n-max", "8", "--format", "json"], capsys)
    assert code == 0
    rows = json.loads(out_json)
    first_csv = out_csv.splitlines()[1].split(",")
    assert rows[0]["n"] == int(first_csv[0])
    assert rows[0]["logabsZ_barnes"] == float(first_csv[3])


def test_fsweep_single_row(capsys):
    code, out, _ = run(["fsweep", "--t", SQRT3_STR, "--r", "0.2",
                        "--n", "5", "--n-max", "5"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,F_n,planar_limit"
    assert len(lines) == 2
    assert lines[1].startswith("5,")


def test_fsweep_needs_l_when_no_limit_exists(capsys):
    code, _, err = run(["fsweep", "--p", "5", "--q", "2", "--n-max", "5"],
                       capsys)
    assert code == 2
    assert "error:" in err and "--l" in err


def test_expansion_table(capsys):
    code, out, _ = run(["expansion", "--p", "5", "--q", "2",
                        "--alpha", "0.3", "--n", "3"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["K"] == 3 and len(d["coeffs"]) == 4


def test_euler_csv(capsys):
    code, out, _ = run(["euler", "--n", "2", "--n-max", "1"], capsys)
    assert code == 0
    assert "2,0,-1,240" in out.splitlines()


def test_dscale(capsys):
    code, out, _ = run(["dscale", "--t", "1.5", "--alpha", "0.25"], capsys)
    assert code == 0
    assert json.loads(out)["mu"] == 1.5


def test_verify_passes_by_default(capsys):
    code, out, err = run(["verify"], capsys)
    assert code == 0
    report = json.loads(out)
    assert all(row["pass"] for row in report)
    assert "ok " in err


def test_verify_zero_tolerance_fails(capsys):
    code, out, _ = run(["verify", "--tol", "0"], capsys)
    assert code == 1
    assert any(not row["pass"] for row in json.loads(out))


def test_verify_degenerate_t_is_clean_error(capsys):
    code, _, err = run(["verify", "--t", "1"], capsys)
    assert code == 2
    assert err.startswith("error:")
    assert "Traceback" not in err


def test_deterministic_bytes(capsys):
    argv = ["fsweep", "--t", "0.5773502691896258", "--r", "0.25",
            "--n-max", "20"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert out1 == out2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    code, out, _ = run(["partition", "--p", "5", "--q", "2",
                        "--n-max", "6", "--out", str(target)], capsys)
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.splitlines()[0].startswith("n,")
    assert text.endswith("\n")


def test_config_file_merge_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"p": 5, "q": 2, "n_max": 9}))
    code, out, _ = run(["partition", "--config", str(cfg)], capsys)
    assert code == 0
    assert len(out.splitlines()) == 10  # header + 9 rows from the file
    code, out, _ = run(["partition", "--config", str(cfg),
                        "--n-max", "4"], capsys)
    assert code == 0
    assert len(out.splitlines()) == 5  # flag wins over the file


def test_bad_config_file_is_clean_error(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text("[1, 2]")
    code, _, err = run(["partition", "--config", str(cfg)], capsys)
    assert code == 2
    assert "error:" in err
