import json

import pytest

from conictree import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys):
    code, out, err = run(capsys, "validate", "--field", "Q", "--case", "I",
                         "--rho", "1", "--sigma", "1")
    assert code == 0
    assert out.strip() == "valid"


def test_validate_rejects_with_violation_listing(capsys):
    code, out, err = run(capsys, "validate", "--field", "Q", "--case", "I",
                         "--rho", "1", "--sigma", "-1")
    assert code == 1
    assert "rational point" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        cli.main(["validate", "--bogus-flag", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_missing_curve_data_is_domain_error(capsys):
    code, out, err = run(capsys, "validate", "--field", "Q")
    assert code == 1
    assert "missing curve data" in err


def test_quotient_dot_real_closed(capsys):
    code, out, err = run(capsys, "quotient", "--group", "sl2", "--field", "R",
                         "--case", "I", "--rho", "1", "--sigma", "1",
                         "--format", "dot", "--depth", "3")
    assert code == 0
    assert out.count("vstar_") >= 2
    assert "v0 -- vstar_0;" in out
    assert "v0 -- vstar_1;" in out


def test_quotient_json_determinism(capsys):
    args = ["quotient", "--group", "sl2", "--field", "Q", "--case", "I",
            "--rho", "1", "--sigma", "1", "--format", "json", "--depth", "2",
            "--witness-budget", "4"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["free_rank"] == "omega"
    branch = [e for e in data["edges"] if e["to"].startswith("vstar")]
    assert branch[0]["witnesses"] == ["3", "7", "21", "11"]


def test_quotient_gl2(capsys):
    code, out, err = run(capsys, "quotient", "--group", "gl2", "--field", "Q",
                         "--case", "I", "--rho", "1", "--sigma", "1",
                         "--format", "json", "--depth", "2")
    assert code == 0
    data = json.loads(out)
    assert len(data["ray"]) == 3
    assert len(data["vstar_lifts"]) == 1
    assert len(data["edges"]) == 3
    assert data["free_rank"] == 0


def test_witnesses_subcommand(capsys):
    code, out, err = run(capsys, "witnesses", "--field", "Q", "--case", "I",
                         "--rho", "1", "--sigma", "1", "--count", "3")
    assert code == 0
    assert out.split() == ["3", "7", "21"]


def test_witnesses_finite_index(capsys):
    code, out, err = run(capsys, "witnesses", "--field", "R", "--case", "I",
                         "--rho", "1", "--sigma", "1", "--count", "2")
    assert code == 1
    assert "not infinite" in err


def test_normalize_subcommand(capsys):
    code, out, err = run(capsys, "normalize", "--field", "Q",
                         "--coeffs", "1,0,1,0,0,1")
    assert code == 0
    assert "case I" in out
    assert "rho = 1" in out
    code, out, err = run(capsys, "normalize", "--field", "GF(2)(u)",
                         "--coeffs", "1,1,u,1,1,1")
    assert code == 0
    assert "case IV" in out and "sigma = u+1" in out


def test_normalize_rational_point_failure(capsys):
    code, out, err = run(capsys, "normalize", "--field", "Q",
                         "--coeffs", "1,0,1,0,0,-1")
    assert code == 1
    assert "rational point" in err


def test_stab_subcommand(capsys):
    code, out, err = run(capsys, "stab", "--field", "Q", "--case", "I",
                         "--rho", "1", "--sigma", "1", "--vertex", "v2")
    assert code == 0
    assert "borel(n=2, b_dim=5)" in out
    code, out, err = run(capsys, "stab", "--field", "Q", "--case", "I",
                         "--rho", "1", "--sigma", "1", "--vertex", "vstar")
    assert code == 0
    assert "U =" in out


def test_orbit_verify_subcommand(capsys):
    code, out, err = run(capsys, "orbit-verify", "--field", "Q", "--case", "I",
                         "--rho", "1", "--sigma", "1", "--depth", "2")
    assert code == 0
    assert "all checks passed: True" in out


def test_curve_file_and_inline_override(tmp_path, capsys):
    spec = tmp_path / "curve.txt"
    spec.write_text("# a valid curve\nfield = Q\ncase = I\nrho = 1\nsigma = 1\n",
                    encoding="utf-8")
    code, out, err = run(capsys, "validate", "--curve-file", str(spec))
    assert code == 0 and out.strip() == "valid"
    code, out, err = run(capsys, "validate", "--curve-file", str(spec),
                         "--sigma", "-1")
    assert code == 1
    assert "overrides" in err


def test_export_round_trip(tmp_path, capsys):
    graph_path = tmp_path / "graph.json"
    code, out, err = run(capsys, "quotient", "--group", "sl2", "--field", "R",
                         "--case", "I", "--rho", "1", "--sigma", "1",
                         "--format", "json", "--depth", "2",
                         "--output", str(graph_path))
    assert code == 0
    code, out, err = run(capsys, "export", "--input", str(graph_path),
                         "--format", "json")
    assert code == 0
    assert json.loads(out) == json.loads(graph_path.read_text())
    code, dot_out, err = run(capsys, "export", "--input", str(graph_path),
                             "--format", "dot")
    assert code == 0
    assert dot_out.startswith("graph quotient {")
