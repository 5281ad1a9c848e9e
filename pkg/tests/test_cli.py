import json
import math

import pytest

from gaussmarg import reference_bound_exact, spec_from_json
from gaussmarg.cli import main

SIGMA_TEXT = "0.7071067811865476"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bound_command(capsys):
    code, out, _ = run(capsys, "bound", "--vandermonde", "2", "--sigma", SIGMA_TEXT)
    assert code == 0
    obj = json.loads(out)
    assert obj["bound_K"] == pytest.approx(reference_bound_exact(), rel=1e-6)
    assert set(obj["certificate"]) == {"argmax", "search_radius", "grid_resolution"}


def test_build_round_trip_and_idempotence(tmp_path, capsys):
    spec_path = tmp_path / "spec.json"
    args = ["build", "--vandermonde", "2", "--sigma", SIGMA_TEXT,
            "--epsilon", "0.02", "--out", str(spec_path)]
    assert main(args) == 0
    first = spec_path.read_bytes()
    spec = spec_from_json(json.loads(first))
    assert spec.epsilon == 0.02
    assert main(args) == 0
    assert spec_path.read_bytes() == first

    code, out, _ = run(capsys, "bound", "--spec", str(spec_path))
    assert code == 0
    assert json.loads(out)["bound_K"] == spec.bound_K


def test_build_from_normals_file(tmp_path, capsys):
    normals = tmp_path / "normals.json"
    normals.write_text(json.dumps([[1.0, 0.0], [0.0, 1.0]]))
    code, out, _ = run(capsys, "build", "--normals", str(normals),
                       "--sigma", "0.5", "--epsilon", "0.0")
    assert code == 0
    obj = json.loads(out)
    assert obj["polynomial"]["terms"] == [{"exponents": [1, 1], "coeff": 1.0}]


def test_build_from_poly_file(tmp_path, capsys):
    poly = tmp_path / "poly.json"
    poly.write_text(json.dumps({
        "dimension": 2,
        "terms": [{"exponents": [2, 0], "coeff": 1.0}],
    }))
    code, out, _ = run(capsys, "build", "--poly", str(poly),
                       "--sigma", "0.5", "--epsilon", "0.0")
    assert code == 0
    assert json.loads(out)["sigma"] == 0.5


def test_eval_grid_csv(tmp_path, capsys):
    out_path = tmp_path / "grid.csv"
    code, _, _ = run(capsys, "eval", "--example26", "--grid", "-3,3,21",
                     "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "x1,x2,f"
    assert len(lines) == 1 + 21 * 21
    x1, x2, f = (float(v) for v in lines[1].split(","))
    assert (x1, x2) == (-3.0, -3.0)
    assert f > 0.0


def test_marginal_csv_and_theta(tmp_path, capsys):
    out_path = tmp_path / "marginal.csv"
    code, _, _ = run(capsys, "marginal", "--example26",
                     "--theta", str(math.pi / 8), "--grid", "-4,4,81",
                     "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "x,g"
    assert len(lines) == 82
    code, out, _ = run(capsys, "marginal", "--example26",
                       "--direction", "1,0", "--grid", "0,1,3")
    assert code == 0
    first = out.strip().splitlines()[1]
    assert float(first.split(",")[1]) == pytest.approx(
        1.0 / math.sqrt(2 * math.pi), rel=1e-12
    )


def test_modes_reports_nonunimodal(capsys):
    code, out, _ = run(capsys, "modes", "--example26",
                       "--eta", "1.847", "--theta", "0.3927")
    assert code == 0
    obj = json.loads(out)
    assert obj["classification"] == "nonunimodal"
    assert len(obj["critical_points"]) == 1
    assert 0.5 < obj["critical_points"][0] < 1.0


def test_modes_unimodal_small_eta(capsys):
    code, out, _ = run(capsys, "modes", "--example26",
                       "--eta", "0.01", "--theta", "0.3927")
    assert code == 0
    assert json.loads(out)["classification"] == "unimodal"


def test_sample_csv(tmp_path, capsys):
    out_path = tmp_path / "points.csv"
    code, _, err = run(capsys, "sample", "--example26", "--N", "500",
                       "--seed", "7", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "x1,x2"
    assert len(lines) == 501
    assert "acceptance=" in err


def test_verify_exit_codes(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--example26", "--N", "4000",
                     "--seed", "0", "--out", str(report))
    assert code == 0
    entries = json.loads(report.read_text())
    assert len(entries) == 6  # 4 directions + 2 invariance statistics
    assert all(e["pass"] for e in entries)
    # an absurd alpha forces failures and the dedicated exit status
    code, _, _ = run(capsys, "verify", "--example26", "--N", "4000",
                     "--seed", "0", "--alpha", "0.999999")
    assert code == 2


def test_verify_single_direction(capsys):
    code, out, _ = run(capsys, "verify", "--example26", "--N", "4000",
                       "--direction", "1,0")
    assert code == 0
    entries = json.loads(out)
    assert entries[0]["test"] == "marginal[1,0]"


def test_build_epsilon_zero_then_verify_all_pass(tmp_path, capsys):
    spec_path = tmp_path / "gauss.json"
    assert main(["build", "--vandermonde", "2", "--sigma", "0.70710678",
                 "--epsilon", "0", "--out", str(spec_path)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "verify", "--spec", str(spec_path), "--N", "3000")
    assert code == 0
    assert all(e["pass"] for e in json.loads(out))


def test_verify_skips_invariance_for_symmetric_polynomial(tmp_path, capsys):
    poly = tmp_path / "poly.json"
    poly.write_text(json.dumps({
        "dimension": 2,
        "terms": [{"exponents": [2, 2], "coeff": 1.0}],
    }))
    spec_path = tmp_path / "spec.json"
    assert main(["build", "--poly", str(poly), "--sigma", "0.5",
                 "--epsilon", "0.001", "--out", str(spec_path)]) == 0
    capsys.readouterr()
    code, out, err = run(capsys, "verify", "--spec", str(spec_path), "--N", "3000")
    assert code == 0
    entries = json.loads(out)
    assert len(entries) == 4  # the four default directions; invariance skipped
    assert "skipped" in err
    # axes lie in the zero set, the diagonals do not
    nulls = {e["test"]: e["null"] for e in entries}
    assert nulls["marginal[1,0]"] == "gaussian N(0,1)"
    assert nulls["marginal[0.707107,0.707107]"] == "perturbed marginal"


def test_example26_smoke(capsys):
    code, out, _ = run(capsys, "example26", "--N", "20000")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines)
    assert any("128/e^2" in line for line in lines)
    assert any("nonunimodal" in line for line in lines)


def test_usage_and_module_errors_exit_one(capsys, tmp_path):
    assert main(["bogus-command"]) == 1
    capsys.readouterr()
    assert main(["bound", "--vandermonde", "3", "--sigma", "0.5"]) == 1
    capsys.readouterr()
    # --eta outside the reference scenario is rejected
    spec_path = tmp_path / "spec.json"
    main(["build", "--vandermonde", "2", "--sigma", SIGMA_TEXT,
          "--out", str(spec_path)])
    capsys.readouterr()
    assert main(["eval", "--spec", str(spec_path), "--eta", "0.5"]) == 1
    capsys.readouterr()
    assert main(["modes", "--example26"]) == 1  # needs a direction or theta
    capsys.readouterr()
    assert main(["eval", "--example26", "--grid", "3,-3,10"]) == 1


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
