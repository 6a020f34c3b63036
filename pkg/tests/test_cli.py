import json
import math

import pytest

import main
from kernels.errors import TruncationError
from kernels.geometry import CPoint
from kernels.punctured_kernel import evans_kernel_punctured


def run(capsys, *argv):
    code = main.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_evans_kernel(capsys):
    code, out, err = run(capsys, "eval", "--domain", "c0", "--kernel", "evans", "--l", "0.5",
                         "--p", "1+0i", "--q", "-1+0i")
    assert code == 0
    assert out == "6.931471805599453e-1\n"
    assert err == ""


def test_negative_point_literals_without_equals(capsys):
    assert main.attach_point_values(["eval", "--q", "-1+0i", "--l", "-0.5", "--p=-2i"]) == [
        "eval", "--q=-1+0i", "--l", "-0.5", "--p=-2i"]
    code, out, err = run(capsys, "eval", "--domain", "c0", "--kernel", "evans", "--l", "0.5",
                         "--p", "-1-1i", "--q", "-0.5i")
    assert code == 0, err
    expected = evans_kernel_punctured(CPoint(-1.0, -1.0), CPoint(0.0, -0.5), 0.5)
    assert float(out) == pytest.approx(expected, rel=1e-15)


def test_eval_green_is_negative(capsys):
    code, out, _ = run(capsys, "eval", "--domain", "annulus", "--kernel", "green", "--r", "0.2",
                       "--p", "0.5+0i", "--q", "0.9+0i", "--tol", "1e-12")
    assert code == 0
    assert float(out) < 0.0


def test_eval_pole_is_usage_error(capsys):
    code, out, err = run(capsys, "eval", "--domain", "c0", "--kernel", "evans", "--l", "0.5",
                         "--p", "1+0i", "--q", "1+0i")
    assert code == 2
    assert out == ""
    assert "pole: p equals q" in err


@pytest.mark.parametrize("argv", [
    ["eval", "--domain", "c0", "--kernel", "evans", "--p", "1+0i", "--q", "2+0i"],
    ["eval", "--domain", "c0", "--kernel", "green", "--p", "1+0i", "--q", "2+0i"],
    ["eval", "--domain", "c0", "--kernel", "evans", "--l", "0.5", "--p", "0", "--q", "2+0i"],
    ["eval", "--domain", "c0", "--kernel", "evans", "--l", "0.5", "--p", "oops", "--q", "2+0i"],
    ["eval", "--domain", "torus", "--kernel", "evans", "--p", "1", "--q", "2"],
    ["eval", "--domain", "annulus", "--kernel", "green", "--r", "0.2", "--t", "1", "--p", "1", "--q", "2"],
    ["grid", "--domain", "c0", "--kernel", "metric", "--s", "1", "--x-min", "2", "--x-max", "1",
     "--y-min", "1", "--y-max", "2", "--nx", "2", "--ny", "2", "--out", "unused.csv"],
    ["verify", "--domain", "c0", "--k", "1.5"],
    ["bmax", "--domain", "c0", "--grid-step", "0"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_numerical_failure_exits_three(capsys, monkeypatch):
    def fail(*args, **kwargs):
        raise TruncationError("no J certifies tol")

    monkeypatch.setattr(main, "nakai_convergence_study", fail)
    code, _, err = run(capsys, "converge", "--t-list", "1,2")
    assert code == 3
    assert err.startswith("numerical:")


def test_grid_metric_values(capsys, tmp_path):
    out = tmp_path / "metric.csv"
    code, _, _ = run(capsys, "grid", "--domain", "c0", "--kernel", "metric", "--s", "1",
                     "--x-min", "1", "--x-max", "2", "--y-min", "1", "--y-max", "2",
                     "--nx", "2", "--ny", "2", "--out", str(out))
    assert code == 0
    data = out.read_bytes()
    assert b"\r" not in data
    lines = data.decode("utf-8").splitlines()
    assert lines[0] == "x,y,value"
    assert len(lines) == 5
    x, y, value = lines[1].split(",")
    assert (float(x), float(y)) == (1.0, 1.0)
    assert float(value) == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)
    # y 为外层循环
    assert [tuple(map(float, line.split(",")[:2])) for line in lines[1:]] == [
        (1.0, 1.0), (2.0, 1.0), (1.0, 2.0), (2.0, 2.0)]


def test_grid_masks_puncture_and_is_deterministic(capsys, tmp_path):
    argv = ["grid", "--domain", "c0", "--kernel", "evans", "--l", "0.5", "--q", "0.5+0.5i",
            "--x-min", "-1", "--x-max", "1", "--y-min", "-1", "--y-max", "1",
            "--nx", "5", "--ny", "5", "--mask-radius", "0.1"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, *argv, "--out", str(first))[0] == 0
    assert run(capsys, *argv, "--out", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()
    rows = [line.split(",") for line in first.read_text().splitlines()[1:]]
    masked = {(float(x), float(y)) for x, y, value in rows if value == "nan"}
    assert masked == {(0.0, 0.0), (0.5, 0.5)}


def test_grid_through_puncture_and_pole_without_mask(capsys, tmp_path):
    out = tmp_path / "metric.csv"
    code, _, _ = run(capsys, "grid", "--domain", "c0", "--kernel", "metric", "--s", "1",
                     "--x-min", "-1", "--x-max", "1", "--y-min", "-1", "--y-max", "1",
                     "--nx", "3", "--ny", "3", "--out", str(out))
    assert code == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    assert len(rows) == 9
    assert {(float(x), float(y)) for x, y, value in rows if value == "nan"} == {(0.0, 0.0)}

    out = tmp_path / "evans.csv"
    code, _, _ = run(capsys, "grid", "--domain", "c0", "--kernel", "evans", "--l", "0.5", "--q", "1+0i",
                     "--x-min", "-1", "--x-max", "1", "--y-min", "-1", "--y-max", "1",
                     "--nx", "3", "--ny", "3", "--out", str(out))
    assert code == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    assert {(float(x), float(y)) for x, y, value in rows if value == "nan"} == {(0.0, 0.0), (1.0, 0.0)}


def test_converge_evaluation_failure_exits_three(capsys):
    # t = 0.3 时部分样本落在圆环外
    code, out, err = run(capsys, "converge", "--t-list", "0.3,1")
    assert code == 3
    assert out == ""
    assert err.startswith("numerical:")


def test_converge_report(capsys):
    code, out, _ = run(capsys, "converge")
    assert code == 0
    payload = json.loads(out)
    assert list(payload) == ["t", "sup_error", "fitted_rate", "seed", "samples"]
    assert payload["t"] == [1.0, 2.0, 3.0, 4.0]
    errors = payload["sup_error"]
    assert all(b < a for a, b in zip(errors, errors[1:]))
    assert payload["seed"] == 0 and len(payload["samples"]) == 12


def test_converge_single_t_and_determinism(capsys):
    code, out, _ = run(capsys, "converge", "--t-list", "1", "--seed", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["fitted_rate"] is None
    assert len(payload["t"]) == len(payload["sup_error"]) == 1
    assert run(capsys, "converge", "--t-list", "1", "--seed", "7")[1] == out


def test_meta_banner_goes_to_stderr(capsys):
    code, out, err = run(capsys, "converge", "--t-list", "1", "--meta")
    assert code == 0
    assert err.startswith("# evans-selberg converge")
    assert json.loads(out)["seed"] == 0


def test_verify_punctured_plane(capsys):
    code, out, _ = run(capsys, "verify", "--domain", "c0", "--k", "0.5", "--l", "0.5")
    assert code == 0
    checks = json.loads(out)
    assert all(list(c) == ["name", "expect", "passed", "measured", "threshold", "witness"] for c in checks)
    controls = [c for c in checks if c["expect"] == "fail"]
    assert controls and all(not c["passed"] and c["witness"] is not None for c in controls)


def test_verify_annulus_with_oracle(capsys):
    code, out, _ = run(capsys, "verify", "--domain", "annulus", "--r", "0.2", "--include-oracle")
    assert code == 0
    names = [c["name"] for c in json.loads(out)]
    assert "oracle_sup_deviation" in names


def test_bmax_reports(capsys):
    code, out, _ = run(capsys, "bmax", "--domain", "c0", "--grid-step", "0.001")
    assert code == 0
    payload = json.loads(out)
    assert list(payload) == ["argmin", "min_b_max", "empirical_check"]
    assert payload["min_b_max"] == pytest.approx(0.5, abs=5e-4)
    assert payload["empirical_check"]["agrees"] is True

    code, out, _ = run(capsys, "bmax", "--domain", "c01", "--grid-step", "0.001")
    assert code == 0
    assert json.loads(out)["min_b_max"] == pytest.approx(1.0 / 3.0, abs=1e-3)

    code, out, _ = run(capsys, "bmax", "--domain", "c0", "--grid-step", "0.5")
    assert code == 0
    assert json.loads(out)["min_b_max"] >= 0.5
