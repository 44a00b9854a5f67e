import json
import subprocess
import sys

import pytest

from padic_ratios.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_theta(capsys):
    code, out, _ = run(capsys, "theta", "-n", "6", "-b", "11", "--certificate")
    data = json.loads(out)
    assert code == 0 and data["value"] == 3 and data["certificate"] == [1, 1, 2]
    code, out, _ = run(capsys, "theta", "-n", "6", "-b", "11")
    assert "certificate" not in json.loads(out)


def test_gamma(capsys):
    code, out, _ = run(capsys, "gamma", "-n", "2", "-b", "8")
    assert code == 0 and json.loads(out)["value"] == 4


def test_dense_powersum_not_dense_exits_zero(capsys):
    code, out, _ = run(capsys, "dense", "powersum", "-m", "7", "-n", "4", "-p", "2")
    data = json.loads(out)
    assert code == 0 and data["status"] == "NotDense"
    assert set(data) == {"status", "reason", "certificate", "inputs", "theorem"}


def test_dense_s2_and_poly(capsys):
    assert json.loads(run(capsys, "dense", "s2", "-n", "4", "-p", "17")[1])["status"] == "Dense"
    assert json.loads(run(capsys, "dense", "poly", "--poly", "[1,0,1]", "-p", "13")[1])["status"] == "Dense"
    out = run(capsys, "dense", "poly", "--poly", "(X+1)^6(X+2)^10(X+3)^15", "-p", "5")[1]
    assert json.loads(out)["status"] == "Unknown"


def test_witness_commands(capsys):
    code, out, _ = run(capsys, "witness", "poly", "--poly", "(X)(X-1)", "--roots", "0,1", "-r", "5", "-u", "10", "-p", "5")
    assert code == 0 and json.loads(out)["exponent"] > 10
    code, out, _ = run(capsys, "witness", "powersum", "-m", "2", "-n", "3", "-p", "3", "-r", "3", "-u", "5")
    data = json.loads(out)
    assert data["a"] == [721, 8] and data["b"] == [235, 8]


def test_oracle_commands(capsys):
    code, out, _ = run(capsys, "oracle", "theta", "-n", "6", "-b", "11", "--gmax", "4")
    assert code == 0 and json.loads(out)["value"] == 3
    code, out, _ = run(capsys, "oracle", "spectrum", "--poly", "(X)(X-1)", "-p", "5", "--xmax", "100", "--modulus", "2")
    assert code == 0 and json.loads(out)["missing_classes"] == []


def test_closure_commands(capsys):
    code, out, _ = run(capsys, "closure", "ratio", "-m", "7", "-n", "4", "--value", "15")
    assert code == 0 and json.loads(out)["member"] is False
    code, out, _ = run(capsys, "closure", "ratio", "-m", "8", "-n", "4", "--value", "15")
    assert json.loads(out)["member"] is True
    code, out, _ = run(capsys, "closure", "member", "-m", "1", "-n", "4", "--value", "16")
    assert json.loads(out)["member"] is True


def test_human_output(capsys):
    code, out, _ = run(capsys, "--human", "theta", "-n", "6", "-b", "11")
    assert code == 0 and out.startswith("theta(6, 11) = 3")
    code, out, _ = run(capsys, "--human", "dense", "powersum", "-m", "7", "-n", "4", "-p", "2")
    assert out.startswith("NotDense")


@pytest.mark.parametrize(
    "argv",
    [
        ["dense", "powersum", "-m", "3", "-n", "4", "-p", "15"],
        ["dense", "poly", "--poly", "X^2+1", "-p", "5"],
        ["witness", "poly", "--poly", "(X)(X-1)", "--roots", "0", "-r", "5", "-u", "3", "-p", "5"],
        ["dense", "powersum", "-m", "3", "-n", "4", "-p", str(2**64 + 13)],
    ],
)
def test_usage_errors_exit_one(capsys, argv):
    code = main(argv)
    assert code == 1
    assert capsys.readouterr().out == ""


def test_missing_argument_exits_one(capsys):
    assert main(["theta", "-n", "3"]) == 1
    assert "required" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["oracle", "theta", "-n", "16", "-b", "512", "--gmax", "64", "--budget", "10"],
        ["closure", "member", "-m", "3", "-n", "4", "--value", "3", "--precision", "2"],
        ["oracle", "spectrum", "--poly", "(X)", "-p", "5", "--xmax", "1000", "--budget", "10"],
    ],
)
def test_exhaustion_exits_two(capsys, argv):
    assert main(argv) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] in ("budget-exceeded", "precision-exhausted")


def test_byte_identical_subprocess():
    argv = [sys.executable, "-m", "padic_ratios", "dense", "powersum", "-m", "64", "-n", "16", "-p", "2"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["status"] == "Dense"
