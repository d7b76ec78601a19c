import json
from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

from main import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, cli

SL2_FILE = Path(__file__).resolve().parent.parent / "data" / "uq_sl2.yaml"
P = "[[0.1,0],[0.2,0.1],[0.3,0]]"


@pytest.fixture
def runner():
    return CliRunner()


def report_of(path):
    with open(path) as f:
        return json.load(f)


def test_verify_builtin_algebra(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ['verify', '--algebra', 'uq_sl2', '--order', '2', '--out', str(out)])
    assert result.exit_code == EXIT_PASS, result.output
    report = report_of(out)
    assert report["status"] == "pass"
    assert report["order"] == 2
    checks = {c["name"]: c for c in report["checks"]}
    assert {"confluence", "coassociativity", "antipode", "yang_baxter", "quasi_cocommutativity"} <= set(checks)
    assert checks["yang_baxter"]["data"]["rmatrix"]["algebra"] == "uq_sl2"


def test_verify_prints_the_report(runner):
    result = runner.invoke(cli, ['verify', '--algebra', 'uq_sl2', '--order', '1'])
    assert result.exit_code == EXIT_PASS
    assert json.loads(result.output)["suite"] == "verify"


def test_verify_rejects_order_zero(runner):
    result = runner.invoke(cli, ['verify', '--algebra', 'k_xi_iso3', '--order', '0'])
    assert result.exit_code == EXIT_USAGE


@pytest.mark.parametrize("args", [
    ['verify'],
    ['verify', '--algebra', 'uq_sl2', '--rules', str(SL2_FILE)],
    ['verify', '--algebra', 'so3'],
    ['verify', '--algebra', 'k_xi_iso3', '--xi', '0.5'],
])
def test_verify_usage_errors(runner, args):
    assert runner.invoke(cli, args).exit_code == EXIT_USAGE


def test_export_then_verify(runner, tmp_path):
    path = tmp_path / "sl2.yaml"
    result = runner.invoke(cli, ['export', '--algebra', 'uq_sl2', '--order', '2', '--out', str(path)])
    assert result.exit_code == EXIT_PASS, result.output
    with open(path) as exported, open(SL2_FILE) as bundled:
        assert yaml.safe_load(exported) == yaml.safe_load(bundled)
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ['verify', '--rules', str(path), '--out', str(out)])
    assert result.exit_code == EXIT_PASS
    assert report_of(out)["algebra"] == "uq_sl2"


def test_corrupted_rules_file_fails(runner, tmp_path):
    with open(SL2_FILE) as f:
        data = yaml.safe_load(f)
    data["rules"][0]["tail"][0]["coefficient"] = ['3']
    path = tmp_path / "broken.yaml"
    path.write_text(yaml.safe_dump(data))
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ['verify', '--rules', str(path), '--out', str(out)])
    assert result.exit_code == EXIT_FAIL
    checks = {c["name"]: c for c in report_of(out)["checks"]}
    assert checks["confluence"]["status"] == "fail"
    assert "F·H·E" in checks["confluence"]["data"]["failures"]


def test_invalid_rules_file_is_a_usage_error(runner, tmp_path):
    path = tmp_path / "invalid.yaml"
    path.write_text("name: x\norder: 1\n")
    assert runner.invoke(cli, ['verify', '--rules', str(path)]).exit_code == EXIT_USAGE


def test_scatter_with_a_zero_spectator(runner):
    result = runner.invoke(cli, ['scatter', '--p', P, '--q', '[[0,0],[0,0],[0,0]]'])
    assert result.exit_code == EXIT_PASS, result.output
    report = json.loads(result.output)
    assert report["p_out"] == [[0.1, 0.0], [0.2, 0.1], [0.3, 0.0]]
    assert set(report["residuals"]) == {"total_energy", "momentum_plus", "momentum_minus", "mass_shell_p",
                                        "mass_shell_q", "sixth_law"}


def test_scatter_generic_pair(runner):
    result = runner.invoke(cli, ['scatter', '--p', P, '--q', '[[-0.2,0.05],[0.1,0],[0.15,-0.1]]', '--kappa', '10i'])
    assert result.exit_code == EXIT_PASS, result.output
    assert all(r < 1e-12 for r in json.loads(result.output)["residuals"].values())


def test_scatter_near_r_zero_fails(runner):
    result = runner.invoke(cli, ['scatter', '--p', '[[0,0],[1,0],[0,0]]', '--q', '[[0,0],[0,0],[1,0]]'])
    assert result.exit_code == EXIT_FAIL
    report = json.loads(result.output)
    assert "SingularKinematics" in report["checks"][0]["detail"]


@pytest.mark.parametrize("args", [
    ['scatter', '--p', 'not json', '--q', P],
    ['scatter', '--p', '[[0,0],[1,0]]', '--q', P],
    ['scatter', '--p', P],
    ['scatter', '--p', P, '--q', P, '--branch', '2'],
    ['scatter', '--p', P, '--q', P, '--kappa', '0'],
])
def test_scatter_usage_errors(runner, args):
    assert runner.invoke(cli, args).exit_code == EXIT_USAGE


@pytest.mark.slow
def test_scatter_sweep(runner, tmp_path):
    out = tmp_path / "sweep.json"
    result = runner.invoke(cli, ['scatter', '--samples', '200', '--seed', '3', '--tolerance', '1e-10',
                                 '--out', str(out)])
    assert result.exit_code == EXIT_PASS
    names = [c["name"] for c in report_of(out)["checks"]]
    assert names == ["classical_rate", "conservation:kappa=(2+0j)"]


def test_classical_in_four_dimensions(runner):
    result = runner.invoke(cli, ['classical', '--dimension', '4'])
    assert result.exit_code == EXIT_PASS, result.output
    report = json.loads(result.output)
    assert report["algebra"] == "iso(4)"
    assert "completion_witness:d=4" in [c["name"] for c in report["checks"]]


def test_classical_three_dimensional_family(runner):
    result = runner.invoke(cli, ['classical', '--dimension', '3', '--xi', '3/5'])
    assert result.exit_code == EXIT_PASS, result.output


@pytest.mark.parametrize("args", [
    ['classical', '--dimension', '7'],
    ['classical', '--dimension', '4', '--n', '1,x,0,0'],
    ['classical', '--dimension', '4', '--n', '1,0'],
])
def test_classical_usage_errors(runner, args):
    assert runner.invoke(cli, args).exit_code == EXIT_USAGE


def test_contract_rejects_epsilon_zero(runner):
    assert runner.invoke(cli, ['contract', '--epsilon', '0']).exit_code == EXIT_USAGE


def test_contract(runner):
    result = runner.invoke(cli, ['contract', '--epsilon', '1/10', '--order', '1', '--beta=-1'])
    assert result.exit_code == EXIT_PASS, result.output
    report = json.loads(result.output)
    assert report["parameters"]["beta"] == "-1"
    checks = {c["name"]: c for c in report["checks"]}
    assert checks["contraction:rmatrix"]["status"] == "pass"


def test_contract_same_sign_pairing_fails(runner):
    result = runner.invoke(cli, ['contract', '--epsilon', '1/10', '--order', '2', '--beta', '1'])
    assert result.exit_code == EXIT_FAIL, result.output
    checks = {c["name"]: c for c in json.loads(result.output)["checks"]}
    assert checks["contraction:rmatrix"]["status"] == "fail"
    assert "divergent" in checks["contraction:coproduct:E_A"]["detail"]


def test_internal_errors_exit_cleanly(runner, monkeypatch):
    def broken(*args, **kwargs):
        raise RuntimeError("lost a term")

    monkeypatch.setattr("main.verify_suite", broken)
    result = runner.invoke(cli, ['verify', '--algebra', 'uq_sl2', '--order', '1'])
    assert result.exit_code == EXIT_FAIL
    assert result.exception is None or isinstance(result.exception, SystemExit)
    assert "internal error: RuntimeError: lost a term" in result.output
