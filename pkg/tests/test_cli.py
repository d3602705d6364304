import sys
import os

# 动态添加项目根目录到sys.path，确保可以导入core模块
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import json

import pytest

from core.models.algebra_model import A_STAR
from main import main

DELTA = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(["--no-log-file", "--log-level", "WARNING", *argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_projector_command(capsys):
    code, out, _ = run(capsys, "projector", "--n", "1")
    assert code == 0
    assert json.loads(out)["n"] == 1


def test_projector_text(capsys):
    code, out, _ = run(capsys, "projector", "--n", "0", "--format", "text")
    assert code == 0
    assert out.startswith("p_0: rank 1")


def test_act_command(capsys):
    """E ▷ c = a*"""
    code, out, _ = run(capsys, "act", "--op", "E", "--element", "c", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["side"] == "left"
    assert data["result"] == A_STAR.to_json()


def test_act_right_side_text(capsys):
    code, out, _ = run(capsys, "act", "--op", "E K", "--element", "c", "--side", "right")
    assert code == 0
    assert "side: right" in out
    assert "result: " in out


def test_act_rejects_bad_operator(capsys):
    code, _, err = run(capsys, "act", "--op", "E X", "--element", "c")
    assert code == 2
    assert "qsphere: error:" in err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "pairing", "--max-degree", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert [suite["suite"] for suite in data["suites"]] == ["pairing"]
    assert data["settings"]["max_degree"] == 1


def test_verify_writes_output_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "verify", "--suite", "pairing", "--output", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").endswith("result: all checks passed\n")


def test_verify_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--suite", "geometry"])
    assert excinfo.value.code == 2


def test_verify_rejects_negative_degree(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "pairing", "--max-degree", "-1")
    assert code == 2


def test_levi_civita_command(capsys, tmp_path):
    """输出 27 个符号，并附带无挠与相容检查"""
    metric = write_json(tmp_path / "delta.json", {"h": DELTA, "h_inv": DELTA, "k_invariant": True})
    code, out, _ = run(capsys, "levi-civita", "--metric", metric, "--verify")
    assert code == 0
    data = json.loads(out)
    assert len(data["gamma_tilde"]) == 27
    assert data["ok"] is True
    assert [check["name"] for check in data["checks"]][0] == "torsion.k-invariant"


def test_levi_civita_with_params(capsys, tmp_path):
    metric = write_json(tmp_path / "delta.json", {"h": DELTA})
    params = write_json(tmp_path / "params.json", {"tau1": "a", "rho_zz": "2"})
    code, out, _ = run(capsys, "levi-civita", "--metric", metric, "--params", params, "--format", "text")
    assert code == 0
    assert len(out.splitlines()) == 27


def test_non_hermitian_metric_is_a_usage_error(capsys, tmp_path):
    """非厄米度量：退出状态 2，并指出违反条件的分量"""
    metric = write_json(tmp_path / "bad.json", {"h": [["1", "a", "0"], ["a", "1", "0"], ["0", "0", "1"]]})
    code, out, err = run(capsys, "levi-civita", "--metric", metric)
    assert code == 2
    assert out == ""
    assert "h[0][1]" in err


def test_non_real_metric_is_rejected(capsys, tmp_path):
    """K 不变但 H* ≠ H 的度量：缺省右作用下以实性条件拒绝"""
    metric = write_json(tmp_path / "non_real.json",
                        {"h": [["1", "0", "B0"], ["0", "1", "0"], ["B0", "0", "1"]]})
    code, out, err = run(capsys, "levi-civita", "--metric", metric)
    assert code == 2
    assert out == ""
    assert "H* = H" in err


def test_left_only_metric_is_not_k_invariant_on_the_right(capsys, tmp_path):
    metric = write_json(tmp_path / "left_only.json",
                        {"h": [["1", "0", "Bm"], ["0", "1", "0"], ["Bp", "0", "1"]]})
    code, _, err = run(capsys, "levi-civita", "--metric", metric)
    assert code == 2
    assert "K 不变" in err


def test_missing_metric_file(capsys, tmp_path):
    code, _, err = run(capsys, "levi-civita", "--metric", str(tmp_path / "missing.json"))
    assert code == 2
    assert "missing.json" in err


def test_broken_config_file(capsys, tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("verification: [1\n", encoding="utf-8")
    code = main(["--config", str(config), "--no-log-file", "projector", "--n", "0"])
    assert code == 2
