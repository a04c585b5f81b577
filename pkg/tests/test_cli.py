import json

import pytest

from skewflow import mu_he, tensor_to_json
from skewflow.cli import main


@pytest.fixture(autouse=True)
def _in_tmp(tmp_path, monkeypatch):
    # flow writes its outputs into the working directory
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInfo:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "info", "--catalog", "sl2_compact")
        assert code == 0
        assert "is_semisimple" in out
        assert "true" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "info", "--catalog", "mu_he", "--dim", "3",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["dim"] == 3
        assert data["is_lie"] is True
        assert data["is_nilpotent"] is True
        assert data["dim_center"] == 1
        assert data["jacobi_residual"] == 0.0

    def test_csv_single_row(self, capsys):
        code, out, _ = run(capsys, "info", "--catalog", "g6", "--format", "csv")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 2
        assert lines[0].startswith("dim,norm_sq,")

    def test_file_and_catalog_conflict(self, capsys):
        code, _, err = run(capsys, "info", "--file", "x.json", "--catalog", "g6")
        assert code == 1 and "error" in err

    def test_neither_input(self, capsys):
        code, _, err = run(capsys, "info")
        assert code == 1 and "error" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "info", "--file", "does_not_exist.json")
        assert code == 1


class TestMoment:
    def test_json_shape(self, capsys):
        code, out, _ = run(capsys, "moment", "--catalog", "mu_he", "--dim", "3",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["trace_R"] == pytest.approx(-2.0 * data["norm_sq"])
        assert len(data["R_re"]) == 3 and len(data["R_im"]) == 3
        assert data["scalar_F"] == pytest.approx(12.0)

    def test_zero_tensor_has_null_F(self, capsys):
        code, out, _ = run(capsys, "moment", "--catalog", "C4", "--format", "json")
        assert code == 0
        assert json.loads(out)["scalar_F"] is None


class TestClassify:
    def test_critical_point_json(self, capsys):
        code, out, _ = run(capsys, "classify", "--catalog", "mu_he", "--dim", "3",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert set(data) == {
            "c_mu", "D_eigenvalues", "residual", "F", "is_critical",
            "type", "critical_value", "critical_value_float",
        }
        assert data["is_critical"] is True
        assert data["type"] == {"ks": [1, 2], "ds": [2, 1]}
        assert data["critical_value"] == "12"
        assert data["critical_value_float"] == 12.0

    def test_noncritical_has_no_type(self, capsys):
        code, out, _ = run(capsys, "classify", "--catalog", "random", "--seed", "3",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["is_critical"] is False
        assert "type" not in data

    def test_zero_tensor_is_an_error(self, capsys):
        code, _, err = run(capsys, "classify", "--catalog", "C4")
        assert code == 1 and "zero" in err


class TestFlow:
    def test_writes_outputs_and_converges(self, capsys, tmp_path):
        code, out, _ = run(capsys, "flow", "--catalog", "g8", "--params", "0.25",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["converged"] is True
        assert data["F"] == pytest.approx(3.0, abs=1e-6)
        assert data["type"] == {"ks": [0, 1, 2], "ds": [1, 2, 1]}
        assert data["critical_value"] == "3"
        trace_file = tmp_path / data["trace_file"]
        limit_file = tmp_path / data["limit_file"]
        assert trace_file.name == "g8_0.25_trace.csv"
        assert trace_file.exists() and limit_file.exists()
        assert trace_file.read_text().startswith("step,F,grad_norm\n")
        limit = json.loads(limit_file.read_text())
        assert limit["dim"] == 4

    def test_budget_exhaustion_exits_2(self, capsys):
        code, out, _ = run(capsys, "flow", "--catalog", "g7", "--max-steps", "2",
                           "--format", "json")
        assert code == 2
        assert json.loads(out)["converged"] is False

    def test_zero_tensor_is_input_error(self, capsys):
        code, _, err = run(capsys, "flow", "--catalog", "C4")
        assert code == 1

    def test_from_file(self, capsys, tmp_path):
        path = tmp_path / "he.json"
        path.write_text(tensor_to_json(mu_he(3).tensor))
        code, out, _ = run(capsys, "flow", "--file", str(path), "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["steps"] == 0
        assert (tmp_path / "he_trace.csv").exists()
        assert (tmp_path / "he_limit.json").exists()

    def test_batch(self, capsys, tmp_path):
        items = [
            json.loads(tensor_to_json(mu_he(3).tensor)),
            json.loads(tensor_to_json(mu_he(4).tensor)),
        ]
        path = tmp_path / "batch.json"
        path.write_text(json.dumps(items))
        code, out, _ = run(capsys, "flow", "--batch", "--file", str(path),
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert len(data) == 2
        assert all(item["converged"] for item in data)
        assert (tmp_path / "batch_00_trace.csv").exists()
        assert (tmp_path / "batch_01_limit.json").exists()

    def test_batch_needs_file(self, capsys):
        code, _, err = run(capsys, "flow", "--batch", "--catalog", "g6")
        assert code == 1

    def test_batch_rejects_non_array(self, capsys, tmp_path):
        path = tmp_path / "notlist.json"
        path.write_text(tensor_to_json(mu_he(3).tensor))
        code, _, err = run(capsys, "flow", "--batch", "--file", str(path))
        assert code == 1


class TestCatalog:
    def test_list_json(self, capsys):
        code, out, _ = run(capsys, "catalog", "list")
        assert code == 0
        rows = json.loads(out)
        names = {r["name"] for r in rows}
        assert {"g1", "g8", "mu_he", "sl2_compact", "nilpotent", "random"} <= names
        for r in rows:
            assert set(r) == {"name", "param_arity", "dim", "flags"}

    def test_list_csv(self, capsys):
        code, out, _ = run(capsys, "catalog", "list", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "name,param_arity,dim,flags"

    def test_export_round_trip(self, capsys):
        code, out, _ = run(capsys, "catalog", "export", "--catalog", "mu_he",
                           "--dim", "3")
        assert code == 0
        data = json.loads(out)
        assert data["dim"] == 3
        assert data["entries"] == [{"i": 1, "j": 2, "k": 3, "re": 1.0, "im": 0.0}]

    def test_export_needs_name(self, capsys):
        code, _, err = run(capsys, "catalog", "export")
        assert code == 1

    def test_unknown_entry(self, capsys):
        code, _, err = run(capsys, "catalog", "export", "--catalog", "nope")
        assert code == 1


class TestVerify:
    def test_single_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--only", "closed-forms")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("PASS [closed-forms]")
        assert lines[-1] == "1/1 checks passed"

    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "--only", "nonsense")
        assert code == 1


class TestUsageErrors:
    def test_no_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 1

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["info", "--bogus"])
        assert exc.value.code == 1

    def test_bad_format_choice(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["info", "--catalog", "g6", "--format", "xml"])
        assert exc.value.code == 1


def test_fraction_params(capsys):
    code = main(["classify", "--catalog", "g2", "--params", "1/27,1/3",
                 "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    data = json.loads(out)
    assert data["is_critical"] is False  # start of an excluded orbit


def test_bad_param_token(capsys):
    code = main(["info", "--catalog", "g1", "--params", "abc"])
    err = capsys.readouterr().err
    assert code == 1 and "parameter" in err
