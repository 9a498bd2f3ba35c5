import json

import numpy as np
import pytest

from fourstab.bounds import dft_freq_bounds
from fourstab.cli import ConfigError, dispatch, load_config, parse_points, parse_real
from fourstab.core_matrix import ComplexDense, build_dft
from fourstab.spectral import svd_values


def run_cli(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_fractions_exact(self):
        assert parse_real("1/2") == 0.5
        assert parse_real("3/4") == 0.75
        assert parse_real("0.25") == 0.25
        assert parse_real("inf") == float("inf")

    def test_points_one_dim(self):
        assert parse_points("0,1/2") == [[0.0], [0.5]]

    def test_points_multi_dim(self):
        assert parse_points("0,0;1/2,1/4") == [[0.0, 0.0], [0.5, 0.25]]


class TestSpectralCommand:
    def test_dft_four(self, capsys):
        code, out, _ = run_cli(capsys, "spectral", "--m", "4")
        assert code == 0
        doc = json.loads(out)
        assert np.allclose(doc["singular_values"], 2.0, atol=1e-12)

    def test_round_trip_bit_identical(self, capsys, tmp_path):
        path = tmp_path / "mat.json"
        code, out, _ = run_cli(capsys, "build", "--m", "3", "--out", str(path))
        assert code == 0
        code, out, _ = run_cli(capsys, "spectral", "--input", str(path))
        assert code == 0
        direct = svd_values(build_dft((3,))).to_json()
        assert out.strip() == direct

    def test_no_source_is_failure(self, capsys):
        code, out, err = run_cli(capsys, "spectral")
        assert code == 1
        assert json.loads(err)["error"] == "ValueError"


class TestBuildCommand:
    def test_json_document(self, capsys):
        code, out, _ = run_cli(capsys, "build", "--m", "2,3")
        doc = json.loads(out)
        assert doc["rows"] == 6 and doc["cols"] == 6

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "build", "--m", "2", "--format", "csv")
        assert out.startswith("row,col,re,im")

    def test_vandermonde_source(self, capsys):
        code, out, _ = run_cli(capsys, "build", "--L", "4", "--nodes", "0,1/2")
        assert code == 0
        mat = ComplexDense.from_json(out)
        assert mat.rows == 4 and mat.cols == 2

    def test_gamma_source(self, capsys):
        code, out, _ = run_cli(capsys, "build", "--deltas", "0,1/2,1/4", "--p", "0,1")
        assert code == 0
        mat = ComplexDense.from_json(out)
        assert mat.rows == 3 and mat.cols == 2
        assert mat.data[2, 1] == 1j


class TestBoundsCommand:
    def test_t3_pass_through(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--theorem", "t3", "--m", "16", "--ell", "0.1")
        assert code == 0
        assert json.loads(out) == dft_freq_bounds((16,), 0.1).to_dict()

    def test_gated_ell_is_report_not_error(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--theorem", "t3", "--m", "4", "--ell", "0.3")
        assert code == 0
        doc = json.loads(out)
        assert doc["applicable"] is False

    def test_wellsep(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "--theorem", "wellsep", "--L", "4", "--sep", "1/2"
        )
        doc = json.loads(out)
        assert doc["sigma_min_lower"] == pytest.approx(2.0)

    def test_instability(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--theorem", "instability", "--n", "5")
        doc = json.loads(out)
        assert doc["condition"] == pytest.approx(6**0.5)

    def test_missing_flags_fail_cleanly(self, capsys):
        code, out, err = run_cli(capsys, "bounds", "--theorem", "t3")
        assert code == 1
        assert "requires" in json.loads(err)["message"]


class TestClassifyCommand:
    def test_riesz_basis(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--deltas", "0,0.5", "--p", "0,1")
        doc = json.loads(out)
        assert doc["kind"] == "RieszBasis"
        assert doc["lower_constant"] == pytest.approx(2.0, rel=1e-10)
        assert doc["upper_constant"] == pytest.approx(2.0, rel=1e-10)

    def test_fraction_inputs(self, capsys):
        code, out, _ = run_cli(capsys, "classify", "--deltas", "0,1/2", "--p", "0,2")
        assert json.loads(out)["kind"] == "Degenerate"


class TestExitCodes:
    def test_unknown_command_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            dispatch(["frobnicate"])
        assert exc.value.code == 2

    def test_unknown_flag_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            dispatch(["spectral", "--bogus", "1"])
        assert exc.value.code == 2

    def test_computation_failure_is_one(self, capsys):
        code, out, err = run_cli(capsys, "build", "--instability", "4")
        assert code == 1
        assert json.loads(err)["error"] == "ValueError"


class TestLoadConfig:
    def test_minimal_valid(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"command": "experiment", "experiment": "figure1", "n_list": [3, 5]}))
        cfg = load_config(str(path))
        assert cfg.seed == 0 and cfg.format == "json"
        assert cfg.params["n_list"] == [3, 5]

    def test_missing_command_names_field(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"experiment": "figure1", "n_list": [3]}))
        with pytest.raises(ConfigError) as err:
            load_config(str(path))
        assert err.value.field_name == "command"

    def test_missing_required_param(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"command": "experiment", "experiment": "freq_stability", "m": [8]}))
        with pytest.raises(ConfigError) as err:
            load_config(str(path))
        assert err.value.field_name == "ell_grid"

    def test_bad_config_exits_two(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"experiment": "figure1"}))
        code, out, err = run_cli(capsys, "experiment", "--config", str(path))
        assert code == 2
        assert "command" in err


class TestExperimentCommand:
    def test_figure1_from_config(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"command": "experiment", "experiment": "figure1", "n_list": [3, 5]}))
        code, out, _ = run_cli(capsys, "experiment", "--config", str(path))
        assert code == 0
        doc = json.loads(out)
        assert len(doc["records"]) == 2

    def test_csv_output_to_file(self, capsys, tmp_path):
        out_file = tmp_path / "fig.csv"
        path = tmp_path / "cfg.json"
        path.write_text(
            json.dumps(
                {
                    "command": "experiment",
                    "experiment": "figure1",
                    "n_list": [3, 5, 7],
                    "output": str(out_file),
                }
            )
        )
        code, _, _ = run_cli(capsys, "experiment", "--config", str(path))
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert lines[0].startswith("n,method")
        assert len(lines) == 4

    def test_repeat_run_byte_identical(self, capsys, tmp_path):
        out_file = tmp_path / "sweep.csv"
        path = tmp_path / "cfg.json"
        path.write_text(
            json.dumps(
                {
                    "command": "experiment",
                    "experiment": "wellsep",
                    "L_grid": [16],
                    "trials": 5,
                    "seed": 11,
                    "output": str(out_file),
                }
            )
        )
        run_cli(capsys, "experiment", "--config", str(path))
        first = out_file.read_bytes()
        run_cli(capsys, "experiment", "--config", str(path))
        assert out_file.read_bytes() == first


    def test_cli_overrides_config(self, capsys, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        path = tmp_path / "cfg.json"
        path.write_text(
            json.dumps(
                {"command": "experiment", "experiment": "wellsep", "L_grid": [16], "trials": 2}
            )
        )
        run_cli(capsys, "experiment", "--config", str(path), "--seed", "5", "--out", str(out_a))
        run_cli(
            capsys,
            "experiment",
            "--config",
            str(path),
            "--seed",
            "5",
            "--trials",
            "4",
            "--out",
            str(out_b),
        )
        assert out_a.exists() and out_b.exists()
        assert len(out_b.read_text().splitlines()) == len(out_a.read_text().splitlines()) + 2


class TestVerifyCommand:
    def test_clean_run_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "verify")
        assert code == 0
        assert "checks passed" in out
        assert "FAIL" not in out
