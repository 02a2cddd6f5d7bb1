"""Report schema, serialization, determinism, and the CLI contract."""

import json

import pytest

from spintime.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, main, run_suite
from spintime.errors import ArgumentError, ParseError
from spintime.report import (
    ExperimentConfig,
    Report,
    config_from_mapping,
    emit_report,
    parse_config_text,
    reports_from_json,
    reports_to_csv,
    reports_to_json,
    reports_to_text,
)


def sample_reports():
    return [
        Report("A", {"x": 1}, {"y": 2.5},
               {"value": 2.5, "provenance": "PAPER"}, "pass", 1.25),
        Report("B", {}, [{"N": 1, "residual": 0.5, "slope_fit": -0.5},
                         {"N": 2, "residual": 0.35, "slope_fit": -0.5}],
               None, "measured", 2.0),
    ]


class TestReportSchema:
    def test_field_names(self):
        d = sample_reports()[0].to_dict()
        assert set(d) == {"claim_id", "inputs", "computed", "expected",
                          "status", "runtime_ms"}

    def test_bad_status(self):
        with pytest.raises(ArgumentError):
            Report("X", status="maybe")

    def test_expected_needs_provenance(self):
        with pytest.raises(ArgumentError):
            Report("X", expected={"value": 1})
        with pytest.raises(ArgumentError):
            Report("X", expected={"value": 1, "provenance": "GUESS"})

    def test_json_round_trip(self):
        reports = sample_reports()
        text = reports_to_json(reports)
        back = reports_from_json(text)
        assert [r.to_dict() for r in back] == [r.to_dict() for r in reports]

    def test_empty_list(self):
        assert json.loads(reports_to_json([])) == []

    def test_csv_contraction_header(self):
        text = reports_to_csv([sample_reports()[1]])
        header = text.splitlines()[0]
        assert header.startswith("N,residual,slope_fit")
        assert len(text.splitlines()) == 3

    def test_text_summary(self):
        text = reports_to_text(sample_reports())
        assert "summary: 1 pass" in text
        assert "1 measured" in text


class TestConfig:
    def test_parse_config_text(self):
        text = """
        # comment
        suite = killing
        signature = 3,3
        cells = 1,2,3   # inline comment
        half = true
        seed = 7
        tol_eig = 1e-9
        """
        raw = parse_config_text(text)
        cfg = config_from_mapping(raw)
        assert cfg.suite == "killing"
        assert cfg.n_list == (1, 2, 3)
        assert cfg.half is True
        assert cfg.seed == 7

    def test_malformed_line(self):
        with pytest.raises(ParseError):
            parse_config_text("this is not a pair")

    def test_tolerances_positive(self):
        with pytest.raises(ArgumentError):
            ExperimentConfig(tol_eig=0.0)

    def test_unknown_format(self):
        with pytest.raises(ArgumentError):
            emit_report([], fmt="yaml")


class TestDeterminism:
    def test_byte_identical_modulo_runtime(self):
        cfg = ExperimentConfig(suite="triality", seed=3)
        first = reports_to_json(run_suite(cfg), strip_runtime=True)
        second = reports_to_json(run_suite(cfg), strip_runtime=True)
        assert first == second

    def test_seed_changes_inputs_not_structure(self):
        a = run_suite(ExperimentConfig(suite="triality", seed=1))
        b = run_suite(ExperimentConfig(suite="triality", seed=2))
        assert a[0].inputs["seed"] != b[0].inputs["seed"]
        assert a[0].status == b[0].status == "pass"


class TestCli:
    def test_verify_pass_exit_zero(self, capsys):
        assert main(["verify", "dims"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "E:DIM" in out

    def test_unknown_suite_usage_exit(self, capsys):
        assert main(["verify", "nosuchsuite"]) == EXIT_USAGE
        assert "unknown suite" in capsys.readouterr().err

    def test_json_output_to_file(self, tmp_path):
        out = tmp_path / "reports.json"
        code = main(["verify", "killing", "--format", "json", "--out", str(out)])
        assert code == EXIT_OK
        data = json.loads(out.read_text())
        assert {r["claim_id"] for r in data} == {
            "KILLING-SIG", "PROP-BLOCKS", "ADJOINT-KILLING"
        }
        for r in data:
            assert r["status"] == "pass"

    def test_io_error_exit(self, tmp_path):
        code = main(["verify", "dims", "--format", "json",
                     "--out", str(tmp_path / "nodir" / "x.json")])
        assert code == EXIT_IO

    def test_report_roundtrip_command(self, tmp_path, capsys):
        src = tmp_path / "in.json"
        src.write_text(reports_to_json(sample_reports()))
        assert main(["report", "--in", str(src), "--format", "text"]) == EXIT_OK
        assert "summary:" in capsys.readouterr().out

    def test_report_missing_file(self, capsys):
        assert main(["report", "--in", "/nonexistent.json"]) == EXIT_IO

    def test_trace_command(self, tmp_path, capsys):
        word = tmp_path / "word.txt"
        word.write_text("g(1) g(1)  # squares to +1\n")
        assert main(["trace", str(word)]) == EXIT_OK
        assert "8" in capsys.readouterr().out

    def test_trace_missing_file(self):
        assert main(["trace", "/nonexistent.txt"]) == EXIT_IO

    def test_spectrum_command(self, capsys):
        assert main(["spectrum", "--pair", "1,6", "--cells", "2",
                     "--no-half"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "SPECTRUM-N2" in out

    def test_contract_command(self, capsys):
        assert main(["contract", "--cells", "1,2,3"]) == EXIT_OK
        assert "CONTRACTION" in capsys.readouterr().out

    def test_metric_scaling_command(self, capsys):
        assert main(["metric-scaling", "--cells", "2,3"]) == EXIT_OK
        assert "METRIC-SCALING" in capsys.readouterr().out

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfgfile = tmp_path / "run.cfg"
        cfgfile.write_text("suite = dims\nseed = 5\nformat = json\n")
        out = tmp_path / "r.json"
        code = main(["verify", "dims", "--config", str(cfgfile),
                     "--out", str(out)])
        assert code == EXIT_OK
        assert json.loads(out.read_text())[0]["claim_id"] == "E:DIM"

    def test_resource_cap_reports_skipped(self, monkeypatch, capsys):
        monkeypatch.setenv("SPINTIME_MAX_DIM", "64")
        code = main(["verify", "spectra", "--cells", "4"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "SKIPPED" in out or "skipped" in out

    def test_usage_error_no_command(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == EXIT_USAGE
