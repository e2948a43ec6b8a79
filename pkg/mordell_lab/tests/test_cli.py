import json
import math

import pytest
from click.testing import CliRunner

from mordell_lab import __version__
from mordell_lab.catalog import InequalityId, get_inequality
from mordell_lab.cli import cli, parse_and_dispatch


def run(capsys, *args):
    status = parse_and_dispatch(list(args))
    out, err = capsys.readouterr()
    return status, out, err


class TestCatalogCommands:
    def test_catalog_lists_every_id(self, capsys):
        status, out, _ = run(capsys, "catalog")
        assert status == 0
        for ident in InequalityId:
            assert str(ident) in out

    def test_catalog_json_with_errata(self, capsys):
        status, out, _ = run(capsys, "catalog", "--json", "--errata")
        report = json.loads(out)
        assert status == 0
        assert report["command"] == "catalog"
        assert len(report["catalog"]) == 25
        assert report["errata"]

    def test_fixture(self, capsys):
        status, out, _ = run(capsys, "fixture")
        assert status == 0
        assert "right_triangle" in out and "equilateral_center" in out
        status, out, _ = run(capsys, "fixture", "--json")
        fixtures = json.loads(out)["fixtures"]
        assert fixtures[0]["quantities"]["PA"] == pytest.approx(math.sqrt(2))
        assert fixtures[0]["quantities"]["R_A"] == pytest.approx(1.4)

    def test_version_and_help(self, capsys):
        status, out, _ = run(capsys, "--version")
        assert status == 0
        assert __version__ in out
        result = CliRunner().invoke(cli, ["--help"])
        assert result.exit_code == 0
        assert "tighten" in result.output


class TestUsageErrors:
    @pytest.mark.parametrize("args", [["verify", "--ids", "NOPE"], ["verify", "--samples", "0"],
                                      ["verify", "--shape", "round"], ["frobnicate"]])
    def test_usage_errors(self, capsys, args):
        status, _, err = run(capsys, *args)
        assert status == 2
        assert err

    def test_unknown_config_field(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"bogus": 1}')
        status, _, err = run(capsys, "--config", str(config), "verify")
        assert status == 2
        assert "bogus" in err

    def test_invalid_config_value(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text('{"weight_std": 9}')
        status, _, _ = run(capsys, "--config", str(config), "verify", "--ids", "EM", "--samples", "10")
        assert status == 2

    @pytest.mark.parametrize("content", ['{"threads": "four"}', '{"radius": "big"}', '{"bridges": "no"}',
                                         '{"samples": 2.5}', '{"format": "xml"}'])
    def test_mistyped_config_values(self, capsys, tmp_path, content):
        config = tmp_path / "config.json"
        config.write_text(content)
        status, out, err = run(capsys, "--config", str(config), "verify", "--ids", "EM", "--samples", "10")
        assert status == 2
        assert "Traceback" not in err
        assert out == ""


class TestVerify:
    def test_report_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        status, out, _ = run(capsys, "verify", "--ids", "EM,BARROW,DNP", "--samples", "200", "--seed", "1",
                             "--out", str(path))
        assert status == 0
        assert "BARROW" in out
        report = json.loads(path.read_text())
        assert report["schema_version"] == 1
        assert report["command"] == "verify"
        assert report["config"]["samples"] == 200
        assert report["suite"]["passed"] is True
        assert [record["id"] for record in report["suite"]["records"]] == ["EM", "BARROW", "DNP"]

    def test_reports_are_byte_identical(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        args = ["verify", "--ids", "WEM,PROD_DNP", "--samples", "150", "--seed", "9", "--out", str(path)]
        run(capsys, *args)
        first = path.read_bytes()
        run(capsys, *args)
        assert path.read_bytes() == first

    def test_json_and_csv(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        status, _, _ = run(capsys, "verify", "--ids", "EM", "--samples", "50", "--bridges", "--format", "both",
                           "--out", str(path))
        assert status == 0
        lines = (tmp_path / "report.csv").read_text().splitlines()
        assert lines[0].startswith("id,samples,errors,violations,min_rel_slack,argmin_index")
        assert [line.split(",")[0] for line in lines[1:]] == ["EM", "product_bridge_lower", "product_bridge_upper",
                                                              "summed_bound", "coefficient_amgm"]

    def test_csv_on_stdout(self, capsys):
        status, out, _ = run(capsys, "verify", "--ids", "EM", "--samples", "20", "--format", "csv")
        assert status == 0
        assert out.startswith("id,samples")

    def test_config_file_and_flags(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"samples": 50, "seed": 3, "ids": "EM", "weight-std": 1.0}))
        status, out, _ = run(capsys, "--config", str(config), "verify", "--samples", "20")
        report = json.loads(out)
        assert status == 0
        assert report["config"]["samples"] == 20
        assert report["config"]["seed"] == 3
        assert report["config"]["weight_std"] == 1.0
        assert report["suite"]["records"][0]["samples"] == 20

    def test_threads_do_not_change_the_suite(self, capsys):
        args = ["verify", "--ids", "EM,WBARROW", "--samples", "100", "--seed", "4"]
        _, serial, _ = run(capsys, *args, "--threads", "1")
        _, parallel, _ = run(capsys, *args, "--threads", "4")
        assert json.loads(serial)["suite"] == json.loads(parallel)["suite"]

    def test_violations_exit_with_one(self, capsys, monkeypatch):
        monkeypatch.setattr(type(get_inequality("EM")), "rhs", lambda self, q, w, sides: 3 * (q.PA + q.PB + q.PC))
        status, out, _ = run(capsys, "verify", "--ids", "EM", "--samples", "20")
        record = json.loads(out)["suite"]["records"][0]
        assert status == 1
        assert record["violations"] == 20
        assert record["worst_offender"]["index"] == record["argmin"]


class TestOtherCommands:
    def test_identities(self, capsys, tmp_path):
        path = tmp_path / "identities.json"
        status, out, _ = run(capsys, "identities", "--samples", "100", "--out", str(path))
        assert status == 0
        assert "bisector_dual_path" in out
        assert json.loads(path.read_text())["identities"]["passed"] is True

    def test_tighten(self, capsys, tmp_path):
        path = tmp_path / "tighten.json"
        status, out, _ = run(capsys, "tighten", "--ids", "EM,LEMMA_A", "--starts", "1", "--iters", "100", "--locus",
                             "--probes", "10", "--out", str(path))
        assert status == 0
        report = json.loads(path.read_text())
        assert report["config"]["seed"] == 7
        assert [result["id"] for result in report["tightness"]] == ["EM", "LEMMA_A"]
        assert report["tightness"][0]["starts"] == 2
        assert all(check["passed"] for check in report["equality"])
        assert "Min slack" in out

    def test_tighten_trace(self, capsys):
        status, out, _ = run(capsys, "tighten", "--ids", "EM", "--starts", "0", "--iters", "20", "--trace")
        assert status == 0
        assert json.loads(out)["tightness"][0]["history"][0]["trace"]
