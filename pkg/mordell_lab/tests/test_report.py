import json
from collections import OrderedDict

import numpy as np
import pytest

from mordell_lab.catalog import catalog_entries, ERRATA
from mordell_lab.exceptions import ImproperlyConfigured
from mordell_lab.report import format_json_float, dumps, report_envelope, csv_text, csv_path_for, write_json, \
    write_csv
from mordell_lab.tables import Column, Table, TableMetaclass, CatalogTable, ErrataTable, SuiteTable, IdentityTable, \
    format_float
from mordell_lab.verify import SamplerConfig


class TestJson:
    @pytest.mark.parametrize("value, text", [(0.1, "0.10000000000000001"), (1.0, "1.0"), (-0.5, "-0.5"),
                                             (float("nan"), "null"), (float("inf"), "null"), (1e20, "1e+20")])
    def test_floats(self, value, text):
        assert format_json_float(value) == text

    def test_dumps(self):
        data = OrderedDict([("b", 1), ("a", [1.0, None, np.float64(0.5)]), ("flag", np.bool_(True)),
                            ("nested", {"x": "y"}), ("empty", [])])
        text = dumps(data)
        assert text.endswith("\n")
        assert text.index('"b"') < text.index('"a"')
        assert '"a": [1.0, null, 0.5]' in text
        assert json.loads(text) == {"b": 1, "a": [1.0, None, 0.5], "flag": True, "nested": {"x": "y"}, "empty": []}

    def test_to_dict_objects(self):
        text = dumps({"config": SamplerConfig(seed=4)})
        assert json.loads(text)["config"]["seed"] == 4

    def test_unserializable(self):
        with pytest.raises(TypeError):
            dumps({"x": object()})

    def test_envelope(self):
        report = report_envelope("verify", {"samples": 10}, suite={"passed": True}, extra=None)
        assert list(report) == ["schema_version", "command", "config", "suite"]
        assert report["schema_version"] == 1

    def test_write_json(self, tmp_path):
        path = tmp_path / "report.json"
        write_json(str(path), {"x": 0.25})
        assert path.read_text() == '{\n  "x": 0.25\n}\n'

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(ImproperlyConfigured):
            write_json(str(tmp_path / "missing" / "report.json"), {})


class TestCsv:
    def test_csv_text(self):
        rows = [OrderedDict([("id", "EM"), ("min_rel_slack", 0.1), ("argmin", None)]),
                OrderedDict([("id", "BARROW"), ("min_rel_slack", float("nan")), ("argmin", 3)])]
        assert csv_text(rows) == "id,min_rel_slack,argmin\nEM,0.10000000000000001,\nBARROW,,3\n"
        assert csv_text([]) == ""

    def test_write_csv(self, tmp_path):
        path = tmp_path / "rows.csv"
        write_csv(str(path), [{"a": 1}])
        assert path.read_text() == "a\n1\n"

    @pytest.mark.parametrize("name, expected", [("out/report.json", "out/report.csv"), ("report", "report.csv"),
                                                ("r.JSON", "r.csv")])
    def test_csv_path_for(self, name, expected):
        assert csv_path_for(name) == expected


class TestTables:
    def test_column(self):
        col = Column("min_rel_slack")
        assert col.display_name == "Min Rel Slack"
        assert col.order_by == "min_rel_slack"
        col = Column(("x", "X value", None, ".2f", ">"))
        assert col.format(1.23456) == "1.23"
        assert col.format(None) == "-"
        assert format_float("text") == "text"

    def test_sorting_and_rendering(self):
        class ScoreTable(Table):
            class Meta:
                fields = [("name", "Name"), ("score", "Score", None, ".1f", ">")]
                order_by = "-score,name"

            def render_name(self, row, cell):
                return cell.upper()

        table = ScoreTable([{"name": "b", "score": 1.0}, {"name": "a", "score": 2.0}, {"name": "c", "score": None}])
        lines = table.as_lines()
        assert lines[0].split() == ["Name", "Score"]
        assert [line.split()[0] for line in lines[2:]] == ["A", "B", "C"]
        assert lines[-1].split() == ["C", "-"]

    @pytest.mark.parametrize("fields", [[], [(None, "Nameless")]])
    def test_columns_need_names(self, fields):
        meta = type("Meta", (), {"fields": fields})
        with pytest.raises(ImproperlyConfigured):
            TableMetaclass("BrokenTable", (Table,), {"Meta": meta})

    def test_summary_tables_put_the_tightest_first(self):
        suite = SuiteTable([{"id": "EM", "min_rel_slack": 0.2}, {"id": "DNP", "min_rel_slack": None},
                            {"id": "BARROW", "min_rel_slack": 1e-3}, {"id": "BARROW_CHAIN_A", "min_rel_slack": 1e-3}])
        assert [row["id"] for row in suite.rows] == ["BARROW", "BARROW_CHAIN_A", "EM", "DNP"]
        identities = IdentityTable([{"id": "chain_identity", "max_rel_disagreement": 1e-17},
                                    {"id": "tangent_identity", "max_rel_disagreement": 3e-15}])
        assert [row["id"] for row in identities.rows] == ["tangent_identity", "chain_identity"]

    def test_catalog_tables(self):
        text = CatalogTable(catalog_entries()).as_text()
        assert "WBARROW_STRONG" in text
        assert text.splitlines()[0].startswith("Id")
        assert len(ErrataTable(ERRATA).rows) == len(ERRATA)
