import json

import pytest

from mordell_lab.conf import load_config_file, resolve_options
from mordell_lab.exceptions import ImproperlyConfigured


def write(tmp_path, content):
    path = tmp_path / "config.json"
    path.write_text(content)
    return str(path)


class TestConfigFile:
    def test_no_file(self):
        assert load_config_file(None) == {}

    def test_dashes_become_underscores(self, tmp_path):
        path = write(tmp_path, json.dumps({"weight-std": 1.5, "samples": 10}))
        assert load_config_file(path) == {"weight_std": 1.5, "samples": 10}

    @pytest.mark.parametrize("content", ['{"bogus": 1}', "[1, 2]", "{not json"])
    def test_invalid(self, tmp_path, content):
        with pytest.raises(ImproperlyConfigured):
            load_config_file(write(tmp_path, content))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ImproperlyConfigured):
            load_config_file(str(tmp_path / "absent.json"))

    def test_values_are_checked(self, tmp_path):
        path = write(tmp_path, json.dumps({"ids": ["EM", "DNP"], "bridges": False, "threads": 0, "tol": 1,
                                           "locus-vertex": None}))
        assert load_config_file(path) == {"ids": "EM,DNP", "bridges": False, "threads": 0, "tol": 1.0,
                                          "locus_vertex": None}

    @pytest.mark.parametrize("content", ['{"threads": "four"}', '{"threads": -1}', '{"radius": "big"}',
                                         '{"bridges": "no"}', '{"trace": 1}', '{"seed": true}', '{"ids": 3}',
                                         '{"format": "xml"}', '{"locus_vertex": "D"}'])
    def test_mistyped_values(self, tmp_path, content):
        with pytest.raises(ImproperlyConfigured):
            load_config_file(write(tmp_path, content))


class TestResolveOptions:
    def test_precedence(self):
        defaults = {"samples": 10000, "seed": 0, "shape": "uniform_angles"}
        file_options = {"samples": 50, "seed": 3}
        flags = {"samples": 20, "seed": None, "shape": None}
        assert resolve_options(flags, file_options, defaults) == {"samples": 20, "seed": 3,
                                                                  "shape": "uniform_angles"}

    def test_false_flags_are_kept(self):
        assert resolve_options({"bridges": False}, {"bridges": True}) == {"bridges": False}
