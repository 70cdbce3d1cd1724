import pytest

from gamble_calc import ParseError
from gamble_calc.config import DEFAULT_TOLERANCES, CliConfig, load_config


class TestLoadConfig:
    def test_absent_everywhere_gives_defaults(self, monkeypatch):
        monkeypatch.delenv("GAMBLE_CALC_CONFIG", raising=False)
        cfg = load_config(None)
        assert cfg.utility is None
        assert cfg.seed is None
        assert cfg.tolerance("partial_loss") == DEFAULT_TOLERANCES["partial_loss"]

    def test_explicit_path(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"utility": "log1p", "seed": 3}')
        cfg = load_config(str(path))
        assert cfg.utility == "log1p"
        assert cfg.seed == 3

    def test_env_fallback(self, tmp_path, monkeypatch):
        path = tmp_path / "cfg.json"
        path.write_text('{"seed": 77}')
        monkeypatch.setenv("GAMBLE_CALC_CONFIG", str(path))
        assert load_config(None).seed == 77

    def test_explicit_beats_env(self, tmp_path, monkeypatch):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        a.write_text('{"seed": 1}')
        b.write_text('{"seed": 2}')
        monkeypatch.setenv("GAMBLE_CALC_CONFIG", str(b))
        assert load_config(str(a)).seed == 1

    def test_unknown_top_level_key(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"seeed": 1}')
        with pytest.raises(ParseError) as err:
            load_config(str(path))
        assert "seeed" in str(err.value)

    def test_unknown_tolerance_key(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"tolerances": {"nope": 1e-9}}')
        with pytest.raises(ParseError):
            load_config(str(path))

    def test_tolerance_override_keeps_others(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"tolerances": {"partial_loss": 1e-6}}')
        cfg = load_config(str(path))
        assert cfg.tolerance("partial_loss") == 1e-6
        assert cfg.tolerance("acceptance") == DEFAULT_TOLERANCES["acceptance"]

    def test_utility_validated_eagerly(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"utility": "power:zero"}')
        with pytest.raises(ParseError):
            load_config(str(path))

    def test_bad_output_value(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"output": "yaml"}')
        with pytest.raises(ParseError):
            load_config(str(path))

    def test_missing_explicit_file_is_an_error(self, tmp_path):
        with pytest.raises(ParseError):
            load_config(str(tmp_path / "absent.json"))


class TestCliConfig:
    def test_unknown_tolerance_name(self):
        cfg = CliConfig()
        with pytest.raises(KeyError):
            cfg.tolerance("huh")
