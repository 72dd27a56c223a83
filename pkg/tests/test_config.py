import json

import pytest

from whstab.config import settings
from whstab.config.analysis import AnalysisConfig, dump_config, load_config, parse_config
from whstab.config.defaults import DEFAULT_JSR_PARAMS, ActuatorMode, JsrParams, Strategy
from whstab.errors import ConfigError

TOY = {
    "plant": {"A": [[0.5]], "B": [[0.0]], "C": [[1.0]], "D": [[0.0]]},
    "controller": {"A": [[0.5]], "B": [[0.0]], "C": [[0.0]], "D": [[0.0]]},
    "constraints": ["(1,3)"],
}


def test_worker_count_is_capped():
    assert settings.worker_count(None) == settings.MAX_THREADS
    assert settings.worker_count(0) == settings.MAX_THREADS
    assert settings.worker_count(1) == 1
    assert settings.worker_count(settings.MAX_THREADS + 5) == settings.MAX_THREADS


def test_int_env_fallback(monkeypatch):
    monkeypatch.setenv("WHSTAB_TEST_VALUE", "not-a-number")
    assert settings._int_env("WHSTAB_TEST_VALUE", 7) == 7
    monkeypatch.setenv("WHSTAB_TEST_VALUE", "-3")
    assert settings._int_env("WHSTAB_TEST_VALUE", 7) == 1
    monkeypatch.setenv("WHSTAB_TEST_VALUE", " ")
    assert settings._int_env("WHSTAB_TEST_VALUE", 7) == 7
    monkeypatch.delenv("WHSTAB_TEST_VALUE")
    assert settings._int_env("WHSTAB_TEST_VALUE", 7) == 7


def test_jsr_params():
    assert DEFAULT_JSR_PARAMS.delta == 0.01
    assert DEFAULT_JSR_PARAMS.max_depth == 30
    assert DEFAULT_JSR_PARAMS.budget == 5_000_000
    with pytest.raises(ValueError):
        JsrParams(delta=0)
    with pytest.raises(ValueError):
        JsrParams(norms=("sos",))
    with pytest.raises(ValueError):
        JsrParams(norms=())
    params = JsrParams.from_dict({"delta": 0.05, "norms": ["spectral"], "unknown": 1, "workers": None})
    assert params.delta == 0.05
    assert params.norms == ("spectral",)
    assert JsrParams.from_dict(params.to_dict()) == params


def test_parse_defaults_and_normalization():
    cfg = parse_config(TOY)
    assert cfg.strategy is Strategy.KILL
    assert cfg.actuator is ActuatorMode.ZERO
    assert cfg.constraints == ["anymiss(1,3)"]
    assert cfg.jsr_params() == DEFAULT_JSR_PARAMS
    assert cfg.plant_system().num_states == 1
    assert len(cfg.constraint_set()) == 1


def test_load_dump_round_trip(tmp_path):
    path = tmp_path / "toy.json"
    cfg = parse_config({**TOY, "strategy": "skip-next", "jsr": {"delta": 0.02, "workers": 2}})
    path.write_text(dump_config(cfg), encoding="utf-8")
    loaded = load_config(path)
    assert loaded == cfg
    assert loaded.constraint_set().strategy is Strategy.SKIP_NEXT
    assert loaded.jsr_params().workers == 2


def test_json_syntax_error_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "plant": ,\n}', encoding="utf-8")
    with pytest.raises(ConfigError, match=r"broken\.json:2:12"):
        load_config(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.json")


def test_top_level_must_be_object(tmp_path):
    path = tmp_path / "list.json"
    path.write_text("[]", encoding="utf-8")
    with pytest.raises(ConfigError, match="JSON object"):
        load_config(path)


def test_schema_errors_name_the_field():
    bad = json.loads(json.dumps(TOY))
    bad["plant"]["A"] = [[0.5, 1.0], [0.0]]
    with pytest.raises(ConfigError, match=r"plant\.A"):
        parse_config(bad)


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError, match="colour"):
        parse_config({**TOY, "colour": "blue"})
    with pytest.raises(ConfigError, match=r"jsr\.depth"):
        parse_config({**TOY, "jsr": {"depth": 3}})


def test_bad_constraint_rejected():
    with pytest.raises(ConfigError, match="constraints"):
        parse_config({**TOY, "constraints": ["anymiss(4,3)"]})
    with pytest.raises(ConfigError):
        parse_config({**TOY, "constraints": []})


def test_loop_must_close():
    wide = {**TOY, "controller": {"A": [[0.5]], "B": [[0.0, 0.0]], "C": [[0.0]], "D": [[0.0, 0.0]]}}
    with pytest.raises(ConfigError, match="controller"):
        parse_config(wide)


def test_from_builtin():
    cfg = AnalysisConfig.from_builtin("P1C1", constraints=["anymiss(1,2)"], actuator="hold")
    assert cfg.plant_system().num_states == 3
    assert cfg.plant_system().period_s == 0.5
    assert cfg.actuator is ActuatorMode.HOLD
    with pytest.raises(ConfigError):
        AnalysisConfig.from_builtin("p9c9", constraints=["anymiss(1,2)"])
