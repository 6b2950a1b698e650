from pathlib import Path

import pytest

from optical_fuse_sim.cli.inputs import build_run_config, parse_config
from optical_fuse_sim.core.config import to_float_list, to_intervals
from optical_fuse_sim.core.constants import ENV, ScenarioKind, SplitPolicy
from optical_fuse_sim.core.exceptions import ConfigurationError, DomainError
from optical_fuse_sim.impl.scenarios.context import build_channel
from optical_fuse_sim.presets import PRESET_ALIASES, preset_names, preset_raw

MINIMAL = {"scenario": {"kind": "static", "powers_dbm": "0"}}


@pytest.fixture(autouse=True)
def no_output_override(monkeypatch):
    monkeypatch.delenv(ENV.OUTPUT_DIR, raising=False)


def error_keys(excinfo) -> list:
    return [key for key, _ in excinfo.value.errors]


def test_minimal_config_defaults() -> None:
    config = build_run_config(MINIMAL, origin="minimal")
    assert config.kind is ScenarioKind.STATIC
    assert config.device["q_loaded"] == 6.6e4
    assert config.device["fsr_ghz"] == 50.0
    assert config.device["resonance_nm"] == 1548.292
    assert config.device["split_policy"] is SplitPolicy.EQUAL_THIRDS
    assert config.photorefractive["shift_pm_0dbm"] == 34.5
    assert config.channel["length_km"] == 30.0
    assert config.scenario == {"wavelength_nm": None, "powers_dbm": [0.0]}
    assert config.output_dir == Path("out")
    assert config.name == "minimal"
    assert config.workers == 1


def test_missing_scenario_is_named() -> None:
    with pytest.raises(ConfigurationError) as excinfo:
        build_run_config({"device": {"q_loaded": "6.6e4"}})
    assert "scenario" in error_keys(excinfo)


def test_all_errors_are_collected() -> None:
    """Every bad key is reported, each with its section-qualified path"""
    raw = {
        "device": {"q_loaded": "-1", "fsr_hz": "5e10"},
        "channel": {"qber": "lots"},
        "scenario": {"kind": "sweep", "span_pm": "400"},
        "plotting": {"dpi": "300"},
    }
    with pytest.raises(ConfigurationError) as excinfo:
        build_run_config(raw)
    keys = error_keys(excinfo)
    assert "device.q_loaded" in keys
    assert "device.fsr_hz" in keys
    assert "channel.qber" in keys
    assert "scenario.step_pm" in keys
    assert "scenario.tx_dbm" in keys
    assert "plotting" in keys
    messages = dict(excinfo.value.errors)
    assert "unit mismatch" in messages["device.fsr_hz"]


def test_unknown_scenario_kind() -> None:
    with pytest.raises(ConfigurationError) as excinfo:
        build_run_config({"scenario": {"kind": "eavesdrop"}})
    assert error_keys(excinfo) == ["scenario.kind"]


def test_conflicting_sections() -> None:
    raw = {
        "source": {"preset": "cw_signal_1550_68", "center_nm": "1550.68"},
        "photorefractive": {"delta_max_ghz": "9.5"},
        "scenario": {"kind": "timeseries", "power_dbm": "0", "schedule_s": "5-65", "duration_s": "30"},
    }
    with pytest.raises(ConfigurationError) as excinfo:
        build_run_config(raw)
    keys = error_keys(excinfo)
    assert "source.center_nm" in keys
    assert "photorefractive.p_ref_mw" in keys
    assert "scenario.duration_s" in keys


def test_sweep_preset() -> None:
    config = build_run_config(preset_raw("fig4c"), origin="fig4c")
    assert config.kind is ScenarioKind.SWEEP
    assert config.scenario["span_pm"] == 400.0
    assert config.scenario["step_pm"] == 20.0
    assert config.scenario["tx_dbm"] == -20.0
    assert config.source["fit_atten_db"] == 10.70
    assert config.name == "fig4c"


def test_alias_shares_parameters_but_not_the_name() -> None:
    raw = preset_raw("wavelength-sweep")
    assert raw["scenario"] == preset_raw(PRESET_ALIASES["wavelength-sweep"])["scenario"]
    assert raw["output"]["name"] == "wavelength-sweep"


@pytest.mark.parametrize("name", preset_names())
def test_every_preset_validates(name) -> None:
    build_run_config(preset_raw(name), origin=name)


def test_unknown_preset() -> None:
    with pytest.raises(ConfigurationError):
        preset_raw("no-such-preset")


def test_parse_config_file(tmp_path) -> None:
    path = tmp_path / "run.ini"
    path.write_text(
        "[device]\n"
        "q_loaded = 7e4 ; a better ring\n"
        "[scenario]\n"
        "kind = skr-distance\n"
        "powers_dbm = -15, 0, 10\n"
        "distances_km = 0:100:25\n"
        "[output]\n"
        f"dir = {tmp_path / 'results'}\n",
        encoding="utf-8",
    )
    config = parse_config(path)
    assert config.device["q_loaded"] == 7e4
    assert config.kind is ScenarioKind.SKR_DISTANCE
    assert config.scenario["distances_km"] == [0.0, 25.0, 50.0, 75.0, 100.0]
    assert config.output_dir == tmp_path / "results"
    assert config.name == "run"


def test_missing_config_file(tmp_path) -> None:
    with pytest.raises(ConfigurationError):
        parse_config(tmp_path / "nope.ini")


def test_environment_overrides_output_dir(monkeypatch, tmp_path) -> None:
    monkeypatch.setenv(ENV.OUTPUT_DIR, str(tmp_path))
    assert build_run_config(MINIMAL).output_dir == tmp_path


def test_range_and_list_syntax() -> None:
    assert len(to_float_list("-35:10:1")) == 46
    assert to_float_list("-15, 0, 10") == [-15.0, 0.0, 10.0]
    assert to_intervals("5-65, 80-90") == ((5.0, 65.0), (80.0, 90.0))
    with pytest.raises(ValueError):
        to_float_list("0:10:3")
    with pytest.raises(ValueError):
        to_float_list("")
    assert to_intervals("") == ()
    assert to_intervals("   ") == ()


def test_timeseries_without_schedule() -> None:
    raw = {"scenario": {"kind": "timeseries", "power_dbm": "0", "schedule_s": "", "duration_s": "10"}}
    config = build_run_config(raw, origin="idle")
    assert config.scenario["schedule_s"] == ()


def test_rep_rate_must_leave_room_for_pulses() -> None:
    config = build_run_config({**MINIMAL, "channel": {"rep_rate_mhz": "20000"}})
    with pytest.raises(DomainError):
        build_channel(config.channel)
