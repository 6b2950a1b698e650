"""Presets reproducing the reference measurements of the fuse.

Each preset is a raw config, exactly what an INI file with the same sections would
hold, so presets and config files share one validation path.
"""
from typing import Dict, List

from .core.config import RawConfig
from .core.exceptions import ConfigurationError

PULSED_SOURCE = {"preset": "pulsed_signal_10GHz", "fit_atten_db": "10.70", "fit_power_dbm": "10"}
CALIBRATED_CHANNEL = {
    "length_km": "30",
    "sifted_rate": "4.9708e-4",
    "qber": "0.0201",
    "skr_ratio_target": "0.039",
    "ratio_extra_loss_db": "10.70",
}

PRESETS: Dict[str, RawConfig] = {
    # Cold transmission over two FSRs around the attack resonance
    "fig2b": {
        "scenario": {"kind": "spectrum", "center_nm": "1548.292", "span_pm": "800", "points": "4001"},
    },
    # Blue-shifted drop spectra under increasing resonant attack
    "fig3a": {
        "scenario": {
            "kind": "spectrum", "center_nm": "1548.292", "span_pm": "200", "points": "2001",
            "powers_dbm": "-30, -20, -10, 0",
        },
    },
    "fig3b": {
        "scenario": {"kind": "static", "wavelength_nm": "1548.292", "powers_dbm": "-35:10:1"},
    },
    "fig3c": {
        "scenario": {
            "kind": "timeseries", "wavelength_nm": "1548.292", "power_dbm": "0",
            "schedule_s": "5-65", "duration_s": "90", "dt_s": "0.01",
        },
    },
    "fig3d": {
        "scenario": {"kind": "static", "wavelength_nm": "1548.091", "powers_dbm": "-10:10:1"},
    },
    "fig4b": {
        "source": PULSED_SOURCE,
        "scenario": {"kind": "static", "wavelength_nm": "1548.292", "powers_dbm": "-35:10:1"},
    },
    "fig4c": {
        "source": PULSED_SOURCE,
        "scenario": {"kind": "sweep", "center_nm": "1548.292", "span_pm": "400", "step_pm": "20", "tx_dbm": "-20"},
    },
    "fig5a": {
        "source": PULSED_SOURCE,
        "channel": CALIBRATED_CHANNEL,
        "scenario": {"kind": "skr-power", "powers_dbm": "-35:10:1", "distance_km": "30"},
    },
    "fig5b": {
        "source": PULSED_SOURCE,
        "channel": CALIBRATED_CHANNEL,
        "scenario": {"kind": "skr-distance", "powers_dbm": "-15, 0, 10", "distances_km": "0:150:5"},
    },
}


PRESET_ALIASES: Dict[str, str] = {
    "cold-spectrum": "fig2b",
    "shifted-spectra": "fig3a",
    "resonant-attack": "fig3b",
    "attack-transient": "fig3c",
    "offset-attack": "fig3d",
    "pulsed-attack": "fig4b",
    "wavelength-sweep": "fig4c",
    "skr-vs-power": "fig5a",
    "skr-vs-distance": "fig5b",
}


def preset_names() -> List[str]:
    """Every name ``--preset`` accepts: the canonical keys, then the descriptive aliases."""
    return sorted(PRESETS) + sorted(PRESET_ALIASES)


def preset_raw(name: str) -> RawConfig:
    """Raw sections of a preset (or alias), with the output named as requested.

    Raises:
        ConfigurationError: For unknown preset names.
    """
    key = PRESET_ALIASES.get(name, name)
    if key not in PRESETS:
        raise ConfigurationError([("preset", f"unknown preset '{name}', expected one of {', '.join(preset_names())}")])
    raw = {section: dict(values) for section, values in PRESETS[key].items()}
    raw.setdefault("output", {}).setdefault("name", name)
    return raw
