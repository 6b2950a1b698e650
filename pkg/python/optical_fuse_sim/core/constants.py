from __future__ import absolute_import, unicode_literals
from enum import Enum
from types import SimpleNamespace

from scipy.constants import c as SPEED_OF_LIGHT


class SplitPolicy(Enum):
    EQUAL_THIRDS = "equal_thirds"
    CUSTOM = "custom"

class Port(Enum):
    DROP = "drop"
    THROUGH = "through"

class LineShape(Enum):
    DELTA = "delta"
    GAUSSIAN = "gaussian"
    LORENTZIAN = "lorentzian"

class AnchorKind(Enum):
    SHIFT_PM = "shift_pm"
    ATTEN_DB_CW = "atten_db_cw"

class AttackMode(Enum):
    FORWARD = "forward"
    FIXED_TX_POWER = "fixed_tx_power"

class ScenarioKind(Enum):
    STATIC = "static"
    SWEEP = "sweep"
    TIMESERIES = "timeseries"
    SKR_POWER = "skr-power"
    SKR_DISTANCE = "skr-distance"
    SPECTRUM = "spectrum"


ENV = SimpleNamespace(
    OUTPUT_DIR="FUSE_SIM_OUTPUT_DIR"
)

EXIT_CODES = SimpleNamespace(
    SUCCESS=0,
    FAILURE=1,
    VALIDATION=2,
    NUMERICAL=3,
)


# Device, from the characterization of the fabricated ring
Q_LOADED = 6.6e4
FSR_HZ = 50e9
ATTACK_RESONANCE_NM = 1548.292
NON_RESONANT_ATTACK_NM = 1548.091
SIGNAL_WAVELENGTH_NM = 1550.68
SIGNAL_MODE_OFFSET = -6

# Photorefractive anchors
ANCHOR_SHIFT_PM_0DBM = 34.5
ANCHOR_ATTEN_DB_10DBM_CW = 14.02
ANCHOR_ATTEN_DB_10DBM_PULSED = 10.70
RISE_TIME_90_S = 2.0
FALL_TIME_90_S = 2.5
SIGNAL_POWER_LIMIT_W = 1e-6

# Solver tolerances
FIXED_POINT_RTOL = 1e-6
STEADY_STATE_RATE_TOL = 1e-6    # |dδ/dt| < delta_max * tol per second
MAX_STEPS = 10_000_000
DEFAULT_DT_S = 0.01
QUAD_RTOL = 1e-8
QUAD_WINDOW_WIDTHS = 20.0
CALIBRATION_RESIDUAL_LIMIT = 0.05

# Attack power root-find
POWER_SEARCH_DBM = (-60.0, 30.0)
POWER_TOL_DB = 0.05
POWER_MAX_ITER = 60
POWER_XTOL_DB = 1e-6

# Sources
PULSED_FWHM_HZ = 10e9
PULSE_WIDTH_S = 100e-12
REP_RATE_HZ = 625e6

# QKD, three-intensity decoy parameters
DECOY_MU = 0.6
DECOY_NU = 0.2
DECOY_O = 0.0
DECOY_P_MU = 0.8824
DECOY_P_NU = 0.0588
DECOY_P_O = 0.0588
FIBER_LOSS_DB_PER_KM = 0.2
ERROR_CORRECTION_EFFICIENCY = 1.16
SIFTING_FACTOR = 0.5
VACUUM_ERROR = 0.5
DARK_COUNT_PRIOR = 1e-6
OPERATING_LENGTH_KM = 30.0
TARGET_SIFTED_RATE = 4.9708e-4
TARGET_QBER = 0.0201
TARGET_SKR_RATIO = 0.039
SKR_ONSET_RATIO = 0.95

# Output
CSV_SCHEMA_VERSION = 1
CSV_FLOAT_FORMAT = "{:.17e}"
CSV_COLUMNS = {
    "spectrum": ["attack_dbm", "shift_pm", "frequency_hz", "wavelength_nm", "drop", "through"],
    "static": ["wavelength_nm", "detuning_pm", "onchip_dbm", "tx_dbm", "atten_db", "shift_pm", "converged"],
    "sweep": ["wavelength_nm", "detuning_pm", "onchip_dbm", "tx_dbm", "atten_db", "shift_pm", "converged"],
    "timeseries": ["t_s", "transmission", "shift_pm"],
    "skr-power": ["distance_km", "attack_dbm", "atten_db", "skr_per_pulse", "skr_bps", "qber_mu", "skr_ratio"],
    "skr-distance": ["distance_km", "attack_dbm", "atten_db", "skr_per_pulse", "skr_bps", "qber_mu"],
}

# Config keys carry their unit as the last underscore-separated word
UNIT_SUFFIXES = ("nm", "pm", "hz", "ghz", "mhz", "dbm", "db", "w", "mw", "s", "km")
