"""Unit conversions shared across the simulator.

Optical frequencies are carried in Hz, decay rates and shifts in rad/s,
wavelengths in nm and wavelength offsets in pm.
"""
import math

from .constants import SPEED_OF_LIGHT
from .exceptions import DomainError

TWO_PI = 2.0 * math.pi


def wavelength_to_frequency(wavelength_nm: float) -> float:
    """Optical frequency (Hz) of a vacuum wavelength in nm."""
    if wavelength_nm <= 0:
        raise DomainError(f"Wavelength must be positive, got {wavelength_nm} nm")
    return SPEED_OF_LIGHT / (wavelength_nm * 1e-9)


def frequency_to_wavelength(frequency_hz: float) -> float:
    """Vacuum wavelength (nm) of an optical frequency in Hz."""
    if frequency_hz <= 0:
        raise DomainError(f"Frequency must be positive, got {frequency_hz} Hz")
    return SPEED_OF_LIGHT / frequency_hz * 1e9


def delta_wavelength_to_frequency(delta_pm: float, reference_nm: float) -> float:
    """Frequency offset magnitude (Hz) for a wavelength offset at a reference, Δν = cΔλ/λ₀²."""
    if reference_nm <= 0:
        raise DomainError(f"Reference wavelength must be positive, got {reference_nm} nm")
    return SPEED_OF_LIGHT * (delta_pm * 1e-12) / (reference_nm * 1e-9) ** 2


def delta_frequency_to_wavelength(delta_hz: float, reference_nm: float) -> float:
    """Inverse of delta_wavelength_to_frequency, in pm."""
    if reference_nm <= 0:
        raise DomainError(f"Reference wavelength must be positive, got {reference_nm} nm")
    return delta_hz * (reference_nm * 1e-9) ** 2 / SPEED_OF_LIGHT * 1e12


def shift_to_pm(shift_rad_s: float, reference_nm: float) -> float:
    """Express an angular resonance shift as a wavelength shift in pm."""
    return delta_frequency_to_wavelength(shift_rad_s / TWO_PI, reference_nm)


def pm_to_shift(shift_pm: float, reference_nm: float) -> float:
    """Angular resonance shift (rad/s) of a wavelength shift in pm."""
    return TWO_PI * delta_wavelength_to_frequency(shift_pm, reference_nm)


def dbm_to_watts(power_dbm: float) -> float:
    return 1e-3 * 10.0 ** (power_dbm / 10.0)


def watts_to_dbm(power_w: float) -> float:
    """Power in dBm; zero power maps to -inf."""
    if power_w < 0:
        raise DomainError(f"Power must be non-negative, got {power_w} W")
    if power_w == 0:
        return -math.inf
    return 10.0 * math.log10(power_w / 1e-3)


def ratio_to_db(ratio: float) -> float:
    """Attenuation in dB of a transmission ratio (positive means loss)."""
    if ratio <= 0:
        return math.inf
    return -10.0 * math.log10(ratio)


def db_to_ratio(atten_db: float) -> float:
    return 10.0 ** (-atten_db / 10.0)
