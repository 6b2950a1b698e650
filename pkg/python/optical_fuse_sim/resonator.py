"""Steady-state add-drop micro-ring model.

Single-pole coupled-mode lineshapes for the drop (port C) and through (port D)
outputs. Every resonance of the comb shares one decay-rate triple and moves
rigidly with the photorefractive shift.
"""
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .core.constants import SplitPolicy
from .core.exceptions import DomainError, ValidationError
from .core.structs import CouplingRates, Detuning, ResonatorGeometry
from .core import units

ArrayLike = Union[float, np.ndarray]


def rates_from_q(
    q_loaded: float,
    omega0: float,
    split_policy: SplitPolicy = SplitPolicy.EQUAL_THIRDS,
    fractions: Optional[Sequence[float]] = None,
) -> CouplingRates:
    """Split the loaded linewidth κ = ω₀/Q into (κ₀, κ₁, κ₂).

    Args:
        q_loaded: Loaded quality factor.
        omega0: Angular resonance frequency in rad/s.
        split_policy: EQUAL_THIRDS, or CUSTOM with ``fractions``.
        fractions: (f0, f1, f2), non-negative and summing to 1.

    Raises:
        DomainError: If Q or ω₀ is not positive.
        ValidationError: If custom fractions are invalid.
    """
    if q_loaded <= 0 or omega0 <= 0:
        raise DomainError(f"Q and omega0 must be positive: Q={q_loaded}, omega0={omega0}")
    kappa = omega0 / q_loaded

    if split_policy is SplitPolicy.EQUAL_THIRDS:
        fractions = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
    elif fractions is None or len(fractions) != 3:
        raise ValidationError("Custom split needs exactly three fractions")
    if min(fractions) < 0 or abs(sum(fractions) - 1.0) > 1e-9:
        raise ValidationError(f"Split fractions must be non-negative and sum to 1: {fractions}")

    kappa0 = kappa * fractions[0]
    kappa1 = kappa * fractions[1]
    # The remainder keeps the total equal to ω₀/Q.
    return CouplingRates(kappa0, kappa1, kappa - kappa0 - kappa1)


def drop_lineshape(delta: ArrayLike, rates: CouplingRates) -> ArrayLike:
    """Γ(Δ′) = κ₁κ₂ / (Δ′² + (κ/2)²), element-wise."""
    half = 0.5 * rates.total
    return rates.kappa1 * rates.kappa2 / (np.square(delta) + half * half)


def through_lineshape(delta: ArrayLike, rates: CouplingRates) -> ArrayLike:
    """|1 − κ₁/(iΔ′ + κ/2)|², element-wise."""
    half = 0.5 * rates.total
    delta_sq = np.square(delta)
    return (delta_sq + (half - rates.kappa1) ** 2) / (delta_sq + half * half)


def drop_transmission(detuning: Detuning, rates: CouplingRates) -> float:
    return float(drop_lineshape(detuning.value, rates))


def through_transmission(detuning: Detuning, rates: CouplingRates) -> float:
    return float(through_lineshape(detuning.value, rates))


def nearest_mode(frequency: ArrayLike, geometry: ResonatorGeometry) -> ArrayLike:
    """Index of the unshifted comb line nearest to ``frequency`` (mode b is 0)."""
    return np.rint((np.asarray(frequency) - geometry.base_resonance) / geometry.fsr)


def mode_frequency(index: int, geometry: ResonatorGeometry) -> float:
    return geometry.base_resonance + index * geometry.fsr


def local_detuning(frequency: ArrayLike, geometry: ResonatorGeometry, pr_shift: float = 0.0) -> ArrayLike:
    """Δ′ in rad/s of light at ``frequency`` (Hz) relative to its nearest mode."""
    offset = np.asarray(frequency, dtype=float) - geometry.base_resonance
    index = np.rint(offset / geometry.fsr)
    return units.TWO_PI * (index * geometry.fsr - offset) + pr_shift


def detuning_of(frequency: float, geometry: ResonatorGeometry, pr_shift: float = 0.0) -> Detuning:
    return Detuning(float(local_detuning(frequency, geometry, pr_shift)))


def spectrum(
    grid: Sequence[float],
    rates: CouplingRates,
    geometry: ResonatorGeometry,
    pr_shift: float = 0.0,
) -> List[Tuple[float, float, float]]:
    """Drop and through transmission over a frequency grid (Hz).

    Raises:
        ValidationError: If the grid is empty.
    """
    frequencies = np.asarray(grid, dtype=float)
    if frequencies.size == 0:
        raise ValidationError("Spectrum grid must not be empty")
    delta = local_detuning(frequencies, geometry, pr_shift)
    drop = drop_lineshape(delta, rates)
    through = through_lineshape(delta, rates)
    return [(float(f), float(d), float(t)) for f, d, t in zip(frequencies, drop, through)]


def wavelength_frequency(wavelength_nm: float, delta_pm: Optional[float] = None) -> float:
    """ν (Hz) of a wavelength, or Δν (Hz) of ``delta_pm`` at reference ``wavelength_nm``."""
    if delta_pm is None:
        return units.wavelength_to_frequency(wavelength_nm)
    return units.delta_wavelength_to_frequency(delta_pm, wavelength_nm)


def linewidth_hz(rates: CouplingRates) -> float:
    """Loaded FWHM κ/2π in Hz."""
    return rates.total / units.TWO_PI


def rejection_db(offset_hz: float, rates: CouplingRates) -> float:
    """Drop-port suppression (dB, positive) at a frequency offset from resonance."""
    on = drop_lineshape(0.0, rates)
    off = drop_lineshape(units.TWO_PI * offset_hz, rates)
    return units.ratio_to_db(off / on)
