"""Spectral models of signal and attack light.

A finite-linewidth source sees the spectral average of the shifted ring response,
so broad sources blunt the fuse: the same PR shift attenuates a CW line far more
than a 10 GHz gain-switched pulse.
"""
import math
from dataclasses import replace
from typing import List, Optional

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .core.constants import (
    LineShape, Port,
    PULSED_FWHM_HZ, QUAD_RTOL, QUAD_WINDOW_WIDTHS, SIGNAL_WAVELENGTH_NM,
)
from .core.exceptions import InfeasibleError, QuadratureError, ValidationError
from .core.logging import setup_logger
from .core.structs import CouplingRates, ResonatorGeometry, SourceSpectrum
from .core import units
from . import resonator

logger = setup_logger(__name__)

GAUSS_FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))
SIGNAL_POWER_W = 1e-7

PRESETS = ("cw_signal_1550_68", "pulsed_signal_10GHz", "tunable_attack")


def density(source: SourceSpectrum, offset: np.ndarray) -> np.ndarray:
    """Normalized spectral density (1/Hz) at frequency offsets from the line center."""
    if source.shape is LineShape.GAUSSIAN:
        sigma = source.fwhm * GAUSS_FWHM_TO_SIGMA
        return np.exp(-0.5 * (offset / sigma) ** 2) / (sigma * math.sqrt(2.0 * math.pi))
    half = 0.5 * source.fwhm
    return half / math.pi / (offset ** 2 + half * half)


def _mass_within(source: SourceSpectrum, width: float) -> float:
    """Fraction of the density inside ±width."""
    if source.shape is LineShape.GAUSSIAN:
        return math.erf(width / (source.fwhm * GAUSS_FWHM_TO_SIGMA * math.sqrt(2.0)))
    return 2.0 / math.pi * math.atan(width / (0.5 * source.fwhm))


def _comb_average(rates: CouplingRates, geometry: ResonatorGeometry, port: Port) -> float:
    """Port transmission averaged over one FSR."""
    kappa = rates.total
    if port is Port.DROP:
        return rates.kappa1 * rates.kappa2 / kappa / geometry.fsr
    return 1.0 - rates.kappa1 * (kappa - rates.kappa1) / kappa / geometry.fsr


def _breakpoints(center: float, lo: float, hi: float, geometry: ResonatorGeometry) -> List[float]:
    """Resonances and mode boundaries (relative to center) inside (lo, hi)."""
    first = math.floor((center + lo - geometry.base_resonance) / geometry.fsr) - 1
    last = math.ceil((center + hi - geometry.base_resonance) / geometry.fsr) + 1
    points = []
    for m in range(first, last + 1):
        for k in (m, m + 0.5):
            x = geometry.base_resonance + k * geometry.fsr - center
            if lo < x < hi:
                points.append(x)
    return sorted(points)


def effective_transmission(
    source: SourceSpectrum,
    rates: CouplingRates,
    geometry: ResonatorGeometry,
    pr_shift: float = 0.0,
    port: Port = Port.DROP,
) -> float:
    """∫S(ν)·T_port(ν; shift) dν for a source through the (shifted) ring.

    Raises:
        QuadratureError: If the adaptive quadrature misses its tolerance by more than 10×.
    """
    lineshape = resonator.drop_lineshape if port is Port.DROP else resonator.through_lineshape
    if source.shape is LineShape.DELTA:
        return float(lineshape(resonator.local_detuning(source.center, geometry, pr_shift), rates))

    # Offsets are relative to the nearest mode to keep the integrand well scaled.
    anchor = float(resonator.mode_frequency(int(resonator.nearest_mode(source.center, geometry)), geometry))
    center_offset = source.center - anchor

    def integrand(x: float) -> float:
        frequency_offset = center_offset + x
        index = round(frequency_offset / geometry.fsr)
        delta = units.TWO_PI * (index * geometry.fsr - frequency_offset) + pr_shift
        return float(density(source, x) * lineshape(delta, rates))

    inner = QUAD_WINDOW_WIDTHS * source.fwhm
    outer = max(inner, QUAD_WINDOW_WIDTHS * resonator.linewidth_hz(rates))
    edges = sorted({-outer, -inner, 0.0, inner, outer})
    total = error = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, err = quad(
            integrand, lo, hi,
            points=_breakpoints(anchor + center_offset, lo, hi, geometry) or None,
            epsabs=0.0, epsrel=QUAD_RTOL, limit=500,
        )
        total += value
        error += err
    tail = 1.0 - _mass_within(source, outer)
    total += tail * _comb_average(rates, geometry, port)

    if error > 10.0 * QUAD_RTOL * max(abs(total), 1e-300):
        raise QuadratureError("Spectral average did not converge", achieved=error / max(abs(total), 1e-300))
    if error > QUAD_RTOL * abs(total):
        logger.warning(f"Spectral average relative error {error / total:.2e} above {QUAD_RTOL:.0e}")
    return min(max(total, 0.0), 1.0)


def attenuation_db(
    source: SourceSpectrum,
    rates: CouplingRates,
    geometry: ResonatorGeometry,
    pr_shift: float,
    port: Port = Port.DROP,
) -> float:
    """Loss (dB) the shift causes relative to the cold cavity."""
    cold = effective_transmission(source, rates, geometry, 0.0, port)
    hot = effective_transmission(source, rates, geometry, pr_shift, port)
    return units.ratio_to_db(hot / cold)


def align_to_signal_mode(source: SourceSpectrum, geometry: ResonatorGeometry) -> SourceSpectrum:
    """Re-center a signal on mode a, where the fuse is operated."""
    if source.center != geometry.signal_resonance:
        logger.debug(
            f"Aligning signal {source.center:.6e} Hz to mode a at {geometry.signal_resonance:.6e} Hz"
        )
    return replace(source, center=geometry.signal_resonance)


def preset(name: str, wavelength_nm: Optional[float] = None) -> SourceSpectrum:
    """Named sources: the CW probe, the gain-switched pulse and the tunable attack laser.

    Raises:
        ValidationError: For unknown names, or tunable_attack without a wavelength.
    """
    if name == "cw_signal_1550_68":
        return SourceSpectrum(units.wavelength_to_frequency(SIGNAL_WAVELENGTH_NM), 0.0, LineShape.DELTA, SIGNAL_POWER_W)
    if name == "pulsed_signal_10GHz":
        return SourceSpectrum(
            units.wavelength_to_frequency(SIGNAL_WAVELENGTH_NM), PULSED_FWHM_HZ, LineShape.GAUSSIAN, SIGNAL_POWER_W,
        )
    if name == "tunable_attack":
        if wavelength_nm is None:
            raise ValidationError("tunable_attack needs a wavelength")
        return SourceSpectrum(units.wavelength_to_frequency(wavelength_nm))
    raise ValidationError(f"Unknown source preset '{name}', expected one of {PRESETS}")


def fit_linewidth(
    target_atten_db: float,
    pr_shift: float,
    rates: CouplingRates,
    geometry: ResonatorGeometry,
    shape: LineShape = LineShape.GAUSSIAN,
) -> SourceSpectrum:
    """Effective FWHM of a signal on mode a whose attenuation at ``pr_shift`` is the target.

    Raises:
        InfeasibleError: If even a CW line is attenuated less than the target.
    """
    center = geometry.signal_resonance
    cw_limit = attenuation_db(SourceSpectrum(center), rates, geometry, pr_shift)
    if target_atten_db >= cw_limit:
        raise InfeasibleError(
            f"Target {target_atten_db:.2f} dB exceeds the CW attenuation {cw_limit:.2f} dB",
            constraint="linewidth >= 0",
        )
    linewidth = resonator.linewidth_hz(rates)

    def gap(log_fwhm: float) -> float:
        source = SourceSpectrum(center, math.exp(log_fwhm), shape, SIGNAL_POWER_W)
        return attenuation_db(source, rates, geometry, pr_shift) - target_atten_db

    lo, hi = math.log(linewidth * 1e-3), math.log(geometry.fsr)
    if gap(hi) > 0:
        raise InfeasibleError("Target attenuation unreachable below one FSR of linewidth", constraint="fwhm <= fsr")
    fwhm = math.exp(brentq(gap, lo, hi, xtol=1e-10))
    logger.info(f"Effective {shape.value} linewidth {fwhm / 1e9:.4f} GHz for {target_atten_db:.2f} dB")
    return SourceSpectrum(center, fwhm, shape, SIGNAL_POWER_W)
