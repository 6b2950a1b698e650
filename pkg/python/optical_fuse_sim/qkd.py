"""Three-intensity decoy-state BB84 rates under extra channel loss.

Asymptotic analysis only. Gains and errors follow the usual decoy channel model with
Y₀ = 2·p_dark (two detectors) and e₀ = 1/2.
"""
import math
from dataclasses import replace
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .core.constants import (
    DARK_COUNT_PRIOR,
    DECOY_MU, DECOY_NU, DECOY_O, DECOY_P_MU, DECOY_P_NU, DECOY_P_O,
    ERROR_CORRECTION_EFFICIENCY,
    FIBER_LOSS_DB_PER_KM,
    OPERATING_LENGTH_KM,
    REP_RATE_HZ,
    SIFTING_FACTOR,
    VACUUM_ERROR,
)
from .core.exceptions import DomainError, InfeasibleError
from .core.logging import setup_logger
from .core.structs import (
    ChannelModel, DecoyBounds, DecoyParams, FuseDevice, GainsErrors, SkrPoint, SkrReport, SourceSpectrum,
)
from . import attacks

logger = setup_logger(__name__)

DEFAULT_DECOY = DecoyParams(DECOY_MU, DECOY_NU, DECOY_O, DECOY_P_MU, DECOY_P_NU, DECOY_P_O)


def binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def intensities(params: DecoyParams) -> Dict[str, float]:
    return {"mu": params.mu, "nu": params.nu, "o": params.o}


def gains_and_errors(params: DecoyParams, channel: ChannelModel, e0: float = VACUUM_ERROR) -> GainsErrors:
    """Q_λ = 1 − (1−Y₀)e^{−ηλ}, E_λQ_λ = e₀Y₀ + e_d(1 − e^{−ηλ}) for every intensity."""
    eta = channel.transmittance
    y0 = channel.vacuum_yield
    gains, errors = {}, {}
    for name, lam in intensities(params).items():
        detected = -math.expm1(-eta * lam)
        q = 1.0 - (1.0 - y0) * math.exp(-eta * lam)
        gains[name] = q
        errors[name] = (e0 * y0 + channel.misalignment_error * detected) / q if q > 0 else e0
    return GainsErrors(gains, errors)


def vacuum_yield_bound(params: DecoyParams, stats: GainsErrors) -> float:
    """Y₀ from the vacuum gain, or its weak-plus-vacuum lower bound when o > 0."""
    q, nu, o = stats.gains, params.nu, params.o
    if o == 0:
        return q["o"]
    return max((nu * q["o"] * math.exp(o) - o * q["nu"] * math.exp(nu)) / (nu - o), 0.0)


def single_photon_bounds(params: DecoyParams, stats: GainsErrors, e0: float = VACUUM_ERROR) -> DecoyBounds:
    """Lower bound on Y₁ and upper bound on e₁ from the observed statistics.

    Infeasible statistics (Y₁ᴸ ≤ 0) give ``y1_lower=0``, ``e1_upper=1`` and ``feasible=False``.

    Raises:
        DomainError: If ν is zero or μ equals ν.
    """
    mu, nu = params.mu, params.nu
    if nu <= 0 or mu == nu:
        raise DomainError(f"Decoy bounds need mu > nu > 0, got mu={mu}, nu={nu}")
    q, e = stats.gains, stats.errors
    y0 = vacuum_yield_bound(params, stats)
    y1 = mu / (mu * nu - nu ** 2) * (
        q["nu"] * math.exp(nu)
        - q["mu"] * math.exp(mu) * nu ** 2 / mu ** 2
        - (mu ** 2 - nu ** 2) / mu ** 2 * y0
    )
    if y1 <= 0:
        logger.debug(f"Infeasible decoy statistics: Y1 lower bound {y1:.3e}")
        return DecoyBounds(y0, 0.0, 1.0, False)
    e1 = (e["nu"] * q["nu"] * math.exp(nu) - e0 * y0) / (y1 * nu)
    return DecoyBounds(y0, min(y1, 1.0), min(max(e1, 0.0), 1.0), True)


def skr(params: DecoyParams, channel: ChannelModel, e0: float = VACUUM_ERROR) -> SkrReport:
    """Secret key per emitted pulse and per second, clamped at zero."""
    stats = gains_and_errors(params, channel, e0)
    bounds = single_photon_bounds(params, stats, e0)
    q_mu, e_mu = stats.gains["mu"], stats.errors["mu"]
    q1 = bounds.y1_lower * params.mu * math.exp(-params.mu)
    weight = channel.sifting_factor * params.p_mu
    rate = 0.0
    if bounds.feasible:
        bracket = (
            -q_mu * channel.error_correction_efficiency * binary_entropy(e_mu)
            + q1 * (1.0 - binary_entropy(bounds.e1_upper))
        )
        rate = max(weight * bracket, 0.0)
    return SkrReport(
        stats=stats,
        y0=bounds.y0,
        y1_lower=bounds.y1_lower,
        e1_upper=bounds.e1_upper,
        q1_gain=q1,
        sifted_rate_per_pulse=weight * q_mu,
        qber=e_mu,
        skr_per_pulse=rate,
        skr_bps=rate * channel.rep_rate,
        feasible=bounds.feasible,
    )


def skr_ratio(params: DecoyParams, channel: ChannelModel, extra_loss_db: float) -> float:
    """SKR with ``extra_loss_db`` added, relative to the channel as given."""
    nominal = skr(params, channel).skr_per_pulse
    if nominal <= 0:
        return 0.0
    attacked = replace(channel, extra_loss_db=channel.extra_loss_db + extra_loss_db)
    return skr(params, attacked).skr_per_pulse / nominal


def _channel_for_dark_count(
    dark_count: float,
    sifted_rate: float,
    qber: float,
    length_km: float,
    fiber_loss_db_per_km: float,
    f: float,
    q: float,
    params: DecoyParams,
    rep_rate: float,
    e0: float,
) -> ChannelModel:
    y0 = 2.0 * dark_count
    weight = q * params.p_mu
    if sifted_rate >= weight:
        raise InfeasibleError(
            f"Sifted rate {sifted_rate:.4e} exceeds q*p_mu = {weight:.4e}",
            constraint="sifted_rate < q*p_mu",
        )
    q_mu = sifted_rate / weight
    if q_mu <= y0:
        raise InfeasibleError(
            f"Gain {q_mu:.4e} does not exceed the vacuum yield {y0:.4e}",
            constraint="Q_mu > 2*dark_count",
        )
    detected = (q_mu - y0) / (1.0 - y0)
    eta = -math.log1p(-detected) / params.mu
    detector_efficiency = eta * 10.0 ** (length_km * fiber_loss_db_per_km / 10.0)
    if detector_efficiency > 1.0:
        raise InfeasibleError(
            f"Required detector efficiency {detector_efficiency:.4f} exceeds 1",
            constraint="detector_efficiency <= 1",
        )
    misalignment = (qber * q_mu - e0 * y0) / detected
    if not 0.0 <= misalignment <= 0.5:
        raise InfeasibleError(
            f"Misalignment error {misalignment:.4f} outside [0, 0.5]",
            constraint="0 <= e_d <= 0.5",
        )
    return ChannelModel(
        length_km=length_km,
        fiber_loss_db_per_km=fiber_loss_db_per_km,
        extra_loss_db=0.0,
        detector_efficiency=detector_efficiency,
        dark_count_prob=dark_count,
        misalignment_error=misalignment,
        error_correction_efficiency=f,
        sifting_factor=q,
        rep_rate=rep_rate,
    )


def calibrate_channel(
    sifted_rate: float,
    qber: float,
    length_km: float = OPERATING_LENGTH_KM,
    fiber_loss_db_per_km: float = FIBER_LOSS_DB_PER_KM,
    f: float = ERROR_CORRECTION_EFFICIENCY,
    q: float = SIFTING_FACTOR,
    params: DecoyParams = DEFAULT_DECOY,
    dark_count_prior: float = DARK_COUNT_PRIOR,
    skr_ratio_target: Optional[float] = None,
    ratio_extra_loss_db: Optional[float] = None,
    rep_rate: float = REP_RATE_HZ,
    e0: float = VACUUM_ERROR,
) -> ChannelModel:
    """Channel reproducing a sifted rate and QBER at the operating distance.

    Detector efficiency and misalignment follow in closed form once the dark count is
    fixed. The dark count comes from the prior, or, when ``skr_ratio_target`` is given,
    from a root solve so that adding ``ratio_extra_loss_db`` leaves that fraction of the SKR.

    Raises:
        InfeasibleError: If no channel in physical ranges matches; the binding
            constraint is carried on the exception.
    """
    if sifted_rate <= 0 or qber <= 0:
        raise InfeasibleError("Calibration targets must be positive", constraint="targets > 0")

    def build(dark_count: float) -> ChannelModel:
        return _channel_for_dark_count(
            dark_count, sifted_rate, qber, length_km, fiber_loss_db_per_km, f, q, params, rep_rate, e0,
        )

    if skr_ratio_target is None:
        channel = build(dark_count_prior)
    else:
        if ratio_extra_loss_db is None:
            raise InfeasibleError("An SKR ratio target needs the extra loss it applies to",
                                  constraint="ratio_extra_loss_db set")
        q_mu = sifted_rate / (q * params.p_mu)
        lo, hi = 1e-12, qber * q_mu / (2.0 * e0) * (1.0 - 1e-9)

        def gap(log_dark: float) -> float:
            return skr_ratio(params, build(math.exp(log_dark)), ratio_extra_loss_db) - skr_ratio_target

        try:
            g_lo, g_hi = gap(math.log(lo)), gap(math.log(hi))
        except InfeasibleError as e:
            raise InfeasibleError(f"SKR ratio target unreachable: {e}", constraint=e.constraint) from e
        if g_lo * g_hi > 0:
            raise InfeasibleError(
                f"SKR ratio {skr_ratio_target:.4f} at +{ratio_extra_loss_db:.2f} dB is outside "
                f"[{g_hi + skr_ratio_target:.4f}, {g_lo + skr_ratio_target:.4f}]",
                constraint="dark count within [1e-12, QBER*Q_mu]",
            )
        channel = build(math.exp(brentq(gap, math.log(lo), math.log(hi), xtol=1e-10)))
    logger.info(
        f"Channel: eta_det={channel.detector_efficiency:.4e}, p_dark={channel.dark_count_prob:.4e}, "
        f"e_d={channel.misalignment_error:.4e}"
    )
    return channel


def skr_vs_attack(
    attack_powers: Sequence[float],
    signal: SourceSpectrum,
    device: FuseDevice,
    channel: ChannelModel,
    params: DecoyParams = DEFAULT_DECOY,
    wavelength_nm: Optional[float] = None,
) -> List[SkrPoint]:
    """SKR with the steady-state fuse attenuation at each attack power added as extra loss."""
    return skr_vs_distance([channel.length_km], attack_powers, signal, device, channel, params, wavelength_nm)


def skr_vs_distance(
    distances_km: Sequence[float],
    attack_powers: Sequence[float],
    signal: SourceSpectrum,
    device: FuseDevice,
    channel: ChannelModel,
    params: DecoyParams = DEFAULT_DECOY,
    wavelength_nm: Optional[float] = None,
) -> List[SkrPoint]:
    """SKR grid, distance-major; the fuse attenuation is solved once per power."""
    wavelength_nm = wavelength_nm or device.reference_nm
    penalties = []
    for power in attack_powers:
        if power == 0:
            penalties.append(0.0)
            continue
        state, _ = attacks.solve_attack(power, wavelength_nm, device)
        penalties.append(attacks.signal_attenuation(signal, state.delta_pr, device))
    points = []
    for distance in distances_km:
        for power, atten in zip(attack_powers, penalties):
            attacked = replace(channel, length_km=distance, extra_loss_db=channel.extra_loss_db + atten)
            points.append(SkrPoint(distance, power, atten, skr(params, attacked)))
    return points


def suppression_ratios(points: Sequence[SkrPoint], params: DecoyParams, channel: ChannelModel) -> np.ndarray:
    """R_attack / R₀ per point, against the unattacked channel at the same distance."""
    nominal = {}
    ratios = []
    for point in points:
        if point.distance_km not in nominal:
            nominal[point.distance_km] = skr(params, replace(channel, length_km=point.distance_km)).skr_per_pulse
        r0 = nominal[point.distance_km]
        ratios.append(point.report.skr_per_pulse / r0 if r0 > 0 else 0.0)
    return np.asarray(ratios)
