"""Photorefractive resonance shift as a dynamical state.

The space-charge field is not modeled; its electro-optic effect is lumped into a
calibrated blue shift δ_PR (rad/s) that relaxes toward a saturable function of the
circulating attack power. Because the shift moves the attack light's own detuning,
the steady state is a fixed point, selected by integrating forward from a cold cavity.
"""
import csv
import math
from collections import deque
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
from scipy.optimize import brentq, least_squares

from .core.constants import (
    AnchorKind,
    CALIBRATION_RESIDUAL_LIMIT,
    DEFAULT_DT_S,
    FALL_TIME_90_S,
    FIXED_POINT_RTOL,
    MAX_STEPS,
    RISE_TIME_90_S,
    SIGNAL_POWER_LIMIT_W,
    STEADY_STATE_RATE_TOL,
)
from .core.exceptions import CalibrationError, ConvergenceError, DomainError, ValidationError
from .core.logging import setup_logger
from .core.structs import (
    CalibrationAnchor, CouplingRates, Detuning, PrModel, PrState, ResonatorGeometry,
)
from .core import units
from . import resonator

logger = setup_logger(__name__)

ANCHOR_HEADERS = ("power_dbm", "kind", "value")
TAU_RISE_DEFAULT = RISE_TIME_90_S / math.log(10.0)
TAU_FALL_DEFAULT = FALL_TIME_90_S / math.log(10.0)


def target_shift(p_circ: float, model: PrModel) -> float:
    """Saturated shift δ = δ_max·xᵞ/(1 + xᵞ) with x = p_circ/p_ref.

    Raises:
        DomainError: If the power is negative.
    """
    if p_circ < 0:
        raise DomainError(f"Circulating power must be non-negative, got {p_circ} W")
    if p_circ == 0:
        return 0.0
    x = (p_circ / model.p_ref) ** model.gamma
    return model.delta_max * x / (1.0 + x)


def circulating_power(p_in: float, detuning_b: Detuning, rates: CouplingRates) -> float:
    """Effective intracavity power p_in·κ₁κ/(Δ′² + (κ/2)²); 4κ₁/κ·p_in on resonance."""
    if p_in < 0:
        raise DomainError(f"Input power must be non-negative, got {p_in} W")
    half = 0.5 * rates.total
    return p_in * rates.kappa1 * rates.total / (detuning_b.value ** 2 + half * half)


def attack_detuning(omega_att: float, geometry: ResonatorGeometry, delta_pr: float) -> Detuning:
    """Detuning of the attack light from its nearest mode, including the PR shift."""
    return resonator.detuning_of(omega_att / units.TWO_PI, geometry, delta_pr)


def _response(
    p_in: float, omega_att: float, model: PrModel, rates: CouplingRates, geometry: ResonatorGeometry,
) -> Callable[[float], float]:
    """δ ↦ target_shift(circulating_power(p_in, Δ′_b(δ)))."""
    frequency = omega_att / units.TWO_PI
    cold = float(resonator.local_detuning(frequency, geometry))
    half_sq = (0.5 * rates.total) ** 2
    gain = p_in * rates.kappa1 * rates.total

    def response(delta: float) -> float:
        p_circ = gain / ((cold + delta) ** 2 + half_sq)
        return target_shift(p_circ, model)

    return response


def step(
    state: PrState,
    p_in: float,
    omega_att: float,
    dt: float,
    model: PrModel,
    rates: CouplingRates,
    geometry: ResonatorGeometry,
) -> PrState:
    """One explicit step of dδ/dt = (δ_target − δ)/τ, τ = tau_rise while rising else tau_fall.

    Raises:
        ValidationError: If dt is not positive or exceeds a tenth of the active τ.
    """
    target = _response(p_in, omega_att, model, rates, geometry)(state.delta_pr)
    return _advance(state, target, dt, model)


def _advance(state: PrState, target: float, dt: float, model: PrModel) -> PrState:
    tau = model.tau_rise if target > state.delta_pr else model.tau_fall
    if dt <= 0 or dt > tau / 10.0:
        raise ValidationError(f"Time step {dt} s must lie in (0, {tau / 10.0:.4g}] s")
    delta = state.delta_pr + dt * (target - state.delta_pr) / tau
    return PrState(min(max(delta, 0.0), model.delta_max), state.t + dt)


def fixed_point(
    p_in: float,
    omega_att: float,
    model: PrModel,
    rates: CouplingRates,
    geometry: ResonatorGeometry,
    damping: float = 0.5,
    max_iter: int = 100_000,
) -> Optional[float]:
    """Damped iteration δ ← δ + α(f(δ) − δ) from δ = 0; None if it does not settle."""
    response = _response(p_in, omega_att, model, rates, geometry)
    delta = 0.0
    for _ in range(max_iter):
        update = damping * (response(delta) - delta)
        delta += update
        if abs(update) <= FIXED_POINT_RTOL * max(delta, model.delta_max * 1e-12):
            return delta
    return None


def _polish(response: Callable[[float], float], delta: float, model: PrModel) -> float:
    """Refine an integrated state onto the exact root of f(δ) − δ nearby."""
    def gap(d: float) -> float:
        return response(d) - d

    g0 = gap(delta)
    if g0 == 0.0:
        return delta
    width = max(abs(g0), model.delta_max * 1e-9)
    for _ in range(60):
        lo, hi = max(delta - width, 0.0), min(delta + width, model.delta_max)
        if gap(lo) * gap(hi) <= 0:
            return brentq(gap, lo, hi, xtol=1e-14 * model.delta_max, rtol=1e-14)
        width *= 2.0
    return delta


def steady_state(
    p_in: float,
    omega_att: float,
    model: PrModel,
    rates: CouplingRates,
    geometry: ResonatorGeometry,
    dt: float = DEFAULT_DT_S,
    max_steps: int = MAX_STEPS,
) -> PrState:
    """Shift reached by integrating forward from the cold cavity until |dδ/dt| is negligible.

    Raises:
        DomainError: If the power is negative.
        ConvergenceError: If the integration has not settled after ``max_steps``.
    """
    if p_in < 0:
        raise DomainError(f"Input power must be non-negative, got {p_in} W")
    if p_in == 0 or model.delta_max == 0:
        return PrState(0.0)

    response = _response(p_in, omega_att, model, rates, geometry)
    dt = min(dt, model.tau_rise / 10.0, model.tau_fall / 10.0)
    rate_tol = model.delta_max * STEADY_STATE_RATE_TOL
    state = PrState(0.0)
    recent = deque([0.0], maxlen=100)
    for n in range(max_steps):
        target = response(state.delta_pr)
        tau = model.tau_rise if target > state.delta_pr else model.tau_fall
        if abs(target - state.delta_pr) / tau < rate_tol:
            break
        state = _advance(state, target, dt, model)
        recent.append(state.delta_pr)
    else:
        raise ConvergenceError(
            f"PR steady state did not settle within {max_steps} steps",
            bracket=(min(recent), max(recent)),
        )

    delta = _polish(response, state.delta_pr, model)
    residual = abs(response(delta) - delta)
    if residual > FIXED_POINT_RTOL * max(delta, model.delta_max * 1e-12):
        logger.warning(f"Fixed-point residual {residual:.3e} rad/s above tolerance at p_in={p_in:.3e} W")

    reference = fixed_point(p_in, omega_att, model, rates, geometry)
    gap = float("nan")
    if reference is not None:
        gap = abs(reference - delta) / max(delta, model.delta_max * 1e-12)
        if gap > 10 * FIXED_POINT_RTOL:
            logger.warning(
                f"Forward integration and fixed-point iteration disagree by {gap:.2e} "
                f"at p_in={p_in:.3e} W; keeping the forward branch"
            )
    return PrState(delta, state.t, True, gap)


def observed_shift(anchor: CalibrationAnchor, rates: CouplingRates, reference_nm: float) -> float:
    """Shift (rad/s) an anchor implies; CW attenuations invert the drop Lorentzian."""
    if anchor.kind is AnchorKind.SHIFT_PM:
        return units.pm_to_shift(anchor.value, reference_nm)
    ratio = 10.0 ** (anchor.value / 10.0)
    return 0.5 * rates.total * math.sqrt(ratio - 1.0)


def calibrate(
    anchors: Sequence[CalibrationAnchor],
    rates: CouplingRates,
    geometry: ResonatorGeometry,
    gamma_prior: float = 1.0,
    reference_nm: Optional[float] = None,
) -> PrModel:
    """Fit (delta_max, p_ref, gamma) so steady states reproduce the anchors.

    With two anchors gamma is held at ``gamma_prior``; with three or more it is fitted.
    The fit works in log space on the fixed-point identity, then every anchor is
    re-solved with ``steady_state`` and the relative shift residuals are stored on the
    model. Residuals above the calibration limit set ``quality_warning``.

    Raises:
        ValidationError: If fewer than two anchors at distinct powers are given.
        CalibrationError: If the least-squares fit does not converge.
    """
    if len({a.on_chip_attack_power for a in anchors}) < 2:
        raise ValidationError("Calibration needs at least two anchors at distinct powers")
    reference_nm = reference_nm or units.frequency_to_wavelength(geometry.base_resonance)

    shifts = np.array([observed_shift(a, rates, reference_nm) for a in anchors])
    omegas = [units.TWO_PI * units.wavelength_to_frequency(a.wavelength_nm) for a in anchors]
    p_circ = np.array([
        circulating_power(a.on_chip_attack_power, attack_detuning(w, geometry, d), rates)
        for a, w, d in zip(anchors, omegas, shifts)
    ])
    fit_gamma = len(anchors) >= 3

    def unpack(theta: np.ndarray) -> PrModel:
        gamma = math.exp(theta[2]) if fit_gamma else gamma_prior
        return PrModel(math.exp(theta[0]), math.exp(theta[1]), gamma, TAU_RISE_DEFAULT, TAU_FALL_DEFAULT)

    def residuals(theta: np.ndarray) -> np.ndarray:
        model = unpack(theta)
        return np.log([target_shift(p, model) for p in p_circ]) - np.log(shifts)

    theta0 = [math.log(2.0 * shifts.max()), math.log(float(np.median(p_circ)))]
    if fit_gamma:
        theta0.append(math.log(gamma_prior))
    fit = least_squares(residuals, theta0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    if not fit.success:
        raise CalibrationError(f"Photorefractive fit did not converge: {fit.message}")
    model = unpack(fit.x)
    logger.debug(
        f"PR fit: delta_max/2pi={model.delta_max / units.TWO_PI:.4e} Hz, "
        f"p_ref={model.p_ref:.4e} W, gamma={model.gamma:.4f}, cost={fit.cost:.3e}"
    )

    solved = []
    for anchor, omega, shift in zip(anchors, omegas, shifts):
        state = steady_state(anchor.on_chip_attack_power, omega, model, rates, geometry)
        solved.append((state.delta_pr - shift) / shift)
    worst = max(abs(r) for r in solved)
    warning = ""
    if worst > CALIBRATION_RESIDUAL_LIMIT:
        warning = f"Calibration residual {worst:.1%} exceeds {CALIBRATION_RESIDUAL_LIMIT:.0%}"
        logger.warning(warning)
    return PrModel(
        model.delta_max, model.p_ref, model.gamma, model.tau_rise, model.tau_fall,
        residuals=tuple(solved), quality_warning=warning,
    )


def _response_times(
    model: PrModel, p_in: float, omega_att: float, rates: CouplingRates, geometry: ResonatorGeometry,
    dt: float, duration: float,
) -> tuple:
    """Times for the CW attenuation (dB) to reach 90 % on, and fall to 10 % off."""
    response = _response(p_in, omega_att, model, rates, geometry)
    on_res = resonator.drop_lineshape(0.0, rates)

    def attenuation(delta: float) -> float:
        return units.ratio_to_db(resonator.drop_lineshape(delta, rates) / on_res)

    settled = attenuation(steady_state(p_in, omega_att, model, rates, geometry).delta_pr)
    rise = fall = None
    state = PrState(0.0)
    while state.t < duration:
        state = _advance(state, response(state.delta_pr), dt, model)
        if attenuation(state.delta_pr) >= 0.9 * settled:
            rise = state.t
            break
    state = PrState(steady_state(p_in, omega_att, model, rates, geometry).delta_pr)
    while state.t < duration:
        state = _advance(state, 0.0, dt, model)
        if attenuation(state.delta_pr) <= 0.1 * settled:
            fall = state.t
            break
    if rise is None or fall is None:
        raise ConvergenceError(f"Response did not settle within {duration} s")
    return rise, fall


def calibrate_dynamics(
    model: PrModel,
    rates: CouplingRates,
    geometry: ResonatorGeometry,
    p_in: float = 1e-3,
    rise_time: float = RISE_TIME_90_S,
    fall_time: float = FALL_TIME_90_S,
) -> PrModel:
    """Rescale tau_rise/tau_fall so the CW attenuation settles and recovers on time.

    The relaxation equation is time-invariant under τ scaling, so the response is
    measured once with unit time constants and rescaled.
    """
    omega_att = units.TWO_PI * geometry.base_resonance
    unit = PrModel(model.delta_max, model.p_ref, model.gamma, 1.0, 1.0)
    rise, fall = _response_times(unit, p_in, omega_att, rates, geometry, dt=1e-4, duration=50.0)
    logger.debug(f"Unit-tau response: 90% on at {rise:.4f}, 10% off at {fall:.4f}")
    return PrModel(
        model.delta_max, model.p_ref, model.gamma,
        rise_time / rise, fall_time / fall,
        residuals=model.residuals, quality_warning=model.quality_warning,
    )


def load_anchors(path: Union[str, Path]) -> List[CalibrationAnchor]:
    """Read anchors from CSV with columns power_dbm, kind, value (optional wavelength_nm).

    Raises:
        ValidationError: If the file is missing required headers or holds bad rows.
    """
    path = Path(path)
    with path.open(newline='', encoding='utf-8') as f:
        reader = csv.DictReader(f)
        headers = reader.fieldnames or []
        missing = [h for h in ANCHOR_HEADERS if h not in headers]
        if missing:
            raise ValidationError(f"{path}: missing anchor columns {missing}")
        anchors = []
        for line, row in enumerate(reader, start=2):
            try:
                extra = {}
                if row.get("wavelength_nm"):
                    extra["wavelength_nm"] = float(row["wavelength_nm"])
                anchors.append(CalibrationAnchor(
                    units.dbm_to_watts(float(row["power_dbm"])),
                    AnchorKind(row["kind"].strip()),
                    float(row["value"]),
                    **extra,
                ))
            except ValueError as e:
                raise ValidationError(f"{path}:{line}: {e}")
    return anchors


def check_signal_power(power_w: float) -> bool:
    """Warn when the signal itself is strong enough to drive the PR effect."""
    if power_w > SIGNAL_POWER_LIMIT_W:
        logger.warning(
            f"Signal power {power_w:.3e} W exceeds {SIGNAL_POWER_LIMIT_W:.0e} W; "
            "its own PR contribution is not modeled"
        )
        return False
    return True
