"""Attack scenarios: static points, inverse power solves, wavelength sweeps and time series."""
import math
from dataclasses import replace
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

from scipy.optimize import brentq

from .core.constants import (
    AttackMode, POWER_MAX_ITER, POWER_SEARCH_DBM, POWER_TOL_DB, POWER_XTOL_DB, SKR_ONSET_RATIO,
)
from .core.exceptions import ConvergenceError, FuseSimError, InfeasibleError, ValidationError
from .core.logging import setup_logger
from .core.structs import (
    AttackScenario, FuseDevice, PrState, RequiredPower, ScenarioResult, SourceSpectrum,
    SweepSpec, TimeSample,
)
from .core import units
from . import photorefractive, resonator, sources

logger = setup_logger(__name__)


def attack_omega(wavelength_nm: float) -> float:
    return units.TWO_PI * units.wavelength_to_frequency(wavelength_nm)


def detuning_pm(wavelength_nm: float, device: FuseDevice) -> float:
    return (wavelength_nm - device.reference_nm) * 1e3


def solve_attack(on_chip_power: float, wavelength_nm: float, device: FuseDevice) -> Tuple[PrState, float]:
    """Converged PR state and the attack power passing the drop path into the transmitter."""
    omega = attack_omega(wavelength_nm)
    state = photorefractive.steady_state(
        on_chip_power, omega, device.model, device.rates, device.geometry, dt=device.dt,
    )
    detuning = photorefractive.attack_detuning(omega, device.geometry, state.delta_pr)
    return state, on_chip_power * resonator.drop_transmission(detuning, device.rates)


def signal_attenuation(signal: SourceSpectrum, shift: float, device: FuseDevice) -> float:
    aligned = sources.align_to_signal_mode(signal, device.geometry)
    return sources.attenuation_db(aligned, device.rates, device.geometry, shift)


def run_static(scenario: AttackScenario, signal: SourceSpectrum, device: FuseDevice) -> ScenarioResult:
    """Steady-state signal attenuation, Tx power and shift for a forward attack.

    Raises:
        ValidationError: If the scenario is not in forward mode.
        ConvergenceError: If the PR solve does not converge.
    """
    if scenario.mode is not AttackMode.FORWARD:
        raise ValidationError("run_static needs a forward-mode scenario")
    state, tx_power = solve_attack(scenario.on_chip_power, scenario.wavelength_nm, device)
    return ScenarioResult(
        wavelength_nm=scenario.wavelength_nm,
        detuning_pm=detuning_pm(scenario.wavelength_nm, device),
        signal_attenuation_db=signal_attenuation(signal, state.delta_pr, device),
        attack_power_at_tx_w=tx_power,
        on_chip_attack_power_w=scenario.on_chip_power,
        pr_shift_pm=units.shift_to_pm(state.delta_pr, device.reference_nm),
        converged=state.converged,
    )


def required_power(target_tx_power: float, wavelength_nm: float, device: FuseDevice) -> RequiredPower:
    """Smallest on-chip power whose converged Tx power meets the target.

    Root-finds Tx(P) = target in dBm over the search window. If the forward map
    jumps across the target (a bistable fold), the power just above the jump is
    returned with ``fold=True``.

    Raises:
        InfeasibleError: If the target lies outside what the search window can deliver.
        ConvergenceError: If the root-find exhausts its iterations.
    """
    if target_tx_power == 0:
        return RequiredPower(0.0, 0.0, 0.0, False)
    target_dbm = units.watts_to_dbm(target_tx_power)

    def evaluate(power_dbm: float) -> Tuple[float, PrState]:
        state, tx = solve_attack(units.dbm_to_watts(power_dbm), wavelength_nm, device)
        return units.watts_to_dbm(tx), state

    lo, hi = POWER_SEARCH_DBM
    tx_hi, state_hi = evaluate(hi)
    if tx_hi < target_dbm - POWER_TOL_DB:
        raise InfeasibleError(
            f"Tx target {target_dbm:.2f} dBm unreachable at {wavelength_nm:.3f} nm "
            f"(max {tx_hi:.2f} dBm)",
            constraint=f"on-chip power <= {hi:.0f} dBm",
        )
    tx_lo, state_lo = evaluate(lo)
    if tx_lo > target_dbm + POWER_TOL_DB:
        raise InfeasibleError(
            f"Tx target {target_dbm:.2f} dBm is below the floor {tx_lo:.2f} dBm",
            constraint=f"on-chip power >= {lo:.0f} dBm",
        )
    if tx_lo >= target_dbm:
        return RequiredPower(units.dbm_to_watts(lo), units.dbm_to_watts(tx_lo), state_lo.delta_pr, False)
    if tx_hi <= target_dbm:
        return RequiredPower(units.dbm_to_watts(hi), units.dbm_to_watts(tx_hi), state_hi.delta_pr, False)

    try:
        root = brentq(
            lambda p: evaluate(p)[0] - target_dbm, lo, hi, xtol=POWER_XTOL_DB, maxiter=POWER_MAX_ITER,
        )
    except RuntimeError as e:
        raise ConvergenceError(f"Tx power solve failed at {wavelength_nm:.3f} nm: {e}", bracket=(lo, hi)) from e
    tx_root, state_root = evaluate(root)
    if abs(tx_root - target_dbm) <= POWER_TOL_DB:
        return RequiredPower(units.dbm_to_watts(root), units.dbm_to_watts(tx_root), state_root.delta_pr, False)

    above = root + 2.0 * POWER_XTOL_DB
    tx_above, state_above = evaluate(above)
    logger.warning(
        f"Tx power jumps across {target_dbm:.2f} dBm near {root:.3f} dBm at {wavelength_nm:.3f} nm; "
        "returning the forward-integration branch above the fold"
    )
    return RequiredPower(units.dbm_to_watts(above), units.dbm_to_watts(tx_above), state_above.delta_pr, True)


def _sweep_point(args: Tuple[float, float, SourceSpectrum, FuseDevice]) -> ScenarioResult:
    wavelength_nm, target_tx_power, signal, device = args
    try:
        solution = required_power(target_tx_power, wavelength_nm, device)
        result = run_static(
            AttackScenario(wavelength_nm, on_chip_power=solution.on_chip_power), signal, device,
        )
        return replace(result, fold=solution.fold)
    except (InfeasibleError, ConvergenceError) as e:
        logger.warning(f"Sweep point {wavelength_nm:.3f} nm failed: {e}")
        nan = math.nan
        return ScenarioResult(
            wavelength_nm, detuning_pm(wavelength_nm, device), nan, nan, nan, nan,
            converged=False, error=str(e),
        )


def wavelength_sweep(
    spec: SweepSpec, signal: SourceSpectrum, device: FuseDevice, workers: int = 1,
) -> List[ScenarioResult]:
    """Fixed-Tx-power sweep; each point is solved from a cold cavity.

    Failed points are recorded with ``converged=False`` and the sweep continues.
    """
    jobs = [
        (spec.center_wavelength_nm + offset * 1e-3, spec.target_tx_power, signal, device)
        for offset in spec.offsets_pm
    ]
    logger.info(f"Sweeping {len(jobs)} wavelengths over {spec.span_pm:g} pm")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_point, jobs))
    else:
        results = [_sweep_point(job) for job in jobs]
    return sorted(results, key=lambda r: r.wavelength_nm)


def run_timeseries(
    scenario: AttackScenario,
    signal: SourceSpectrum,
    dt: float,
    duration: float,
    device: FuseDevice,
) -> List[TimeSample]:
    """Explicit integration with the attack switched per schedule.

    Switching happens on step boundaries; transmission is normalized to the cold cavity.

    Raises:
        ValidationError: If the duration does not cover the schedule, or a step fails
            (the message carries the time).
    """
    if scenario.schedule and duration < scenario.schedule[-1][1]:
        raise ValidationError(f"Duration {duration} s does not cover the schedule {scenario.schedule}")
    on_chip = scenario.on_chip_power
    if scenario.mode is AttackMode.FIXED_TX_POWER:
        on_chip = required_power(scenario.target_tx_power, scenario.wavelength_nm, device).on_chip_power

    omega = attack_omega(scenario.wavelength_nm)
    aligned = sources.align_to_signal_mode(signal, device.geometry)
    cold = sources.effective_transmission(aligned, device.rates, device.geometry, 0.0)
    windows = [(round(t_on / dt), round(t_off / dt)) for t_on, t_off in scenario.schedule]

    def sample(state: PrState) -> TimeSample:
        hot = sources.effective_transmission(aligned, device.rates, device.geometry, state.delta_pr)
        return TimeSample(state.t, hot / cold, units.shift_to_pm(state.delta_pr, device.reference_nm))

    state = PrState(0.0)
    samples = [sample(state)]
    for k in range(int(round(duration / dt))):
        power = on_chip if any(start <= k < stop for start, stop in windows) else 0.0
        try:
            state = photorefractive.step(
                state, power, omega, dt, device.model, device.rates, device.geometry,
            )
        except FuseSimError as e:
            raise ValidationError(f"At t={state.t:.4f} s: {e}") from e
        state = PrState(state.delta_pr, (k + 1) * dt)
        samples.append(sample(state))
    return samples


def onset_power(powers: Sequence[float], ratios: Sequence[float], threshold: float = SKR_ONSET_RATIO) -> Optional[float]:
    """Lowest power (in ascending order) whose SKR ratio falls below the threshold."""
    for power, ratio in sorted(zip(powers, ratios)):
        if ratio < threshold:
            return power
    return None
