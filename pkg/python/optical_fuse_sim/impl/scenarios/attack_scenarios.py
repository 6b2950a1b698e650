"""Scenarios that drive the fuse directly: static power scans, sweeps, time series, spectra."""
from typing import List, Sequence

import numpy as np

from optical_fuse_sim import attacks, resonator
from optical_fuse_sim.impl.scenarios.base_scenario import BaseScenario
from optical_fuse_sim.impl.scenarios.context import attack_wavelength
from optical_fuse_sim.core.structs import AttackScenario, ScenarioResult, SweepSpec
from optical_fuse_sim.core.logging import setup_logger
from optical_fuse_sim.core import units

logger = setup_logger(__name__)


def result_row(result: ScenarioResult) -> List[object]:
    return [
        result.wavelength_nm,
        result.detuning_pm,
        units.watts_to_dbm(result.on_chip_attack_power_w),
        units.watts_to_dbm(result.attack_power_at_tx_w),
        result.signal_attenuation_db,
        result.pr_shift_pm,
        result.converged,
    ]


class StaticScenario(BaseScenario):
    """Steady state at each on-chip power of a fixed-wavelength attack."""

    def simulate(self) -> List[Sequence[object]]:
        wavelength = attack_wavelength(self.scenario, self.device)
        rows = []
        for power_dbm in self.scenario["powers_dbm"]:
            result = attacks.run_static(
                AttackScenario(wavelength, on_chip_power=units.dbm_to_watts(power_dbm)), self.signal, self.device,
            )
            rows.append(result_row(result))
        return rows


class SweepScenario(BaseScenario):
    """Fixed Tx power across attack wavelengths."""

    def simulate(self) -> List[Sequence[object]]:
        spec = SweepSpec(
            self.scenario["center_nm"] or self.device.reference_nm,
            self.scenario["span_pm"],
            self.scenario["step_pm"],
            units.dbm_to_watts(self.scenario["tx_dbm"]),
        )
        results = attacks.wavelength_sweep(spec, self.signal, self.device, workers=self.run_config.workers)
        folds = [f"{r.wavelength_nm:.3f}" for r in results if r.fold]
        if folds:
            logger.warning(f"Bistable branch selected at {len(folds)} wavelength(s): {', '.join(folds)} nm")
        return [result_row(result) for result in results]


class TimeseriesScenario(BaseScenario):
    """Signal transmission while the attack is switched on and off."""

    def simulate(self) -> List[Sequence[object]]:
        scenario = AttackScenario(
            attack_wavelength(self.scenario, self.device),
            on_chip_power=units.dbm_to_watts(self.scenario["power_dbm"]),
            schedule=self.scenario["schedule_s"],
        )
        dt = self.scenario["dt_s"] or self.device.dt
        samples = attacks.run_timeseries(scenario, self.signal, dt, self.scenario["duration_s"], self.device)
        return [list(sample) for sample in samples]


class SpectrumScenario(BaseScenario):
    """Drop and through spectra of the ring, cold or under resonant attack."""

    def simulate(self) -> List[Sequence[object]]:
        center = self.scenario["center_nm"] or self.device.reference_nm
        half_span = self.scenario["span_pm"] * 1e-3 / 2
        wavelengths = np.linspace(center - half_span, center + half_span, self.scenario["points"])
        frequencies = [units.wavelength_to_frequency(w) for w in wavelengths]

        cases = [(-np.inf, 0.0)]
        if self.scenario["powers_dbm"]:
            wavelength = attack_wavelength(self.scenario, self.device)
            cases = []
            for power_dbm in self.scenario["powers_dbm"]:
                state, _ = attacks.solve_attack(units.dbm_to_watts(power_dbm), wavelength, self.device)
                cases.append((power_dbm, state.delta_pr))

        rows = []
        for power_dbm, shift in cases:
            shift_pm = units.shift_to_pm(shift, self.device.reference_nm)
            points = resonator.spectrum(frequencies, self.device.rates, self.device.geometry, shift)
            for wavelength, (frequency, drop, through) in zip(wavelengths, points):
                rows.append([power_dbm, shift_pm, frequency, float(wavelength), drop, through])
        return rows
