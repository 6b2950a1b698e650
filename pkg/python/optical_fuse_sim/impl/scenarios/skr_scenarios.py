"""Scenarios that carry the fuse attenuation into the QKD key rate."""
from dataclasses import replace
from typing import List, Optional, Sequence

from optical_fuse_sim import attacks, qkd
from optical_fuse_sim.impl.scenarios.base_scenario import BaseScenario
from optical_fuse_sim.impl.scenarios.context import attack_wavelength, build_channel
from optical_fuse_sim.core.structs import ChannelModel, DecoyParams
from optical_fuse_sim.core.logging import setup_logger
from optical_fuse_sim.core import units

logger = setup_logger(__name__)


class SkrScenario(BaseScenario):
    """Adds the calibrated channel to the device and signal."""

    def __init__(self, config):
        super().__init__(config)
        self.channel: Optional[ChannelModel] = None
        self.params: Optional[DecoyParams] = None

    def setup(self) -> None:
        super().setup()
        self.channel, self.params = build_channel(self.run_config.channel)

    def powers_w(self) -> List[float]:
        return [units.dbm_to_watts(p) for p in self.scenario["powers_dbm"]]


class SkrPowerScenario(SkrScenario):
    """SKR against attack power at one distance, with the ratio to the unattacked rate."""

    def simulate(self) -> List[Sequence[object]]:
        distance = self.scenario["distance_km"]
        channel = self.channel if distance is None else replace(self.channel, length_km=distance)
        points = qkd.skr_vs_attack(
            self.powers_w(), self.signal, self.device, channel, self.params,
            attack_wavelength(self.scenario, self.device),
        )
        ratios = qkd.suppression_ratios(points, self.params, channel)
        onset = attacks.onset_power(self.scenario["powers_dbm"], ratios)
        if onset is not None:
            logger.info(f"SKR falls below its onset threshold at {onset:.1f} dBm")
        return [
            [p.distance_km, power_dbm, p.atten_db, p.report.skr_per_pulse, p.report.skr_bps, p.report.qber, float(ratio)]
            for p, power_dbm, ratio in zip(points, self.scenario["powers_dbm"], ratios)
        ]


class SkrDistanceScenario(SkrScenario):
    """SKR over distance for each attack power."""

    def simulate(self) -> List[Sequence[object]]:
        powers_dbm = self.scenario["powers_dbm"]
        points = qkd.skr_vs_distance(
            self.scenario["distances_km"], self.powers_w(), self.signal, self.device, self.channel, self.params,
            attack_wavelength(self.scenario, self.device),
        )
        rows = []
        for index, p in enumerate(points):
            power_dbm = powers_dbm[index % len(powers_dbm)]
            rows.append([p.distance_km, power_dbm, p.atten_db, p.report.skr_per_pulse, p.report.skr_bps, p.report.qber])
        return rows
