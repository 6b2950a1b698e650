from typing import Dict, Type

from optical_fuse_sim.interfaces.scenario import IScenario
from optical_fuse_sim.impl.scenarios.attack_scenarios import (
    SpectrumScenario, StaticScenario, SweepScenario, TimeseriesScenario,
)
from optical_fuse_sim.impl.scenarios.skr_scenarios import SkrDistanceScenario, SkrPowerScenario
from optical_fuse_sim.core.constants import ScenarioKind
from optical_fuse_sim.core.structs import RunConfig

SCENARIOS: Dict[ScenarioKind, Type[IScenario]] = {
    ScenarioKind.STATIC: StaticScenario,
    ScenarioKind.SWEEP: SweepScenario,
    ScenarioKind.TIMESERIES: TimeseriesScenario,
    ScenarioKind.SKR_POWER: SkrPowerScenario,
    ScenarioKind.SKR_DISTANCE: SkrDistanceScenario,
    ScenarioKind.SPECTRUM: SpectrumScenario,
}


def create_scenario(config: RunConfig) -> IScenario:
    return SCENARIOS[config.kind](config)
