from typing import List, Optional, Sequence

from optical_fuse_sim.interfaces.scenario import IScenario
from optical_fuse_sim.impl.scenarios.context import build_device, build_signal
from optical_fuse_sim.core.constants import CSV_COLUMNS
from optical_fuse_sim.core.logging import setup_logger
from optical_fuse_sim.core.structs import FuseDevice, RunConfig, SourceSpectrum

logger = setup_logger(__name__)


class BaseScenario(IScenario):
    """Shared lifecycle: build the calibrated device and signal, then simulate."""

    def __init__(self, config: RunConfig):
        self._config = config
        self.device: Optional[FuseDevice] = None
        self.signal: Optional[SourceSpectrum] = None

    @property
    def run_config(self) -> RunConfig:
        """Get the run configuration."""
        return self._config

    @property
    def columns(self) -> List[str]:
        return CSV_COLUMNS[self.run_config.kind.value]

    @property
    def scenario(self) -> dict:
        return self.run_config.scenario

    def setup(self) -> None:
        """Calibrate the device and build the signal source."""
        self.device = build_device(self.run_config.device, self.run_config.photorefractive)
        self.signal = build_signal(self.run_config.source, self.device)

    def run(self) -> List[Sequence[object]]:
        """Execute setup and simulation in order."""
        logger.info(f"Running {self.run_config.kind.value} scenario '{self.run_config.name}'")
        self.setup()
        rows = self.simulate()
        logger.info(f"Scenario '{self.run_config.name}' produced {len(rows)} rows")
        return rows
