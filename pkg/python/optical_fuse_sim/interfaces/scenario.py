from abc import ABC, abstractmethod
from typing import List, Sequence

from optical_fuse_sim.core.structs import RunConfig


class IScenario(ABC):
    """Interface for scenario runners defining the simulation lifecycle."""

    @property
    @abstractmethod
    def run_config(self) -> RunConfig:
        """Get the run configuration."""
        pass

    @property
    @abstractmethod
    def columns(self) -> List[str]:
        """CSV header for this scenario's rows."""
        pass

    @abstractmethod
    def setup(self) -> None:
        """Build the calibrated device, sources and channel."""
        pass

    @abstractmethod
    def simulate(self) -> List[Sequence[object]]:
        """Run the scenario and return its rows."""
        pass

    @abstractmethod
    def run(self) -> List[Sequence[object]]:
        """Execute setup and simulation in order."""
        pass
