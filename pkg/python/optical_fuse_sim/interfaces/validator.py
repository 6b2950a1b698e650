from abc import ABC, abstractmethod
from typing import Any, Dict

from optical_fuse_sim.core.config import RawConfig
from optical_fuse_sim.core.structs import ValidationResult


class IValidator(ABC):
    """Interface for run configuration section validators."""

    def __init__(self, raw: RawConfig):
        """Initialize validator with the raw config sections.

        Args:
            raw: Section name to {key: string value}, as read from the INI file
        """
        self.raw = raw
        self.values: Dict[str, Any] = {}

    @abstractmethod
    def validate(self) -> ValidationResult:
        """Check and convert this validator's section.

        Converted values are left in ``self.values``.

        Returns:
            ValidationResult containing validation status and any errors/warnings
        """
        pass
