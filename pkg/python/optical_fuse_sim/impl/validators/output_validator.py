import os
from pathlib import Path
from typing import List, Tuple

from optical_fuse_sim.impl.validators.section_validator import SectionValidator
from optical_fuse_sim.core.config import to_int
from optical_fuse_sim.core.constants import ENV
from optical_fuse_sim.core.structs import KeySpec


class OutputValidator(SectionValidator):
    """Validates where results go; the environment may override the directory."""

    SECTION = "output"
    NAME = "Output Validation"
    KEYS = {
        "dir": KeySpec(lambda value: Path(value.strip()).expanduser(), Path("out")),
        "name": KeySpec(str.strip, None),
        "workers": KeySpec(to_int, 1),
    }

    def check(self) -> List[Tuple[str, str]]:
        override = os.environ.get(ENV.OUTPUT_DIR)
        if override:
            self.values["dir"] = Path(override).expanduser()
            self.warnings.append(f"Output directory taken from {ENV.OUTPUT_DIR}: {override}")
        directory = self.values["dir"]
        if directory.exists() and not directory.is_dir():
            return [(self.key_path("dir"), f"not a directory: {directory}")]
        if self.values["workers"] < 1:
            return [(self.key_path("workers"), "must be at least 1")]
        return []
