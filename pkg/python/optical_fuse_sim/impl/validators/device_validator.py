from typing import List, Tuple

from optical_fuse_sim.impl.validators.section_validator import SectionValidator
from optical_fuse_sim.core.config import to_enum, to_float_list, to_int, to_positive
from optical_fuse_sim.core.constants import (
    SplitPolicy, ATTACK_RESONANCE_NM, DEFAULT_DT_S, FSR_HZ, Q_LOADED, SIGNAL_MODE_OFFSET,
)
from optical_fuse_sim.core.structs import KeySpec


class DeviceValidator(SectionValidator):
    """Validates the ring geometry and coupling split."""

    SECTION = "device"
    NAME = "Device Validation"
    KEYS = {
        "q_loaded": KeySpec(to_positive, Q_LOADED),
        "fsr_ghz": KeySpec(to_positive, FSR_HZ / 1e9),
        "resonance_nm": KeySpec(to_positive, ATTACK_RESONANCE_NM),
        "signal_mode_offset": KeySpec(to_int, SIGNAL_MODE_OFFSET),
        "split_policy": KeySpec(to_enum(SplitPolicy), SplitPolicy.EQUAL_THIRDS),
        "split_fractions": KeySpec(to_float_list, None),
        "dt_s": KeySpec(to_positive, DEFAULT_DT_S),
    }

    def check(self) -> List[Tuple[str, str]]:
        fractions = self.values["split_fractions"]
        if self.values["split_policy"] is SplitPolicy.CUSTOM:
            if fractions is None or len(fractions) != 3:
                return [(self.key_path("split_fractions"), "custom split needs three fractions")]
            if min(fractions) < 0 or abs(sum(fractions) - 1.0) > 1e-9:
                return [(self.key_path("split_fractions"), f"fractions must be non-negative and sum to 1: {fractions}")]
        elif fractions is not None:
            self.warnings.append("split_fractions ignored with the equal_thirds split policy")
        return []
