from typing import List, Tuple

from optical_fuse_sim.impl.validators.section_validator import SectionValidator
from optical_fuse_sim.core.config import to_non_negative, to_positive
from optical_fuse_sim.core.constants import (
    DARK_COUNT_PRIOR, DECOY_MU, DECOY_NU, DECOY_O, DECOY_P_MU, DECOY_P_NU, DECOY_P_O,
    ERROR_CORRECTION_EFFICIENCY, FIBER_LOSS_DB_PER_KM, OPERATING_LENGTH_KM, REP_RATE_HZ,
    SIFTING_FACTOR, TARGET_QBER, TARGET_SIFTED_RATE,
)
from optical_fuse_sim.core.exceptions import DomainError
from optical_fuse_sim.core.structs import DecoyParams, KeySpec


class ChannelValidator(SectionValidator):
    """Validates the QKD operating point the channel is calibrated to, and the decoy settings."""

    SECTION = "channel"
    NAME = "Channel Validation"
    KEYS = {
        "length_km": KeySpec(to_non_negative, OPERATING_LENGTH_KM),
        "fiber_loss_db_per_km": KeySpec(to_non_negative, FIBER_LOSS_DB_PER_KM),
        "sifted_rate": KeySpec(to_positive, TARGET_SIFTED_RATE),
        "qber": KeySpec(to_positive, TARGET_QBER),
        "dark_count_prior": KeySpec(to_positive, DARK_COUNT_PRIOR),
        "error_correction_efficiency": KeySpec(to_positive, ERROR_CORRECTION_EFFICIENCY),
        "sifting_factor": KeySpec(to_positive, SIFTING_FACTOR),
        "rep_rate_mhz": KeySpec(to_positive, REP_RATE_HZ / 1e6),
        "skr_ratio_target": KeySpec(to_positive, None),
        "ratio_extra_loss_db": KeySpec(to_positive, None),
        "mu": KeySpec(to_non_negative, DECOY_MU),
        "nu": KeySpec(to_non_negative, DECOY_NU),
        "o": KeySpec(to_non_negative, DECOY_O),
        "p_mu": KeySpec(to_positive, DECOY_P_MU),
        "p_nu": KeySpec(to_positive, DECOY_P_NU),
        "p_o": KeySpec(to_positive, DECOY_P_O),
    }

    def check(self) -> List[Tuple[str, str]]:
        errors = []
        if (self.values["skr_ratio_target"] is None) != (self.values["ratio_extra_loss_db"] is None):
            errors.append((self.key_path("ratio_extra_loss_db"), "skr_ratio_target and ratio_extra_loss_db go together"))
        if self.values["error_correction_efficiency"] < 1:
            errors.append((self.key_path("error_correction_efficiency"), "must be >= 1"))
        if self.values["qber"] >= 0.5:
            errors.append((self.key_path("qber"), "must be below 0.5"))
        if self.values["sifting_factor"] > 1:
            errors.append((self.key_path("sifting_factor"), "must not exceed 1"))
        try:
            DecoyParams(*(self.values[k] for k in ("mu", "nu", "o", "p_mu", "p_nu", "p_o")))
        except DomainError as e:
            errors.append((self.key_path("mu"), str(e)))
        return errors
