from typing import List, Tuple

from optical_fuse_sim.impl.validators.section_validator import SectionValidator
from optical_fuse_sim.core.config import to_bool, to_path, to_positive
from optical_fuse_sim.core.constants import (
    ANCHOR_ATTEN_DB_10DBM_CW, ANCHOR_SHIFT_PM_0DBM, FALL_TIME_90_S, RISE_TIME_90_S,
)
from optical_fuse_sim.core.structs import KeySpec


class PhotorefractiveValidator(SectionValidator):
    """Validates the PR law: an explicit model, an anchors file, or the built-in anchors."""

    SECTION = "photorefractive"
    NAME = "Photorefractive Model Validation"
    KEYS = {
        "anchors_file": KeySpec(to_path, None),
        "shift_pm_0dbm": KeySpec(to_positive, ANCHOR_SHIFT_PM_0DBM),
        "atten_db_10dbm_cw": KeySpec(to_positive, ANCHOR_ATTEN_DB_10DBM_CW),
        "gamma": KeySpec(to_positive, 1.0),
        "delta_max_ghz": KeySpec(to_positive, None),
        "p_ref_mw": KeySpec(to_positive, None),
        "tau_rise_s": KeySpec(to_positive, None),
        "tau_fall_s": KeySpec(to_positive, None),
        "calibrate_dynamics": KeySpec(to_bool, True),
        "rise_time_s": KeySpec(to_positive, RISE_TIME_90_S),
        "fall_time_s": KeySpec(to_positive, FALL_TIME_90_S),
    }

    def check(self) -> List[Tuple[str, str]]:
        errors = []
        explicit = [self.values["delta_max_ghz"] is not None, self.values["p_ref_mw"] is not None]
        if any(explicit) and not all(explicit):
            errors.append((self.key_path("p_ref_mw"), "delta_max_ghz and p_ref_mw must be set together"))
        if all(explicit) and self.values["anchors_file"] is not None:
            errors.append((self.key_path("anchors_file"), "conflicts with an explicit delta_max_ghz/p_ref_mw model"))
        if all(explicit) and self.values["calibrate_dynamics"] and (
            self.values["tau_rise_s"] is not None or self.values["tau_fall_s"] is not None
        ):
            self.warnings.append("tau_rise_s/tau_fall_s are replaced when calibrate_dynamics is on")
        return errors
