from typing import List, Tuple

from optical_fuse_sim.impl.validators.section_validator import SectionValidator
from optical_fuse_sim.core.config import to_enum, to_float, to_non_negative, to_positive
from optical_fuse_sim.core.constants import LineShape, ANCHOR_ATTEN_DB_10DBM_CW
from optical_fuse_sim.core.structs import KeySpec
from optical_fuse_sim.sources import PRESETS


class SourceValidator(SectionValidator):
    """Validates the signal source: a named preset or an explicit line."""

    SECTION = "source"
    NAME = "Source Validation"
    KEYS = {
        "preset": KeySpec(str.strip, "cw_signal_1550_68"),
        "center_nm": KeySpec(to_positive, None),
        "fwhm_ghz": KeySpec(to_non_negative, None),
        "shape": KeySpec(to_enum(LineShape), None),
        "fit_atten_db": KeySpec(to_positive, None),
        "fit_power_dbm": KeySpec(to_float, 10.0),
    }

    def check(self) -> List[Tuple[str, str]]:
        errors = []
        section = self.raw.get(self.SECTION, {})
        if "preset" in section and "center_nm" in section:
            errors.append((self.key_path("center_nm"), "conflicts with 'preset'; give one or the other"))
        if self.values["preset"] not in PRESETS or self.values["preset"] == "tunable_attack":
            errors.append((self.key_path("preset"), f"unknown signal preset '{self.values['preset']}'"))
        fwhm, shape = self.values["fwhm_ghz"], self.values["shape"]
        if fwhm is not None and shape is not None and (fwhm == 0) != (shape is LineShape.DELTA):
            errors.append((self.key_path("shape"), "a delta line needs fwhm_ghz = 0 and vice versa"))
        fit = self.values["fit_atten_db"]
        if fit is not None and fit >= ANCHOR_ATTEN_DB_10DBM_CW * 2:
            self.warnings.append(f"fit_atten_db {fit} dB is unusually large for a pulsed source")
        return errors
