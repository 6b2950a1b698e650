from typing import Dict, List, Tuple

from optical_fuse_sim.impl.validators.section_validator import SectionValidator
from optical_fuse_sim.core.config import (
    to_enum, to_float, to_float_list, to_int, to_intervals, to_non_negative, to_positive,
)
from optical_fuse_sim.core.constants import ScenarioKind
from optical_fuse_sim.core.structs import KeySpec, ValidationResult

KIND = KeySpec(to_enum(ScenarioKind), required=True)

SCENARIO_KEYS: Dict[ScenarioKind, Dict[str, KeySpec]] = {
    ScenarioKind.STATIC: {
        "wavelength_nm": KeySpec(to_positive, None),
        "powers_dbm": KeySpec(to_float_list, required=True),
    },
    ScenarioKind.SWEEP: {
        "center_nm": KeySpec(to_positive, None),
        "span_pm": KeySpec(to_positive, required=True),
        "step_pm": KeySpec(to_positive, required=True),
        "tx_dbm": KeySpec(to_float, required=True),
    },
    ScenarioKind.TIMESERIES: {
        "wavelength_nm": KeySpec(to_positive, None),
        "power_dbm": KeySpec(to_float, required=True),
        "schedule_s": KeySpec(to_intervals, required=True),
        "duration_s": KeySpec(to_positive, required=True),
        "dt_s": KeySpec(to_positive, None),
    },
    ScenarioKind.SKR_POWER: {
        "wavelength_nm": KeySpec(to_positive, None),
        "powers_dbm": KeySpec(to_float_list, required=True),
        "distance_km": KeySpec(to_non_negative, None),
    },
    ScenarioKind.SKR_DISTANCE: {
        "wavelength_nm": KeySpec(to_positive, None),
        "powers_dbm": KeySpec(to_float_list, required=True),
        "distances_km": KeySpec(to_float_list, required=True),
    },
    ScenarioKind.SPECTRUM: {
        "center_nm": KeySpec(to_positive, None),
        "span_pm": KeySpec(to_positive, 400.0),
        "points": KeySpec(to_int, 2001),
        "wavelength_nm": KeySpec(to_positive, None),
        "powers_dbm": KeySpec(to_float_list, None),
    },
}


class ScenarioValidator(SectionValidator):
    """Validates the single scenario a run executes; its keys depend on ``kind``."""

    SECTION = "scenario"
    NAME = "Scenario Validation"

    def keys(self) -> Dict[str, KeySpec]:
        kind = self.values.get("kind")
        return {"kind": KIND, **SCENARIO_KEYS.get(kind, {})}

    def validate(self) -> ValidationResult:
        if self.SECTION not in self.raw:
            return ValidationResult(
                name=self.NAME,
                success=False,
                errors=[(self.SECTION, "missing [scenario] section; exactly one scenario is required")],
                warnings=[],
            )
        try:
            self.values["kind"] = KIND.convert(self.raw[self.SECTION].get("kind", ""))
        except ValueError as e:
            return ValidationResult(name=self.NAME, success=False, errors=[(self.key_path("kind"), str(e))], warnings=[])
        return super().validate()

    def check(self) -> List[Tuple[str, str]]:
        kind = self.values["kind"]
        errors = []
        if kind is ScenarioKind.SWEEP:
            ratio = self.values["span_pm"] / self.values["step_pm"]
            if abs(ratio - round(ratio)) > 1e-9:
                errors.append((self.key_path("step_pm"), "must divide span_pm"))
        if kind is ScenarioKind.TIMESERIES:
            previous_end = 0.0
            for t_on, t_off in self.values["schedule_s"]:
                if not t_on < t_off or t_on < previous_end:
                    errors.append((self.key_path("schedule_s"), "intervals must be ordered and disjoint"))
                    break
                previous_end = t_off
            if self.values["duration_s"] < previous_end:
                errors.append((self.key_path("duration_s"), f"must cover the schedule end {previous_end} s"))
        if kind is ScenarioKind.SPECTRUM and self.values["points"] < 2:
            errors.append((self.key_path("points"), "needs at least 2 points"))
        return errors
