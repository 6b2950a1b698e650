from typing import Dict, List, Tuple

from optical_fuse_sim.interfaces.validator import IValidator
from optical_fuse_sim.core.constants import UNIT_SUFFIXES
from optical_fuse_sim.core.structs import KeySpec, ValidationResult


class SectionValidator(IValidator):
    """Checks one config section against a key schema and converts its values."""

    SECTION = ""
    NAME = ""
    KEYS: Dict[str, KeySpec] = {}

    def keys(self) -> Dict[str, KeySpec]:
        return self.KEYS

    def key_path(self, key: str) -> str:
        return f"{self.SECTION}.{key}"

    def check(self) -> List[Tuple[str, str]]:
        """Cross-key checks, run once every key converted."""
        return []

    def unknown_key_message(self, key: str, keys: Dict[str, KeySpec]) -> str:
        stem, _, suffix = key.rpartition("_")
        # Same quantity under a different unit suffix
        matches = [k for k in keys if stem and k.rpartition("_")[0] == stem]
        if suffix in UNIT_SUFFIXES and matches:
            return f"unit mismatch, expected '{matches[0]}'"
        return f"unknown key, expected one of {', '.join(sorted(keys))}"

    def validate(self) -> ValidationResult:
        """Convert every key of the section, collecting all problems.

        Returns:
            ValidationResult: Contains validation status and any errors
        """
        errors: List[Tuple[str, str]] = []
        self.warnings: List[str] = []
        section = self.raw.get(self.SECTION, {})
        keys = self.keys()

        for key in section:
            if key not in keys:
                errors.append((self.key_path(key), self.unknown_key_message(key, keys)))

        for key, spec in keys.items():
            if key not in section:
                if spec.required:
                    errors.append((self.key_path(key), "required key missing"))
                self.values[key] = spec.default
                continue
            try:
                self.values[key] = spec.convert(section[key])
            except ValueError as e:
                errors.append((self.key_path(key), str(e)))

        if not errors:
            errors.extend(self.check())

        return ValidationResult(
            name=self.NAME,
            success=len(errors) == 0,
            errors=errors,
            warnings=self.warnings,
        )
