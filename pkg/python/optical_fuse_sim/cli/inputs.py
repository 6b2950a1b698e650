"""Turning raw config sections (from a file or a preset) into a validated RunConfig.

Every section validator runs, and all problems are collected before failing, so a
broken config reports everything wrong with it at once.
"""
from pathlib import Path
from typing import List, Tuple, Union

from optical_fuse_sim.core.config import RawConfig, read_config
from optical_fuse_sim.core.exceptions import ConfigurationError
from optical_fuse_sim.core.logging import setup_logger
from optical_fuse_sim.core.structs import RunConfig
from optical_fuse_sim.impl.validators.channel_validator import ChannelValidator
from optical_fuse_sim.impl.validators.device_validator import DeviceValidator
from optical_fuse_sim.impl.validators.output_validator import OutputValidator
from optical_fuse_sim.impl.validators.photorefractive_validator import PhotorefractiveValidator
from optical_fuse_sim.impl.validators.scenario_validator import ScenarioValidator
from optical_fuse_sim.impl.validators.source_validator import SourceValidator

logger = setup_logger(__name__)

SECTIONS = ("device", "photorefractive", "source", "channel", "scenario", "output")


def build_run_config(raw: RawConfig, origin: str = "config") -> RunConfig:
    """Validate raw sections and assemble the run configuration.

    Args:
        raw: Section name to {key: string value}
        origin: Label used in log messages (file name or preset name)

    Returns:
        RunConfig: Fully converted configuration

    Raises:
        ConfigurationError: With every (key_path, message) problem found
    """
    errors: List[Tuple[str, str]] = [
        (section, f"unknown section, expected one of {', '.join(SECTIONS)}")
        for section in raw if section not in SECTIONS
    ]
    validators = {
        "device": DeviceValidator(raw),
        "photorefractive": PhotorefractiveValidator(raw),
        "source": SourceValidator(raw),
        "channel": ChannelValidator(raw),
        "scenario": ScenarioValidator(raw),
        "output": OutputValidator(raw),
    }

    for validator in validators.values():
        result = validator.validate()
        if not result.success:
            logger.debug(f"{result.name} failed for {origin}")
            errors.extend(result.errors)
        else:
            logger.debug(f"✓ {result.name} passed")
        for warning in result.warnings:
            logger.warning(f"  ! {warning}")

    if errors:
        raise ConfigurationError(errors)

    scenario = dict(validators["scenario"].values)
    output = validators["output"].values
    kind = scenario.pop("kind")
    return RunConfig(
        device=validators["device"].values,
        photorefractive=validators["photorefractive"].values,
        source=validators["source"].values,
        channel=validators["channel"].values,
        scenario=scenario,
        kind=kind,
        output_dir=output["dir"],
        name=output["name"] or origin,
        workers=output["workers"],
    )


def parse_config(path: Union[str, Path]) -> RunConfig:
    """Read and validate an INI run config.

    Raises:
        ConfigurationError: If the file cannot be read or any key is invalid
    """
    config_path = Path(path)
    logger.info(f"Reading run config {config_path}")
    return build_run_config(read_config(config_path), origin=config_path.stem)
