"""Reading run configuration files.

Run configs are UTF-8 INI files with one section per concern: ``[device]``,
``[photorefractive]``, ``[source]``, ``[channel]``, ``[scenario]`` and ``[output]``.
Units are part of the key name (``fsr_ghz``, ``power_dbm``, ``span_pm``). This module
reads the file and provides the value converters; checking keys against their
schema is the job of the section validators.
"""
import configparser
from pathlib import Path
from typing import Callable, Dict, List, Tuple, Type, Union

from .exceptions import ConfigurationError
from .logging import setup_logger

logger = setup_logger(__name__)

RawConfig = Dict[str, Dict[str, str]]


def read_config(path: Union[str, Path]) -> RawConfig:
    """Read an INI run config into plain string sections.

    Raises:
        ConfigurationError: If the file is missing or not valid INI.
    """
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigurationError([("", f"Config file not found: {config_path}")])

    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    try:
        with config_path.open(encoding="utf-8") as f:
            parser.read_file(f)
    except (configparser.Error, UnicodeDecodeError) as e:
        raise ConfigurationError([("", f"Failed to parse {config_path.name}: {e}")])

    logger.debug(f"Read sections {parser.sections()} from {config_path}")
    return {section: dict(parser[section]) for section in parser.sections()}


def to_float(value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"expected a number, got '{value}'")


def to_positive(value: str) -> float:
    number = to_float(value)
    if number <= 0:
        raise ValueError(f"must be positive, got {number}")
    return number


def to_non_negative(value: str) -> float:
    number = to_float(value)
    if number < 0:
        raise ValueError(f"must be non-negative, got {number}")
    return number


def to_int(value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"expected an integer, got '{value}'")


def to_bool(value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in configparser.ConfigParser.BOOLEAN_STATES:
        return configparser.ConfigParser.BOOLEAN_STATES[lowered]
    raise ValueError(f"expected a boolean, got '{value}'")


def to_path(value: str) -> Path:
    path = Path(value).expanduser()
    if not path.is_file():
        raise ValueError(f"file not found: {path}")
    return path


def to_enum(enum_type: Type) -> Callable[[str], object]:
    def convert(value: str) -> object:
        try:
            return enum_type(value.strip())
        except ValueError:
            choices = ", ".join(member.value for member in enum_type)
            raise ValueError(f"expected one of {choices}, got '{value}'")
    return convert


def to_float_list(value: str) -> List[float]:
    """Comma-separated numbers, or an inclusive ``start:stop:step`` range."""
    text = value.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected start:stop:step, got '{value}'")
        start, stop, step = (to_float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"range '{value}' needs step > 0 and stop >= start")
        count = int(round((stop - start) / step))
        if abs(start + count * step - stop) > 1e-9 * max(1.0, abs(stop)):
            raise ValueError(f"step {step} does not divide [{start}, {stop}]")
        return [start + k * step for k in range(count + 1)]
    items = [item for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("expected at least one number")
    return [to_float(item) for item in items]


def to_intervals(value: str) -> Tuple[Tuple[float, float], ...]:
    """Comma-separated ``on-off`` pairs in seconds, e.g. ``5-65, 80-90``; empty means none."""
    if not value.strip():
        return ()
    intervals = []
    for item in value.split(","):
        bounds = item.strip().split("-")
        if len(bounds) != 2:
            raise ValueError(f"expected on-off pairs, got '{item.strip()}'")
        intervals.append((to_non_negative(bounds[0]), to_non_negative(bounds[1])))
    return tuple(intervals)
