"""Deterministic, atomic CSV output."""
import csv
import math
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Sequence, Union

from .constants import CSV_FLOAT_FORMAT, CSV_SCHEMA_VERSION
from .logging import setup_logger

logger = setup_logger(__name__)


def format_value(value: object) -> str:
    """Full-precision scientific notation for numbers; booleans as 0/1."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, float)):
        number = float(value)
        if math.isnan(number):
            return "nan"
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        return CSV_FLOAT_FORMAT.format(number)
    return str(value)


def csv_path(output_dir: Union[str, Path], name: str) -> Path:
    return Path(output_dir) / f"{name}.v{CSV_SCHEMA_VERSION}.csv"


@contextmanager
def atomic_write(target: Path) -> Iterator[Path]:
    """Yield a temporary sibling of ``target`` and rename it into place on success.

    Note:
        The temporary file is removed if the body raises
    """
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    os.close(fd)
    temp_path = Path(temp_name)
    try:
        yield temp_path
        os.replace(temp_path, target)
    finally:
        if temp_path.exists():
            temp_path.unlink()


def write_csv(
    output_dir: Union[str, Path], name: str, columns: Sequence[str], rows: Sequence[Sequence[object]],
) -> Path:
    """Write rows under a header row, atomically.

    Returns:
        Path: The versioned CSV file written
    """
    target = csv_path(output_dir, name)
    with atomic_write(target) as temp_path:
        with temp_path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(value) for value in row])
    logger.info(f"Wrote {len(rows)} rows to {target}")
    return target
