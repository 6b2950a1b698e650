"""CLI for running optical fuse scenarios and writing their CSV results."""
from __future__ import absolute_import, unicode_literals
import argparse
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from optical_fuse_sim.core.constants import EXIT_CODES
from optical_fuse_sim.core.exceptions import (
    CalibrationError, ConfigurationError, ConvergenceError, DomainError, FuseSimError,
    InfeasibleError, QuadratureError, ValidationError,
)
from optical_fuse_sim.core.filesystem import write_csv
from optical_fuse_sim.core.logging import set_verbosity, setup_logger
from optical_fuse_sim.core.structs import RunConfig
from optical_fuse_sim.cli.inputs import build_run_config, parse_config
from optical_fuse_sim.impl.scenarios import create_scenario
from optical_fuse_sim.presets import preset_names, preset_raw

logger = setup_logger(__name__, stream=sys.stderr)


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description='Simulate a photorefractive optical fuse protecting a QKD transmitter')
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        '--config', '-c',
        type=Path,
        help='Path to an INI run config'
    )
    source.add_argument(
        '--preset', '-p',
        choices=preset_names(),
        help='Built-in measurement preset'
    )
    parser.add_argument(
        '--out', '-o',
        type=Path,
        help='Output directory (overrides the config and the environment)'
    )
    parser.add_argument(
        '--workers', '-w',
        type=int,
        help='Worker processes for sweeps'
    )
    parser.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Enable verbose logging'
    )
    return parser.parse_args(argv)


def load_run_config(args: argparse.Namespace) -> RunConfig:
    if args.config is not None:
        config = parse_config(args.config)
    else:
        config = build_run_config(preset_raw(args.preset), origin=args.preset)
    if args.out is not None:
        config.output_dir = args.out
    if args.workers is not None:
        config.workers = args.workers
    return config


def run(config: RunConfig) -> Path:
    """Run the configured scenario and write its CSV."""
    scenario = create_scenario(config)
    rows = scenario.run()
    return write_csv(config.output_dir, config.name, scenario.columns, rows)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    if args.verbose:
        set_verbosity("DEBUG")
    try:
        config = load_run_config(args)
        path = run(config)
        logger.info(f"✓ Results written to {path}")
        return EXIT_CODES.SUCCESS

    except (ConfigurationError, ValidationError, DomainError) as e:
        logger.error(f"✗ {e}")
        return EXIT_CODES.VALIDATION
    except (ConvergenceError, QuadratureError, InfeasibleError, CalibrationError) as e:
        logger.error(f"✗ Numerical failure: {e}")
        return EXIT_CODES.NUMERICAL
    except FuseSimError as e:
        logger.error(f"✗ {e}")
        if args.verbose:
            logger.debug(traceback.format_exc())
        return EXIT_CODES.FAILURE


if __name__ == '__main__':
    sys.exit(main())
