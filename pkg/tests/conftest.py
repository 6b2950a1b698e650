import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "python"))

from optical_fuse_sim import qkd, sources  # noqa: E402
from optical_fuse_sim.cli.inputs import build_run_config  # noqa: E402
from optical_fuse_sim.core.constants import (  # noqa: E402
    ANCHOR_ATTEN_DB_10DBM_PULSED, TARGET_QBER, TARGET_SIFTED_RATE, TARGET_SKR_RATIO,
)
from optical_fuse_sim.impl.scenarios.context import build_device, build_signal  # noqa: E402
from optical_fuse_sim.presets import PULSED_SOURCE  # noqa: E402


@pytest.fixture(scope="session")
def default_config():
    return build_run_config({"scenario": {"kind": "static", "powers_dbm": "0"}}, origin="tests")


@pytest.fixture(scope="session")
def device(default_config):
    """The fuse calibrated to the built-in anchors and response times."""
    return build_device(default_config.device, default_config.photorefractive)


@pytest.fixture(scope="session")
def cw_signal(device):
    return sources.align_to_signal_mode(sources.preset("cw_signal_1550_68"), device.geometry)


@pytest.fixture(scope="session")
def pulsed_signal(device):
    """Gain-switched source with its effective linewidth fitted to the pulsed attenuation."""
    config = build_run_config(
        {"source": PULSED_SOURCE, "scenario": {"kind": "static", "powers_dbm": "0"}}, origin="tests",
    )
    return build_signal(config.source, device)


@pytest.fixture(scope="session")
def channel():
    return qkd.calibrate_channel(TARGET_SIFTED_RATE, TARGET_QBER)


@pytest.fixture(scope="session")
def ratio_channel():
    """Channel whose dark count is solved from the SKR suppression at the pulsed attenuation."""
    return qkd.calibrate_channel(
        TARGET_SIFTED_RATE, TARGET_QBER,
        skr_ratio_target=TARGET_SKR_RATIO, ratio_extra_loss_db=ANCHOR_ATTEN_DB_10DBM_PULSED,
    )
