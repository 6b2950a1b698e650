from dataclasses import replace

import numpy as np
import pytest
from scipy.special import gammaln

from optical_fuse_sim import attacks, qkd
from optical_fuse_sim.core import units
from optical_fuse_sim.core.constants import (
    ANCHOR_ATTEN_DB_10DBM_PULSED, TARGET_QBER, TARGET_SIFTED_RATE, TARGET_SKR_RATIO,
)
from optical_fuse_sim.core.exceptions import DomainError, InfeasibleError
from optical_fuse_sim.core.structs import ChannelModel, DecoyParams, GainsErrors

PARAMS = qkd.DEFAULT_DECOY


def synthetic_channel(**overrides) -> ChannelModel:
    values = dict(
        length_km=30.0, fiber_loss_db_per_km=0.2, extra_loss_db=0.0, detector_efficiency=0.1,
        dark_count_prob=2e-6, misalignment_error=0.015, error_correction_efficiency=1.16, sifting_factor=0.5,
    )
    values.update(overrides)
    return ChannelModel(**values)


def test_binary_entropy() -> None:
    assert qkd.binary_entropy(0.0) == 0.0
    assert qkd.binary_entropy(1.0) == 0.0
    assert qkd.binary_entropy(0.5) == 1.0
    for x in (0.01, 0.11, 0.3):
        assert qkd.binary_entropy(x) == pytest.approx(qkd.binary_entropy(1.0 - x), abs=1e-15)


def test_gains_are_ordered() -> None:
    """The vacuum gain is the dark-count yield, and gains grow with intensity"""
    channel = synthetic_channel()
    stats = qkd.gains_and_errors(PARAMS, channel)
    assert stats.gains["o"] == pytest.approx(channel.vacuum_yield, rel=1e-12)
    assert stats.errors["o"] == pytest.approx(0.5)
    assert stats.gains["o"] <= stats.gains["nu"] <= stats.gains["mu"]


def test_bright_lossless_limit() -> None:
    """With η = 1 and no dark counts the error rate tends to the misalignment"""
    channel = synthetic_channel(length_km=0.0, detector_efficiency=1.0, dark_count_prob=0.0)
    stats = qkd.gains_and_errors(DecoyParams(30.0, 20.0, 0.0, 0.8, 0.1, 0.1), channel)
    assert stats.gains["mu"] == pytest.approx(1.0, abs=1e-12)
    assert stats.errors["mu"] == pytest.approx(channel.misalignment_error, rel=1e-9)


def test_ideal_channel_single_photon_yield() -> None:
    """A weak decoy drives the yield bound of a lossless, noiseless channel to one"""
    params = DecoyParams(0.6, 1e-4, 0.0, 0.8, 0.1, 0.1)
    channel = synthetic_channel(length_km=0.0, detector_efficiency=1.0, dark_count_prob=0.0, misalignment_error=0.0)
    bounds = qkd.single_photon_bounds(params, qkd.gains_and_errors(params, channel))
    assert bounds.feasible
    assert bounds.y1_lower == pytest.approx(1.0, abs=1e-3)
    assert bounds.e1_upper == pytest.approx(0.0, abs=1e-9)


def test_degenerate_intensities() -> None:
    with pytest.raises(DomainError):
        DecoyParams(0.6, 0.6, 0.0, 0.8, 0.1, 0.1)
    with pytest.raises(DomainError):
        DecoyParams(0.6, 0.2, 0.0, 0.8, 0.1, 0.2)


def test_decoy_bounds_are_sound() -> None:
    """Against random photon-number channels the bounds never overshoot the true Y₁ and e₁"""
    rng = np.random.default_rng(20240611)
    n = np.arange(51)
    weights = {
        name: np.exp(-lam + n * np.log(lam) - gammaln(n + 1)) if lam > 0 else (n == 0).astype(float)
        for name, lam in qkd.intensities(PARAMS).items()
    }
    for _ in range(10_000):
        yields = rng.uniform(0.0, 1.0, n.size)
        errors = rng.uniform(0.0, 0.5, n.size)
        errors[0] = 0.5
        gains = {name: float(w @ yields) for name, w in weights.items()}
        error_rates = {name: float(w @ (yields * errors)) / gains[name] for name, w in weights.items()}
        bounds = qkd.single_photon_bounds(PARAMS, GainsErrors(gains, error_rates))
        assert bounds.y1_lower <= yields[1] + 1e-12
        assert bounds.e1_upper >= errors[1] - 1e-12


def test_infeasible_statistics_flagged() -> None:
    stats = GainsErrors({"mu": 0.1, "nu": 0.001, "o": 0.05}, {"mu": 0.02, "nu": 0.02, "o": 0.5})
    bounds = qkd.single_photon_bounds(PARAMS, stats)
    assert not bounds.feasible
    assert bounds.y1_lower == 0.0
    assert bounds.e1_upper == 1.0


def test_operating_point_calibration(channel) -> None:
    """The calibrated 30 km channel reproduces the sifted key rate and QBER"""
    report = qkd.skr(PARAMS, channel)
    assert report.sifted_rate_per_pulse == pytest.approx(TARGET_SIFTED_RATE, rel=5e-3)
    assert report.qber == pytest.approx(TARGET_QBER, rel=5e-3)
    assert 0.0 < channel.detector_efficiency < 1.0
    assert 0.0 < channel.misalignment_error < 0.05
    assert report.skr_per_pulse > 0.0
    assert report.skr_bps == pytest.approx(report.skr_per_pulse * 625e6)


def test_calibration_round_trip() -> None:
    truth = synthetic_channel()
    report = qkd.skr(PARAMS, truth)
    fitted = qkd.calibrate_channel(report.sifted_rate_per_pulse, report.qber, dark_count_prior=truth.dark_count_prob)
    assert fitted.detector_efficiency == pytest.approx(truth.detector_efficiency, rel=1e-6)
    assert fitted.misalignment_error == pytest.approx(truth.misalignment_error, rel=1e-6)


def test_impossible_targets() -> None:
    with pytest.raises(InfeasibleError) as excinfo:
        qkd.calibrate_channel(0.5, TARGET_QBER)
    assert "q*p_mu" in excinfo.value.constraint
    with pytest.raises(InfeasibleError):
        qkd.calibrate_channel(TARGET_SIFTED_RATE, TARGET_QBER, dark_count_prior=1e-3)


def test_skr_ratio_from_dark_count_prior(channel) -> None:
    ratio = qkd.skr_ratio(PARAMS, channel, ANCHOR_ATTEN_DB_10DBM_PULSED)
    assert 0.03 < ratio < 0.09


def test_third_target_solves_dark_count(ratio_channel) -> None:
    """The pulsed 10 dBm attenuation leaves 3.9 % of the key rate"""
    assert qkd.skr_ratio(PARAMS, ratio_channel, ANCHOR_ATTEN_DB_10DBM_PULSED) == pytest.approx(TARGET_SKR_RATIO, abs=1e-6)
    report = qkd.skr(PARAMS, ratio_channel)
    assert report.sifted_rate_per_pulse == pytest.approx(TARGET_SIFTED_RATE, rel=5e-3)
    assert report.qber == pytest.approx(TARGET_QBER, rel=5e-3)


def test_high_error_rate_kills_the_key(channel) -> None:
    assert qkd.skr(PARAMS, replace(channel, misalignment_error=0.12)).skr_per_pulse == 0.0


def test_skr_is_monotone_in_impairments() -> None:
    rng = np.random.default_rng(11)
    for _ in range(200):
        base = synthetic_channel(
            length_km=rng.uniform(0, 100), detector_efficiency=rng.uniform(0.05, 0.5),
            dark_count_prob=10 ** rng.uniform(-7, -5), misalignment_error=rng.uniform(0.0, 0.05),
        )
        rate = qkd.skr(PARAMS, base).skr_per_pulse
        worse = (
            replace(base, extra_loss_db=base.extra_loss_db + 1.0),
            replace(base, dark_count_prob=base.dark_count_prob * 1.5),
            replace(base, misalignment_error=base.misalignment_error + 0.005),
        )
        for channel in worse:
            assert qkd.skr(PARAMS, channel).skr_per_pulse <= rate + 1e-18


def test_skr_falls_with_distance(channel) -> None:
    rates = [qkd.skr(PARAMS, replace(channel, length_km=d)).skr_per_pulse for d in range(0, 260, 10)]
    positive = [r for r in rates if r > 0]
    assert all(a > b for a, b in zip(positive, positive[1:]))
    assert rates[-1] == 0.0


def test_empty_power_list(device, pulsed_signal, channel) -> None:
    assert qkd.skr_vs_attack([], pulsed_signal, device, channel) == []


def test_skr_under_attack(device, pulsed_signal, ratio_channel) -> None:
    """Weak attacks leave the key rate alone; 10 dBm cuts it to 3.9 %"""
    points = qkd.skr_vs_attack(
        [units.dbm_to_watts(-30.0), units.dbm_to_watts(10.0)], pulsed_signal, device, ratio_channel,
    )
    ratios = qkd.suppression_ratios(points, PARAMS, ratio_channel)
    assert ratios[0] > 0.99
    assert ratios[1] == pytest.approx(TARGET_SKR_RATIO, abs=1e-3)
    assert points[1].atten_db == pytest.approx(ANCHOR_ATTEN_DB_10DBM_PULSED, abs=1e-3)


def test_skr_onset(device, pulsed_signal, ratio_channel) -> None:
    powers_dbm = list(range(-30, -9))
    points = qkd.skr_vs_attack([units.dbm_to_watts(p) for p in powers_dbm], pulsed_signal, device, ratio_channel)
    onset = attacks.onset_power(powers_dbm, qkd.suppression_ratios(points, PARAMS, ratio_channel))
    assert onset is not None
    assert -25 <= onset <= -15


def test_suppression_deepens_with_distance(device, pulsed_signal, channel) -> None:
    """Long links lose proportionally more key to the same attack"""
    points = qkd.skr_vs_distance(list(range(0, 130, 10)), [1e-3], pulsed_signal, device, channel)
    ratios = qkd.suppression_ratios(points, PARAMS, channel)
    assert all(b <= a + 1e-9 for a, b in zip(ratios, ratios[1:]))
    assert ratios[0] < 1.0
