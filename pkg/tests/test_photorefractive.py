import pytest

from optical_fuse_sim import attacks, photorefractive
from optical_fuse_sim.core import units
from optical_fuse_sim.core.constants import AnchorKind, ANCHOR_ATTEN_DB_10DBM_CW, ANCHOR_SHIFT_PM_0DBM
from optical_fuse_sim.core.exceptions import DomainError, ValidationError
from optical_fuse_sim.core.structs import CalibrationAnchor, PrModel, PrState


def resonant_omega(device) -> float:
    return attacks.attack_omega(device.reference_nm)


def test_target_shift_saturates(device) -> None:
    """The law is zero without light, increasing, and bounded by delta_max"""
    model = device.model
    assert photorefractive.target_shift(0.0, model) == 0.0
    shifts = [photorefractive.target_shift(p, model) for p in (1e-6, 1e-4, 1e-2, 1.0, 1e3)]
    assert all(a < b for a, b in zip(shifts, shifts[1:]))
    assert shifts[-1] < model.delta_max
    assert shifts[-1] == pytest.approx(model.delta_max, rel=1e-3)
    with pytest.raises(DomainError):
        photorefractive.target_shift(-1.0, model)


def test_shift_anchor_reproduced(device) -> None:
    """A 0 dBm resonant attack blue-shifts the resonance by 34.5 pm"""
    state = photorefractive.steady_state(
        units.dbm_to_watts(0.0), resonant_omega(device), device.model, device.rates, device.geometry,
    )
    assert units.shift_to_pm(state.delta_pr, device.reference_nm) == pytest.approx(ANCHOR_SHIFT_PM_0DBM, rel=1e-3)
    assert state.converged


def test_cw_attenuation_anchor_reproduced(device, cw_signal) -> None:
    """A 10 dBm resonant attack attenuates a CW signal by 14.02 dB"""
    state, _ = attacks.solve_attack(units.dbm_to_watts(10.0), device.reference_nm, device)
    atten = attacks.signal_attenuation(cw_signal, state.delta_pr, device)
    assert atten == pytest.approx(ANCHOR_ATTEN_DB_10DBM_CW, abs=0.02)


def test_calibration_quality(device) -> None:
    assert device.model.quality_warning == ""
    assert len(device.model.residuals) == 2
    assert all(abs(r) < 0.05 for r in device.model.residuals)


def test_no_power_no_shift(device) -> None:
    state = photorefractive.steady_state(0.0, resonant_omega(device), device.model, device.rates, device.geometry)
    assert state.delta_pr == 0.0
    with pytest.raises(DomainError):
        photorefractive.steady_state(-1e-3, resonant_omega(device), device.model, device.rates, device.geometry)


def test_forward_integration_matches_fixed_point(device) -> None:
    """Away from a fold both solution methods land on the same shift"""
    for power_dbm in (-20.0, 0.0, 10.0):
        state = photorefractive.steady_state(
            units.dbm_to_watts(power_dbm), resonant_omega(device), device.model, device.rates, device.geometry,
        )
        assert state.fixed_point_gap < 1e-5


def test_step_relaxes_toward_target(device) -> None:
    model = device.model
    state = PrState(0.0)
    for _ in range(20):
        state = photorefractive.step(
            state, units.dbm_to_watts(10.0), resonant_omega(device), device.dt, model, device.rates, device.geometry,
        )
    assert 0.0 < state.delta_pr < model.delta_max
    assert state.t == pytest.approx(20 * device.dt)


def test_step_size_limited_by_tau(device) -> None:
    with pytest.raises(ValidationError):
        photorefractive.step(
            PrState(0.0), 1e-3, resonant_omega(device), device.model.tau_rise,
            device.model, device.rates, device.geometry,
        )


def test_calibration_needs_two_powers(device) -> None:
    anchors = [CalibrationAnchor(1e-3, AnchorKind.SHIFT_PM, 34.5), CalibrationAnchor(1e-3, AnchorKind.SHIFT_PM, 30.0)]
    with pytest.raises(ValidationError):
        photorefractive.calibrate(anchors, device.rates, device.geometry)


def test_three_anchors_fit_gamma(device) -> None:
    """Shifts generated from a known law are fitted back, exponent included"""
    truth = PrModel(device.model.delta_max, device.model.p_ref, 1.5, device.model.tau_rise, device.model.tau_fall)
    anchors = []
    for power_dbm in (-10.0, 0.0, 10.0):
        power = units.dbm_to_watts(power_dbm)
        state = photorefractive.steady_state(power, resonant_omega(device), truth, device.rates, device.geometry)
        anchors.append(CalibrationAnchor(power, AnchorKind.SHIFT_PM, units.shift_to_pm(state.delta_pr, device.reference_nm)))

    fitted = photorefractive.calibrate(anchors, device.rates, device.geometry, reference_nm=device.reference_nm)
    assert fitted.gamma == pytest.approx(1.5, rel=1e-3)
    assert fitted.delta_max == pytest.approx(truth.delta_max, rel=1e-3)
    assert fitted.p_ref == pytest.approx(truth.p_ref, rel=1e-3)


def test_two_anchors_hold_gamma(device) -> None:
    assert device.model.gamma == 1.0


def test_dynamics_calibrated(device) -> None:
    """Refined time constants stay on the order of the measured response"""
    assert 0.1 < device.model.tau_rise < 10.0
    assert 0.1 < device.model.tau_fall < 10.0


def test_load_anchors(tmp_path) -> None:
    path = tmp_path / "anchors.csv"
    path.write_text(
        "power_dbm,kind,value,wavelength_nm\n"
        "0,shift_pm,34.5,\n"
        "10,atten_db_cw,14.02,\n"
        "5,atten_db_cw,1.04,1548.091\n",
        encoding="utf-8",
    )
    anchors = photorefractive.load_anchors(path)
    assert [a.kind for a in anchors] == [AnchorKind.SHIFT_PM, AnchorKind.ATTEN_DB_CW, AnchorKind.ATTEN_DB_CW]
    assert anchors[0].on_chip_attack_power == pytest.approx(1e-3)
    assert anchors[0].wavelength_nm == pytest.approx(1548.292)
    assert anchors[2].wavelength_nm == pytest.approx(1548.091)


def test_load_anchors_rejects_bad_files(tmp_path) -> None:
    missing = tmp_path / "missing.csv"
    missing.write_text("power_dbm,value\n0,34.5\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        photorefractive.load_anchors(missing)

    bad_kind = tmp_path / "bad.csv"
    bad_kind.write_text("power_dbm,kind,value\n0,shift_nm,34.5\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        photorefractive.load_anchors(bad_kind)


def test_signal_power_limit() -> None:
    assert photorefractive.check_signal_power(1e-7)
    assert not photorefractive.check_signal_power(1e-5)


def test_steady_shift_is_monotone_in_power(device) -> None:
    omega = resonant_omega(device)
    shifts = [
        photorefractive.steady_state(
            units.dbm_to_watts(-30.0 + 0.5 * k), omega, device.model, device.rates, device.geometry,
        ).delta_pr
        for k in range(81)
    ]
    assert shifts[0] > 0.0
    assert all(a <= b + 1e-9 * device.model.delta_max for a, b in zip(shifts, shifts[1:]))
