"""Building the physics context of a run from its validated config sections."""
import math
from typing import Any, Dict, Tuple

from optical_fuse_sim import attacks, photorefractive, qkd, resonator, sources
from optical_fuse_sim.core.constants import AnchorKind, LineShape
from optical_fuse_sim.core.logging import setup_logger
from optical_fuse_sim.core.structs import (
    CalibrationAnchor, ChannelModel, DecoyParams, FuseDevice, PrModel, PulseTrain, ResonatorGeometry,
    SourceSpectrum,
)
from optical_fuse_sim.core import units

logger = setup_logger(__name__)

Section = Dict[str, Any]


def build_device(device: Section, pr: Section) -> FuseDevice:
    """Ring geometry, coupling split and a PR law, calibrated unless given explicitly."""
    base = units.wavelength_to_frequency(device["resonance_nm"])
    geometry = ResonatorGeometry(base, device["fsr_ghz"] * 1e9, device["signal_mode_offset"])
    rates = resonator.rates_from_q(
        device["q_loaded"], units.TWO_PI * base, device["split_policy"], device["split_fractions"],
    )

    if pr["delta_max_ghz"] is not None:
        model = PrModel(
            units.TWO_PI * pr["delta_max_ghz"] * 1e9,
            pr["p_ref_mw"] * 1e-3,
            pr["gamma"],
            pr["tau_rise_s"] or photorefractive.TAU_RISE_DEFAULT,
            pr["tau_fall_s"] or photorefractive.TAU_FALL_DEFAULT,
        )
    else:
        if pr["anchors_file"] is not None:
            anchors = photorefractive.load_anchors(pr["anchors_file"])
        else:
            anchors = [
                CalibrationAnchor(units.dbm_to_watts(0.0), AnchorKind.SHIFT_PM, pr["shift_pm_0dbm"]),
                CalibrationAnchor(units.dbm_to_watts(10.0), AnchorKind.ATTEN_DB_CW, pr["atten_db_10dbm_cw"]),
            ]
        model = photorefractive.calibrate(
            anchors, rates, geometry, gamma_prior=pr["gamma"], reference_nm=device["resonance_nm"],
        )
    if pr["calibrate_dynamics"]:
        model = photorefractive.calibrate_dynamics(
            model, rates, geometry, rise_time=pr["rise_time_s"], fall_time=pr["fall_time_s"],
        )
    logger.info(
        f"PR model: delta_max={units.shift_to_pm(model.delta_max, device['resonance_nm']):.2f} pm, "
        f"p_ref={model.p_ref:.4e} W, gamma={model.gamma:.3f}, "
        f"tau_rise={model.tau_rise:.3f} s, tau_fall={model.tau_fall:.3f} s"
    )
    return FuseDevice(rates, geometry, model, device["resonance_nm"], device["dt_s"])


def build_signal(source: Section, device: FuseDevice) -> SourceSpectrum:
    """Signal line on mode a; optionally its effective linewidth is fitted to a measured attenuation."""
    if source["center_nm"] is not None:
        fwhm = (source["fwhm_ghz"] or 0.0) * 1e9
        shape = source["shape"] or (LineShape.DELTA if fwhm == 0 else LineShape.GAUSSIAN)
        signal = SourceSpectrum(units.wavelength_to_frequency(source["center_nm"]), fwhm, shape, sources.SIGNAL_POWER_W)
    else:
        signal = sources.preset(source["preset"])
    photorefractive.check_signal_power(signal.mean_power)
    signal = sources.align_to_signal_mode(signal, device.geometry)

    if source["fit_atten_db"] is not None:
        state, _ = attacks.solve_attack(
            units.dbm_to_watts(source["fit_power_dbm"]), device.reference_nm, device,
        )
        shape = signal.shape if signal.shape is not LineShape.DELTA else LineShape.GAUSSIAN
        signal = sources.fit_linewidth(source["fit_atten_db"], state.delta_pr, device.rates, device.geometry, shape)
    if signal.shape is not LineShape.DELTA:
        train = PulseTrain()
        logger.info(
            f"Pulse train: duty factor {train.duty_factor:.4f}, "
            f"{train.pulse_energy(signal.mean_power):.3e} J per pulse"
        )
    return signal


def build_channel(channel: Section) -> Tuple[ChannelModel, DecoyParams]:
    """Decoy settings and the channel calibrated to the configured operating point.

    Raises:
        DomainError: If the repetition rate leaves no room for the signal pulses.
    """
    train = PulseTrain(rep_rate=channel["rep_rate_mhz"] * 1e6)
    params = DecoyParams(*(channel[k] for k in ("mu", "nu", "o", "p_mu", "p_nu", "p_o")))
    model = qkd.calibrate_channel(
        channel["sifted_rate"],
        channel["qber"],
        length_km=channel["length_km"],
        fiber_loss_db_per_km=channel["fiber_loss_db_per_km"],
        f=channel["error_correction_efficiency"],
        q=channel["sifting_factor"],
        params=params,
        dark_count_prior=channel["dark_count_prior"],
        skr_ratio_target=channel["skr_ratio_target"],
        ratio_extra_loss_db=channel["ratio_extra_loss_db"],
        rep_rate=train.rep_rate,
    )
    return model, params


def attack_wavelength(scenario: Section, device: FuseDevice) -> float:
    wavelength = scenario.get("wavelength_nm")
    return device.reference_nm if wavelength is None or math.isnan(wavelength) else wavelength
