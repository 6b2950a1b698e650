from __future__ import absolute_import, unicode_literals
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, NamedTuple

from .constants import (
    AnchorKind, AttackMode, LineShape, ScenarioKind,
    ATTACK_RESONANCE_NM, DEFAULT_DT_S, PULSE_WIDTH_S, REP_RATE_HZ,
)
from .exceptions import DomainError, ValidationError


@dataclass(frozen=True)
class CouplingRates:
    """Decay-rate triple of one resonator mode, in rad/s."""
    kappa0: float  # intrinsic loss
    kappa1: float  # upper bus (ports A/B)
    kappa2: float  # lower bus (ports C/D)

    def __post_init__(self):
        if min(self.kappa0, self.kappa1, self.kappa2) < 0:
            raise DomainError(f"Decay rates must be non-negative: {self}")
        if self.total <= 0:
            raise DomainError("Total decay rate must be positive")

    @property
    def total(self) -> float:
        return self.kappa0 + self.kappa1 + self.kappa2

    def loaded_q(self, omega0: float) -> float:
        return omega0 / self.total


@dataclass(frozen=True)
class ResonatorGeometry:
    """Resonance comb of the ring: mode b at base_resonance, mode a offset by whole FSRs."""
    base_resonance: float  # Hz
    fsr: float  # Hz
    signal_mode_offset: int

    def __post_init__(self):
        if self.fsr <= 0:
            raise DomainError(f"FSR must be positive, got {self.fsr}")
        if self.base_resonance <= 0:
            raise DomainError(f"Resonance must be positive, got {self.base_resonance}")

    @property
    def signal_resonance(self) -> float:
        return self.base_resonance + self.signal_mode_offset * self.fsr


@dataclass(frozen=True)
class Detuning:
    """Δ′ = ω_mode − ω_input + δ_PR, in rad/s."""
    value: float


@dataclass(frozen=True)
class PrModel:
    """Calibrated photorefractive law: saturable power→shift plus rise/fall dynamics."""
    delta_max: float  # rad/s
    p_ref: float  # W of circulating power
    gamma: float = 1.0
    tau_rise: float = 1.0
    tau_fall: float = 1.0
    residuals: Tuple[float, ...] = ()
    quality_warning: str = ""

    def __post_init__(self):
        if self.delta_max < 0:
            raise DomainError(f"delta_max must be non-negative, got {self.delta_max}")
        if self.p_ref <= 0 or self.gamma <= 0:
            raise DomainError(f"p_ref and gamma must be positive: p_ref={self.p_ref}, gamma={self.gamma}")
        if self.tau_rise <= 0 or self.tau_fall <= 0:
            raise DomainError(f"Time constants must be positive: {self.tau_rise}, {self.tau_fall}")


@dataclass(frozen=True)
class PrState:
    """Instantaneous PR shift at simulation time t."""
    delta_pr: float  # rad/s
    t: float = 0.0
    converged: bool = True
    fixed_point_gap: float = 0.0  # relative gap to the damped fixed-point solution, nan if none


@dataclass(frozen=True)
class CalibrationAnchor:
    """One measured point of the PR response."""
    on_chip_attack_power: float  # W
    kind: AnchorKind
    value: float  # pm for SHIFT_PM, dB for ATTEN_DB_CW
    wavelength_nm: float = ATTACK_RESONANCE_NM

    def __post_init__(self):
        if self.on_chip_attack_power <= 0:
            raise ValidationError(f"Anchor power must be positive, got {self.on_chip_attack_power}")
        if self.value <= 0:
            raise ValidationError(f"Anchor value must be positive, got {self.value}")


@dataclass(frozen=True)
class FuseDevice:
    """Everything the physics needs about the fuse: linewidth, comb and PR law."""
    rates: CouplingRates
    geometry: ResonatorGeometry
    model: PrModel
    reference_nm: float = ATTACK_RESONANCE_NM
    dt: float = DEFAULT_DT_S


@dataclass(frozen=True)
class SourceSpectrum:
    """Optical source: center (Hz), FWHM (Hz), shape and mean power (W)."""
    center: float
    fwhm: float = 0.0
    shape: LineShape = LineShape.DELTA
    mean_power: float = 0.0

    def __post_init__(self):
        if self.fwhm < 0:
            raise DomainError(f"Linewidth must be non-negative, got {self.fwhm}")
        if (self.shape is LineShape.DELTA) != (self.fwhm == 0):
            raise ValidationError(f"Shape {self.shape.value} inconsistent with FWHM {self.fwhm}")
        if self.mean_power < 0:
            raise DomainError(f"Mean power must be non-negative, got {self.mean_power}")


@dataclass(frozen=True)
class PulseTrain:
    rep_rate: float = REP_RATE_HZ
    pulse_width: float = PULSE_WIDTH_S

    def __post_init__(self):
        if self.rep_rate <= 0:
            raise DomainError(f"Repetition rate must be positive, got {self.rep_rate}")
        if not 0 < self.pulse_width * self.rep_rate < 1:
            raise DomainError("Pulse width times repetition rate must lie in (0, 1)")

    @property
    def duty_factor(self) -> float:
        return self.pulse_width * self.rep_rate

    def pulse_energy(self, mean_power: float) -> float:
        return mean_power / self.rep_rate


@dataclass(frozen=True)
class AttackScenario:
    """An attack at one wavelength; forward (on-chip power) or inverse (power at Tx)."""
    wavelength_nm: float
    on_chip_power: Optional[float] = None
    target_tx_power: Optional[float] = None
    schedule: Tuple[Tuple[float, float], ...] = ()
    mode: AttackMode = AttackMode.FORWARD

    def __post_init__(self):
        if self.mode is AttackMode.FORWARD:
            if self.on_chip_power is None or self.target_tx_power is not None:
                raise ValidationError("Forward scenarios set on_chip_power only")
        elif self.target_tx_power is None or self.on_chip_power is not None:
            raise ValidationError("Fixed-Tx scenarios set target_tx_power only")
        power = self.on_chip_power if self.on_chip_power is not None else self.target_tx_power
        if power < 0:
            raise DomainError(f"Attack power must be non-negative, got {power}")
        previous_end = float("-inf")
        for t_on, t_off in self.schedule:
            if not t_on < t_off or t_on < previous_end:
                raise ValidationError(f"Schedule intervals must be ordered and disjoint: {self.schedule}")
            previous_end = t_off


@dataclass(frozen=True)
class SweepSpec:
    center_wavelength_nm: float
    span_pm: float
    step_pm: float
    target_tx_power: float  # W

    def __post_init__(self):
        if self.span_pm <= 0 or self.step_pm <= 0:
            raise ValidationError("Sweep span and step must be positive")
        n = self.span_pm / self.step_pm
        if abs(n - round(n)) > 1e-9:
            raise ValidationError(f"Step {self.step_pm} pm does not divide span {self.span_pm} pm")
        if self.target_tx_power < 0:
            raise DomainError("Target Tx power must be non-negative")

    @property
    def offsets_pm(self) -> List[float]:
        n = int(round(self.span_pm / self.step_pm))
        return [-self.span_pm / 2 + k * self.step_pm for k in range(n + 1)]


@dataclass(frozen=True)
class ScenarioResult:
    wavelength_nm: float
    detuning_pm: float
    signal_attenuation_db: float
    attack_power_at_tx_w: float
    on_chip_attack_power_w: float
    pr_shift_pm: float
    converged: bool = True
    fold: bool = False
    error: str = ""


class TimeSample(NamedTuple):
    t: float
    transmission: float
    shift_pm: float


@dataclass(frozen=True)
class DecoyParams:
    mu: float
    nu: float
    o: float
    p_mu: float
    p_nu: float
    p_o: float

    def __post_init__(self):
        if not self.mu > self.nu > self.o >= 0:
            raise DomainError(f"Intensities must satisfy mu > nu > o >= 0: {self}")
        probabilities = (self.p_mu, self.p_nu, self.p_o)
        if min(probabilities) <= 0 or abs(sum(probabilities) - 1.0) > 1e-9:
            raise DomainError(f"Emission probabilities must be positive and sum to 1: {probabilities}")


@dataclass(frozen=True)
class ChannelModel:
    length_km: float
    fiber_loss_db_per_km: float
    extra_loss_db: float
    detector_efficiency: float
    dark_count_prob: float  # per gate
    misalignment_error: float
    error_correction_efficiency: float
    sifting_factor: float
    rep_rate: float = REP_RATE_HZ

    def __post_init__(self):
        for name in ("detector_efficiency", "dark_count_prob", "misalignment_error", "sifting_factor"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")
        if min(self.length_km, self.fiber_loss_db_per_km, self.extra_loss_db) < 0:
            raise DomainError("Lengths and losses must be non-negative")
        if self.error_correction_efficiency < 1:
            raise DomainError(f"Error correction efficiency must be >= 1, got {self.error_correction_efficiency}")
        if self.rep_rate <= 0:
            raise DomainError("Repetition rate must be positive")

    @property
    def total_loss_db(self) -> float:
        return self.length_km * self.fiber_loss_db_per_km + self.extra_loss_db

    @property
    def transmittance(self) -> float:
        """Overall η including detector efficiency."""
        return self.detector_efficiency * 10.0 ** (-self.total_loss_db / 10.0)

    @property
    def vacuum_yield(self) -> float:
        return 2.0 * self.dark_count_prob


@dataclass(frozen=True)
class GainsErrors:
    """Per-intensity gain Q_λ and error rate E_λ, keyed 'mu', 'nu', 'o'."""
    gains: Dict[str, float]
    errors: Dict[str, float]


@dataclass(frozen=True)
class SkrReport:
    stats: GainsErrors
    y0: float
    y1_lower: float
    e1_upper: float
    q1_gain: float
    sifted_rate_per_pulse: float
    qber: float
    skr_per_pulse: float
    skr_bps: float
    feasible: bool = True


@dataclass
class ValidationResult:
    """Results from a validation operation."""
    name: str
    success: bool
    errors: List[Tuple[str, str]]
    warnings: List[str]


@dataclass
class RunConfig:
    """Fully validated run configuration."""
    device: Dict[str, object]
    photorefractive: Dict[str, object]
    source: Dict[str, object]
    channel: Dict[str, object]
    scenario: Dict[str, object]
    kind: ScenarioKind
    output_dir: Path
    name: str = "run"
    workers: int = 1
    extra: Dict[str, object] = field(default_factory=dict)


class RequiredPower(NamedTuple):
    """Inverse-solve result: on-chip power reaching a Tx power target."""
    on_chip_power: float
    tx_power: float
    shift: float
    fold: bool


class DecoyBounds(NamedTuple):
    y0: float
    y1_lower: float
    e1_upper: float
    feasible: bool


class SkrPoint(NamedTuple):
    distance_km: float
    attack_power_w: float
    atten_db: float
    report: "SkrReport"


class KeySpec(NamedTuple):
    """One config key: converter from its INI string, default, and whether it must be set."""
    convert: Callable[[str], Any]
    default: Any = None
    required: bool = False
