"""Physical parameters of the two-cavity system and derived scalar quantities.

Everything is stored in SI units, with all frequencies and rates as angular
quantities (rad/s).  Per-cavity fields are pairs indexed (cavity 1, cavity 2);
scalar input is broadcast to both cavities.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import hbar as HBAR
from scipy.constants import k as K_BOLTZMANN

from .errors import ConfigError

# The Markovian treatment of the mirror Brownian noise needs a high
# mechanical quality factor; warn when it drops below this.
QUALITY_FACTOR_FLOOR = 1e3

DETUNING_MODES = ("bare", "effective")


def _pair(value) -> tuple[float, float]:
    if isinstance(value, (tuple, list)):
        if len(value) != 2:
            raise ConfigError(f"per-cavity field needs exactly 2 entries, got {value!r}")
        return (float(value[0]), float(value[1]))
    v = float(value)
    return (v, v)


@dataclass(frozen=True)
class Detuning:
    """Laser-cavity detuning pair, given either before ("bare") or after
    ("effective") the static radiation-pressure shift."""

    mode: str
    value: tuple[float, float]  # rad/s

    def __post_init__(self):
        if self.mode not in DETUNING_MODES:
            raise ConfigError(f"detuning mode must be one of {DETUNING_MODES}, got {self.mode!r}")
        object.__setattr__(self, "value", _pair(self.value))


@dataclass(frozen=True)
class PhysicalParams:
    """Full description of the two driven optomechanical cavities.

    Units: lengths m, masses kg, rates rad/s, powers W, temperature K.
    """

    cavity_length: tuple[float, float]
    mirror_mass: tuple[float, float]
    mech_freq: tuple[float, float]
    mech_damping: tuple[float, float]
    cavity_decay: tuple[float, float]
    laser_wavelength: float
    drive_power: tuple[float, float]
    bath_temperature: float
    hop_strength: float
    detuning: Detuning

    def __post_init__(self):
        for name in ("cavity_length", "mirror_mass", "mech_freq",
                     "mech_damping", "cavity_decay", "drive_power"):
            object.__setattr__(self, name, _pair(getattr(self, name)))
        object.__setattr__(self, "laser_wavelength", float(self.laser_wavelength))
        object.__setattr__(self, "bath_temperature", float(self.bath_temperature))
        object.__setattr__(self, "hop_strength", float(self.hop_strength))

        for name in ("cavity_length", "mirror_mass", "mech_freq",
                     "mech_damping", "cavity_decay"):
            lo = min(getattr(self, name))
            if not lo > 0.0 or not all(math.isfinite(v) for v in getattr(self, name)):
                raise ConfigError(f"{name} must be strictly positive, got {getattr(self, name)}")
        if not self.laser_wavelength > 0.0:
            raise ConfigError("laser_wavelength must be strictly positive")
        # drive power 0 is the meaningful undriven limit and stays allowed
        if min(self.drive_power) < 0.0:
            raise ConfigError("drive_power must be nonnegative")
        if self.bath_temperature < 0.0:
            raise ConfigError("bath_temperature must be nonnegative")
        if self.hop_strength < 0.0:
            raise ConfigError("hop_strength must be nonnegative")

        for j in (0, 1):
            q = self.mech_freq[j] / self.mech_damping[j]
            if q < QUALITY_FACTOR_FLOOR:
                warnings.warn(
                    f"mechanical quality factor of cavity {j + 1} is {q:.3g}; "
                    f"the Markovian mirror-noise model assumes Q >> 1",
                    stacklevel=2,
                )

    @classmethod
    def symmetric(cls, *, cavity_length, mirror_mass, mech_freq, mech_damping,
                  cavity_decay, laser_wavelength, drive_power, bath_temperature,
                  hop_strength, detuning):
        """Build identical-cavity parameters from scalars."""
        return cls(
            cavity_length=cavity_length,
            mirror_mass=mirror_mass,
            mech_freq=mech_freq,
            mech_damping=mech_damping,
            cavity_decay=cavity_decay,
            laser_wavelength=laser_wavelength,
            drive_power=drive_power,
            bath_temperature=bath_temperature,
            hop_strength=hop_strength,
            detuning=detuning,
        )

    @property
    def is_symmetric(self) -> bool:
        return all(
            getattr(self, name)[0] == getattr(self, name)[1]
            for name in ("cavity_length", "mirror_mass", "mech_freq",
                         "mech_damping", "cavity_decay", "drive_power")
        )

    def with_(self, **updates) -> "PhysicalParams":
        return replace(self, **updates)


@dataclass(frozen=True)
class DerivedScalars:
    """Single-number quantities derived from :class:`PhysicalParams`."""

    bare_coupling: tuple[float, float]  # rad/s
    drive_amp: tuple[float, float]      # 1/s
    thermal_occ: float                  # dimensionless


def laser_angular_freq(wavelength: float) -> float:
    """Angular frequency 2*pi*c/lambda of the drive laser."""
    return 2.0 * math.pi * SPEED_OF_LIGHT / wavelength


def derive_coupling(params: PhysicalParams, j: int) -> float:
    """Single-photon optomechanical coupling of cavity ``j`` (1 or 2).

    g = (omega_c / L) * sqrt(hbar / (m * omega_m)), with the cavity frequency
    taken equal to the laser frequency (their relative offset is a few
    mechanical frequencies, i.e. below 1e-7 of the optical frequency).
    """
    i = _index(j)
    omega_c = laser_angular_freq(params.laser_wavelength)
    return (omega_c / params.cavity_length[i]) * math.sqrt(
        HBAR / (params.mirror_mass[i] * params.mech_freq[i])
    )


def drive_amplitude(power: float, cavity_decay: float, laser_freq: float) -> float:
    """Drive amplitude |E| = sqrt(2 * P * kappa / (hbar * omega_L))."""
    if power < 0.0:
        raise ConfigError("drive power must be nonnegative")
    return math.sqrt(2.0 * power * cavity_decay / (HBAR * laser_freq))


def thermal_occupation(mech_freq: float, temperature: float) -> float:
    """Mean thermal phonon number of a mode at ``mech_freq`` and bath
    temperature ``temperature``; exactly 0 at T = 0."""
    if temperature < 0.0:
        raise ConfigError("temperature must be nonnegative")
    if temperature == 0.0:
        return 0.0
    x = HBAR * mech_freq / (K_BOLTZMANN * temperature)
    if x > 700.0:  # exp would overflow; occupation is indistinguishable from 0
        return 0.0
    return 1.0 / math.expm1(x)


def derived_scalars(params: PhysicalParams) -> DerivedScalars:
    omega_l = laser_angular_freq(params.laser_wavelength)
    g = tuple(derive_coupling(params, j) for j in (1, 2))
    e = tuple(
        drive_amplitude(params.drive_power[i], params.cavity_decay[i], omega_l)
        for i in (0, 1)
    )
    nbar = thermal_occupation(params.mech_freq[0], params.bath_temperature)
    return DerivedScalars(bare_coupling=g, drive_amp=e, thermal_occ=nbar)


def _index(j: int) -> int:
    if j not in (1, 2):
        raise ConfigError(f"cavity index must be 1 or 2, got {j}")
    return j - 1
