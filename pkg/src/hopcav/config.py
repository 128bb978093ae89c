"""JSON configuration ingestion.

Every dimensional field is an object ``{"value": x, "unit": u}``.  Frequencies
and rates given in Hz or MHz are ordinary (non-angular) frequencies and are
multiplied by 2 pi; ``rad/s`` is taken literally; ``omega_m`` means multiples
of the first cavity's mechanical frequency.  Detunings and sweep axes use the
figure convention: omega_m units, positive on the cooling side.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .engine import AXIS_NAMES, AxisSpec, BathSpec, SweepConfig
from .errors import ConfigError
from .params import Detuning, PhysicalParams
from .squeezed import DpoParams, dpo_spectra, ideal_correlation

TWO_PI = 2.0 * math.pi

# unit name -> (kind, scale to internal units); angular frequencies in rad/s
UNITS = {
    "Hz": ("frequency", TWO_PI),
    "MHz": ("frequency", TWO_PI * 1e6),
    "rad/s": ("frequency", 1.0),
    "omega_m": ("frequency", None),  # resolved against mech_freq
    "mm": ("length", 1e-3),
    "m": ("length", 1.0),
    "nm": ("length", 1e-9),
    "ng": ("mass", 1e-12),
    "kg": ("mass", 1.0),
    "mW": ("power", 1e-3),
    "W": ("power", 1.0),
    "K": ("temperature", 1.0),
    "dimensionless": ("dimensionless", 1.0),
}

FIELD_KINDS = {
    "cavity_length": "length",
    "mirror_mass": "mass",
    "mech_freq": "frequency",
    "mech_damping": "frequency",
    "cavity_decay": "frequency",
    "laser_wavelength": "length",
    "drive_power": "power",
    "bath_temperature": "temperature",
    "hop_strength": "frequency",
}

REQUIRED_CAVITY_FIELDS = tuple(FIELD_KINDS)


def _quantity(obj, field: str, kind: str, omega_m: float | None = None) -> float:
    if not isinstance(obj, dict) or set(obj) != {"value", "unit"}:
        raise ConfigError(f"{field}: expected an object {{'value': x, 'unit': u}}, got {obj!r}")
    unit = obj["unit"]
    if unit not in UNITS:
        raise ConfigError(f"{field}: unknown unit {unit!r}; allowed: {sorted(UNITS)}")
    unit_kind, scale = UNITS[unit]
    if unit_kind != kind:
        raise ConfigError(f"{field}: unit {unit!r} is a {unit_kind}, expected a {kind}")
    try:
        value = float(obj["value"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{field}: non-numeric value {obj['value']!r}") from exc
    if scale is None:
        if omega_m is None:
            raise ConfigError(f"{field}: omega_m units are not allowed here")
        scale = omega_m
    return value * scale


def _field(section: dict, name: str, kind: str, omega_m: float | None = None):
    if name not in section:
        raise ConfigError(f"missing required field {name!r}")
    raw = section[name]
    if isinstance(raw, list):
        if len(raw) != 2:
            raise ConfigError(f"{name}: per-cavity lists need exactly 2 entries")
        return tuple(_quantity(v, name, kind, omega_m) for v in raw)
    return _quantity(raw, name, kind, omega_m)


def _parse_bath(doc: dict, omega_m: float) -> BathSpec:
    raw = doc.get("bath")
    if raw is None:
        return BathSpec()
    if not isinstance(raw, dict):
        raise ConfigError("bath: expected an object")
    if "dpo" in raw:
        d = raw["dpo"]
        dpo = DpoParams(
            dpo_decay=_quantity(d["decay"], "bath.dpo.decay", "frequency", omega_m),
            amplification=_quantity(d["amplification"], "bath.dpo.amplification", "frequency", omega_m),
            center_freq=_quantity(d.get("center_freq", {"value": 0.0, "unit": "rad/s"}),
                                  "bath.dpo.center_freq", "frequency", omega_m),
        )
        n, m = dpo_spectra(dpo, dpo.center_freq)
        return BathSpec(photon_number=n, correlation=min(m, ideal_correlation(n)))
    if "photon_number" not in raw:
        raise ConfigError("bath: needs 'photon_number' (with 'correlation') or a 'dpo' object")
    n = float(raw["photon_number"])
    corr = raw.get("correlation", 0.0)
    if isinstance(corr, str):
        if corr != "ideal":
            raise ConfigError(f"bath.correlation: expected a number or 'ideal', got {corr!r}")
        return BathSpec(photon_number=n, correlation="ideal")
    return BathSpec(photon_number=n, correlation=float(corr))


def _parse_axis(raw: dict, index: int) -> AxisSpec:
    if not isinstance(raw, dict) or "name" not in raw:
        raise ConfigError(f"axes[{index}]: expected an object with a 'name'")
    name = raw["name"]
    if name not in AXIS_NAMES:
        raise ConfigError(f"axes[{index}]: unknown axis {name!r}; allowed: {AXIS_NAMES}")
    scale = 1e-3 if raw.get("unit") == "mW" else 1.0
    if "values" in raw:
        return AxisSpec(name, tuple(float(v) * scale for v in raw["values"]))
    try:
        return AxisSpec.from_range(
            name, float(raw["min"]) * scale, float(raw["max"]) * scale, int(raw["count"])
        )
    except KeyError as exc:
        raise ConfigError(f"axes[{index}]: needs 'values' or 'min'/'max'/'count'") from exc


def parse_config(doc: dict) -> SweepConfig:
    """Build a :class:`SweepConfig` from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ConfigError("configuration root must be a JSON object")
    cavity = doc.get("cavity")
    if not isinstance(cavity, dict):
        raise ConfigError("missing 'cavity' section")

    mech = _field(cavity, "mech_freq", "frequency")
    omega_m = mech[0] if isinstance(mech, tuple) else mech

    det_raw = doc.get("detuning", {"mode": "effective", "value": {"value": 0.0, "unit": "omega_m"}})
    mode = det_raw.get("mode", "effective")
    det_value = det_raw.get("value", {"value": 0.0, "unit": "omega_m"})
    if isinstance(det_value, list):
        value = tuple(_quantity(v, "detuning.value", "frequency", omega_m) for v in det_value)
    else:
        value = _quantity(det_value, "detuning.value", "frequency", omega_m)

    params = PhysicalParams(
        cavity_length=_field(cavity, "cavity_length", "length"),
        mirror_mass=_field(cavity, "mirror_mass", "mass"),
        mech_freq=mech,
        mech_damping=_field(cavity, "mech_damping", "frequency", omega_m),
        cavity_decay=_field(cavity, "cavity_decay", "frequency", omega_m),
        laser_wavelength=_field(cavity, "laser_wavelength", "length"),
        drive_power=_field(cavity, "drive_power", "power"),
        bath_temperature=_field(cavity, "bath_temperature", "temperature"),
        hop_strength=_field(cavity, "hop_strength", "frequency", omega_m),
        detuning=Detuning(mode, value),
    )

    axes_raw = doc.get("axes", [])
    if not isinstance(axes_raw, list):
        raise ConfigError("'axes' must be a list")
    axes = tuple(_parse_axis(a, i) for i, a in enumerate(axes_raw))

    nbar = doc.get("nbar")
    return SweepConfig(
        params=params,
        bath=_parse_bath(doc, omega_m),
        axes=axes,
        nbar_override=None if nbar is None else float(nbar),
        detuning_sign=doc.get("detuning_sign", "positive"),
        branch_policy=doc.get("branch_policy", "default"),
        label=doc.get("label", "sweep"),
    )


def load_config(path) -> SweepConfig:
    """Read and parse a JSON configuration file."""
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p} is not valid JSON: {exc}") from exc
    return parse_config(doc)


def validate_config(path) -> list[str]:
    """Schema and invariant check only; returns a list of problems (empty
    when the configuration is usable)."""
    problems: list[str] = []
    try:
        cfg = load_config(path)
        cfg.bath.resolve()  # exercises the quantum bound
    except ConfigError as exc:
        problems.append(str(exc))
    except Exception as exc:  # bath bound violations and similar
        problems.append(str(exc))
    return problems
