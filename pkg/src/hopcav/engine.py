"""Sweep orchestration: point pipeline, parameter grids, and CSV emission.

For each grid point the pipeline runs

    steady state -> drift + diffusion -> Hurwitz gate -> Lyapunov ->
    pair measures + stability scalars

Sweep detunings are quoted in the figure convention (positive on the cooling
side, in units of omega_m); the steady-state solver is evaluated with the
opposite-signed Langevin detunings, under which the intracavity amplitude
decreases monotonically with detuning and hopping, and the drift places the
positive values (see :func:`hopcav.dynamics.figure_drift`).

Entanglement is only reported where the full 8x8 drift is Hurwitz; unstable
points keep their coordinates and carry empty measure fields.
"""

from __future__ import annotations

import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import build_diffusion, figure_drift
from .errors import ConfigError, HopcavError
from .lyapunov import RESIDUAL_GATE, is_hurwitz, solve_lyapunov
from .measures import (
    BipartitePair,
    extract_pair,
    fidelity_bound,
    log_negativity,
    teleportation_fidelity,
)
from .params import Detuning, PhysicalParams, thermal_occupation
from .squeezed import SqueezedBath
from .stability import routh_hurwitz_reduced
from .steady_state import solve_fixed_detuning, solve_self_consistent

AXIS_NAMES = ("delta", "xi", "power", "temperature", "nbar", "photon_number")
BRANCH_POLICIES = ("default", "all")

CSV_COLUMNS = (
    "delta", "xi", "power", "nbar", "photon_number", "correlation",
    "amp1", "amp2", "coupling_ratio", "stable", "s1", "s2",
    "en_f1m1", "en_f2m2", "en_m1m2", "en_f1f2",
    "theta_f1m1", "theta_f2m2", "theta_m1m2", "theta_f1f2",
    "fidelity", "fidelity_bound", "lyap_residual", "branch", "error",
)


@dataclass(frozen=True)
class AxisSpec:
    """One swept variable with its explicit grid values."""

    name: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ConfigError(f"axis name must be one of {AXIS_NAMES}, got {self.name!r}")
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise ConfigError(f"axis {self.name!r} needs at least 2 values")
        if not all(np.isfinite(vals)):
            raise ConfigError(f"axis {self.name!r} has non-finite values")

    @classmethod
    def from_range(cls, name: str, lo: float, hi: float, count: int) -> "AxisSpec":
        if count < 2:
            raise ConfigError(f"axis {name!r} count must be >= 2, got {count}")
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ConfigError(f"axis {name!r} range must be finite")
        return cls(name, tuple(np.linspace(float(lo), float(hi), int(count))))


@dataclass(frozen=True)
class BathSpec:
    """Declarative bath: photon number plus either a fixed correlation or the
    marker ``ideal`` (correlation follows the photon number maximally)."""

    photon_number: float = 0.0
    correlation: float | str = 0.0

    def resolve(self, photon_number: float | None = None) -> SqueezedBath:
        n = self.photon_number if photon_number is None else photon_number
        if isinstance(self.correlation, str):
            if self.correlation != "ideal":
                raise ConfigError(f"correlation must be a number or 'ideal', got {self.correlation!r}")
            return SqueezedBath.ideal(n)
        return SqueezedBath(n, float(self.correlation))


@dataclass(frozen=True)
class SweepConfig:
    """Base parameters plus the declarative grid description."""

    params: PhysicalParams
    bath: BathSpec = BathSpec()
    axes: tuple[AxisSpec, ...] = ()
    nbar_override: float | None = None
    detuning_sign: str = "positive"
    branch_policy: str = "default"
    label: str = "sweep"
    header_notes: tuple[str, ...] = ()

    def __post_init__(self):
        if not 0 <= len(self.axes) <= 2:
            raise ConfigError(f"a sweep takes 1-2 axes, got {len(self.axes)}")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate sweep axes: {names}")
        if self.branch_policy not in BRANCH_POLICIES:
            raise ConfigError(
                f"branch_policy must be one of {BRANCH_POLICIES}, got {self.branch_policy!r}"
            )


@dataclass(frozen=True)
class ResultRecord:
    """One output row; measure fields are None at unstable or failed points."""

    delta: float
    xi: float
    power: float
    nbar: float
    photon_number: float
    correlation: float
    amp1: float | None = None
    amp2: float | None = None
    coupling_ratio: float | None = None
    stable: bool = False
    s1: float | None = None
    s2: float | None = None
    en_f1m1: float | None = None
    en_f2m2: float | None = None
    en_m1m2: float | None = None
    en_f1f2: float | None = None
    theta_f1m1: float | None = None
    theta_f2m2: float | None = None
    theta_m1m2: float | None = None
    theta_f1f2: float | None = None
    fidelity: float | None = None
    fidelity_bound: float | None = None
    lyap_residual: float | None = None
    branch: int = 0
    error: str = ""


@dataclass(frozen=True)
class PointResult:
    """Records for every emitted branch of one grid point, with the stationary
    covariance (None where unstable) alongside each record."""

    records: tuple[ResultRecord, ...]
    covariances: tuple[np.ndarray | None, ...]


def _point_setup(config: SweepConfig, overrides: dict[str, float]):
    """Apply axis overrides to the base configuration."""
    params = config.params
    omega_m = params.mech_freq[0]
    for name, value in overrides.items():
        if name == "delta":
            params = params.with_(
                detuning=Detuning(params.detuning.mode, (value * omega_m, value * omega_m))
            )
        elif name == "xi":
            params = params.with_(hop_strength=value * omega_m)
        elif name == "power":
            params = params.with_(drive_power=(value, value))
        elif name == "temperature":
            params = params.with_(bath_temperature=value)
        elif name not in ("nbar", "photon_number"):
            raise ConfigError(f"unknown axis {name!r}")

    if "nbar" in overrides:
        nbar = float(overrides["nbar"])
    elif config.nbar_override is not None:
        nbar = float(config.nbar_override)
    else:
        nbar = thermal_occupation(params.mech_freq[0], params.bath_temperature)

    n_over = overrides.get("photon_number")
    bath = config.bath.resolve(photon_number=n_over)
    return params, bath, nbar


def run_point(config: SweepConfig, overrides: dict[str, float] | None = None) -> PointResult:
    """Evaluate one grid point; returns one record per emitted branch.

    Per-point errors are caught and recorded in the ``error`` field so that
    sweeps continue.
    """
    overrides = dict(overrides or {})
    omega_m = config.params.mech_freq[0]
    try:
        params, bath, nbar = _point_setup(config, overrides)
        delta_fig = params.detuning.value[0] / omega_m
        xi_fig = params.hop_strength / omega_m
        base = ResultRecord(
            delta=delta_fig,
            xi=xi_fig,
            power=params.drive_power[0],
            nbar=nbar,
            photon_number=bath.photon_number,
            correlation=bath.correlation,
        )
    except HopcavError as exc:
        rec = ResultRecord(
            delta=float(overrides.get("delta", np.nan)),
            xi=float(overrides.get("xi", np.nan)),
            power=float(overrides.get("power", np.nan)),
            nbar=float(overrides.get("nbar", np.nan)),
            photon_number=float(overrides.get("photon_number", np.nan)),
            correlation=np.nan,
            error=str(exc),
        )
        return PointResult(records=(rec,), covariances=(None,))

    try:
        # the Langevin solver runs with the opposite-signed detunings; see the
        # module docstring for the axis convention
        lang = tuple(-v for v in params.detuning.value)
        if params.detuning.mode == "effective":
            branches = [solve_fixed_detuning(params, lang[0], lang[1])]
        else:
            branches = solve_self_consistent(params, lang[0], lang[1])
    except HopcavError as exc:
        return PointResult(records=(replace(base, error=str(exc)),), covariances=(None,))

    records: list[ResultRecord] = []
    covariances: list[np.ndarray | None] = []
    for steady in branches:
        rec = replace(
            base,
            amp1=abs(steady.amp[0]),
            amp2=abs(steady.amp[1]),
            coupling_ratio=steady.eff_coupling[0] / omega_m,
            branch=steady.branch,
        )
        try:
            drift = figure_drift(params, steady, config.detuning_sign)
            stable, _ = is_hurwitz(drift)
            if params.is_symmetric:
                # the figure-convention effective detuning, also valid in bare
                # mode where the shift has been absorbed
                dfig = -steady.eff_detuning[0]
                s1, s2 = routh_hurwitz_reduced(
                    params.mech_freq[0],
                    params.mech_damping[0],
                    params.cavity_decay[0],
                    steady.eff_coupling[0],
                    dfig + params.hop_strength,
                )
                rec = replace(rec, s1=s1, s2=s2)
            rec = replace(rec, stable=stable)
            if not stable:
                records.append(rec)
                covariances.append(None)
                continue

            diffusion = build_diffusion(params, bath, nbar)
            sol = solve_lyapunov(drift, diffusion, assume_hurwitz=True)
            ent = {
                pair: log_negativity(extract_pair(sol.w, pair))
                for pair in BipartitePair
            }
            opt_pair = extract_pair(sol.w, BipartitePair.F1F2)
            rec = replace(
                rec,
                en_f1m1=ent[BipartitePair.F1M1].log_neg,
                en_f2m2=ent[BipartitePair.F2M2].log_neg,
                en_m1m2=ent[BipartitePair.M1M2].log_neg,
                en_f1f2=ent[BipartitePair.F1F2].log_neg,
                theta_f1m1=ent[BipartitePair.F1M1].theta_minus,
                theta_f2m2=ent[BipartitePair.F2M2].theta_minus,
                theta_m1m2=ent[BipartitePair.M1M2].theta_minus,
                theta_f1f2=ent[BipartitePair.F1F2].theta_minus,
                fidelity=teleportation_fidelity(opt_pair),
                fidelity_bound=fidelity_bound(ent[BipartitePair.F1F2].log_neg),
                lyap_residual=sol.residual_norm,
            )
            records.append(rec)
            covariances.append(sol.w)
        except HopcavError as exc:
            records.append(replace(rec, error=str(exc)))
            covariances.append(None)

    if config.branch_policy == "default" and len(records) > 1:
        # default branch: the lowest-|amp| stable one, else the lowest-|amp|
        chosen = next((i for i, r in enumerate(records) if r.stable), 0)
        records = [records[chosen]]
        covariances = [covariances[chosen]]

    return PointResult(records=tuple(records), covariances=tuple(covariances))


def grid_points(config: SweepConfig) -> list[dict[str, float]]:
    """Row-major list of axis-override dicts for the configured grid."""
    if not config.axes:
        return [{}]
    names = [a.name for a in config.axes]
    return [
        dict(zip(names, combo))
        for combo in itertools.product(*(a.values for a in config.axes))
    ]


def _records_for_point(args) -> tuple[ResultRecord, ...]:
    config, overrides = args
    return run_point(config, overrides).records


@dataclass(frozen=True)
class SweepResult:
    records: tuple[ResultRecord, ...]
    residual_failure: bool

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.records]


def run_sweep(config: SweepConfig, workers: int = 1) -> SweepResult:
    """Evaluate the whole grid; rows come out in row-major grid order (with
    branch rows kept adjacent) regardless of the worker count."""
    points = grid_points(config)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(
                _records_for_point,
                [(config, p) for p in points],
                chunksize=max(1, len(points) // (8 * workers)),
            )
            per_point = list(chunks)
    else:
        per_point = [_records_for_point((config, p)) for p in points]

    records = tuple(itertools.chain.from_iterable(per_point))
    bad = any(
        r.stable and (r.lyap_residual is None or r.lyap_residual >= RESIDUAL_GATE)
        for r in records
    )
    return SweepResult(records=records, residual_failure=bad)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if np.isnan(v):
        return ""
    return format(v, ".12g")


def write_csv(records, stream, header_lines=()) -> None:
    """Emit records as CSV: '#' header lines, one column-name row, then data.

    Floats use 12 significant digits and missing values are empty cells, so
    repeated runs of the same configuration are byte-identical.
    """
    for line in header_lines:
        stream.write(f"# {line}\n")
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for rec in records:
        stream.write(
            ",".join(
                rec.error.replace(",", ";").replace("\n", " ") if col == "error"
                else _fmt(getattr(rec, col))
                for col in CSV_COLUMNS
            )
            + "\n"
        )


def csv_text(records, header_lines=()) -> str:
    buf = io.StringIO()
    write_csv(records, buf, header_lines)
    return buf.getvalue()
