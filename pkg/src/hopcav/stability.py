"""Stability analysis: the two sign conditions of the collective-mode model
and grid maps comparing them against eigenvalue tests.

For the collective quartic with positive rates, the two nontrivial
Routh-Hurwitz conditions are

    s1 = omega_m (kappa^2 + d'^2) - G^2 d'
    s2 = 2 gamma_m kappa { [kappa^2 + (omega_m - d')^2][kappa^2 + (omega_m + d')^2]
         + gamma_m [ (gamma_m + 2 kappa)(kappa^2 + d'^2) + 2 kappa omega_m^2 ] }
         + d' omega_m G^2 (gamma_m + 2 kappa)^2

with d' the modified detuning delta + xi.  (s1 > 0 and s2 > 0) is exactly
equivalent to the collective drift (positive sign convention) being Hurwitz;
a violation of s1 signals bistability, a violation of s2 self-oscillation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynamics import build_reduced, figure_drift
from .lyapunov import is_hurwitz
from .params import PhysicalParams
from .steady_state import solve_fixed_detuning


def routh_hurwitz_reduced(omega_m: float, gamma_m: float, kappa: float,
                          coupling: float, delta_eff: float) -> tuple[float, float]:
    """The two stability scalars (s1, s2) of the collective model at modified
    detuning ``delta_eff``."""
    g2 = coupling * coupling
    d2 = delta_eff * delta_eff
    k2 = kappa * kappa
    s1 = omega_m * (k2 + d2) - g2 * delta_eff
    s2 = 2.0 * gamma_m * kappa * (
        (k2 + (omega_m - delta_eff) ** 2) * (k2 + (omega_m + delta_eff) ** 2)
        + gamma_m * ((gamma_m + 2.0 * kappa) * (k2 + d2) + 2.0 * kappa * omega_m * omega_m)
    ) + delta_eff * omega_m * g2 * (gamma_m + 2.0 * kappa) ** 2
    return s1, s2


@dataclass(frozen=True)
class StabilityReport:
    """Per-point stability verdicts; detunings quoted in omega_m units using
    the positive-on-the-cooling-side axis convention."""

    delta: float
    xi: float
    s1: float
    s2: float
    hurwitz_reduced: bool
    hurwitz_full: bool
    agree: bool


def stability_point(params: PhysicalParams, delta: float, xi: float,
                    detuning_sign: str = "positive") -> StabilityReport:
    """Evaluate both stability routes at one (delta, xi) point given in
    omega_m units."""
    omega_m = params.mech_freq[0]
    p = params.with_(hop_strength=xi * omega_m)
    d = delta * omega_m
    steady = solve_fixed_detuning(p, -d, -d)
    coupling = steady.eff_coupling[0]

    s1, s2 = routh_hurwitz_reduced(
        omega_m, p.mech_damping[0], p.cavity_decay[0], coupling, d + p.hop_strength
    )
    reduced = build_reduced(p, coupling, d, detuning_sign=detuning_sign)
    hur_red, _ = is_hurwitz(reduced.drift)
    hur_full, _ = is_hurwitz(figure_drift(p, steady, detuning_sign))
    return StabilityReport(
        delta=delta,
        xi=xi,
        s1=s1,
        s2=s2,
        hurwitz_reduced=hur_red,
        hurwitz_full=hur_full,
        agree=(s1 > 0.0 and s2 > 0.0) == hur_red,
    )


def stability_map(params: PhysicalParams, delta_values, xi_values,
                  detuning_sign: str = "positive") -> list[StabilityReport]:
    """Rectangular stability map over (delta, xi) grids in omega_m units.

    Points are evaluated independently and returned in row-major grid order;
    unstable points are data, not errors.
    """
    if not params.is_symmetric:
        raise ValueError("stability maps use the collective model; cavities must be identical")
    return [
        stability_point(params, float(d), float(x), detuning_sign)
        for d in delta_values
        for x in xi_values
    ]
