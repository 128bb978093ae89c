"""Semiclassical fixed points of the driven coupled cavities.

The working point is the solution of

    0 = -(kappa_j + i Delta_j) a_j + i xi a_k + E_j
    q_j = g_j |a_j|^2 / omega_mj,    p_j = 0

with the effective detuning Delta_j = Delta0_j - g_j^2 |a_j|^2 / omega_mj in
bare mode.  ``solve_fixed_detuning`` evaluates the closed form at given
effective detunings; ``solve_self_consistent`` finds every branch of the
nonlinear bare-detuning problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize

from .errors import ConvergenceFailureError, DegenerateConfigurationError
from .params import PhysicalParams, derive_coupling, drive_amplitude, laser_angular_freq

RESIDUAL_TOL = 1e-10      # relative to the drive amplitude
DUPLICATE_TOL = 1e-8      # branch dedup threshold on |delta a|
N_SEEDS = 8
DAMPING = 0.5


@dataclass(frozen=True)
class SteadyState:
    """One semiclassical working point of the coupled cavities."""

    amp: tuple[complex, complex]          # intracavity amplitudes a_j
    displacement: tuple[float, float]     # static mirror displacements q_j
    momentum: tuple[float, float]         # p_j, exactly zero
    eff_detuning: tuple[float, float]     # rad/s, as entering the Langevin drift
    eff_coupling: tuple[float, float]     # rad/s, G_j = sqrt(2) g_j |a_j|
    alpha: tuple[complex, complex]        # kappa_j + i Delta_j
    residual: float                       # fixed-point residual / |E|
    branch: int = 0


def effective_coupling(bare_coupling: float, amp: complex) -> float:
    """Field-enhanced coupling G = sqrt(2) * g * |a|; the global phase of the
    amplitude is rotated away."""
    return math.sqrt(2.0) * bare_coupling * abs(amp)


def _drive_amps(params: PhysicalParams) -> tuple[float, float]:
    omega_l = laser_angular_freq(params.laser_wavelength)
    return tuple(
        drive_amplitude(params.drive_power[i], params.cavity_decay[i], omega_l)
        for i in (0, 1)
    )


def _closed_form_amps(params, e1, e2, delta1, delta2):
    xi = params.hop_strength
    a1 = complex(params.cavity_decay[0], delta1)
    a2 = complex(params.cavity_decay[1], delta2)
    denom = a1 * a2 + xi * xi
    if abs(denom) < 1e-12 * params.cavity_decay[0] * params.cavity_decay[1]:
        raise DegenerateConfigurationError(
            f"singular steady-state denominator |alpha1*alpha2 + xi^2| = {abs(denom):.3e}"
        )
    amp1 = (a2 * e1 + 1j * xi * e2) / denom
    amp2 = (a1 * e2 + 1j * xi * e1) / denom
    return amp1, amp2, a1, a2


def _residual(params, e1, e2, amp1, amp2, alpha1, alpha2) -> float:
    xi = params.hop_strength
    r1 = -alpha1 * amp1 + 1j * xi * amp2 + e1
    r2 = -alpha2 * amp2 + 1j * xi * amp1 + e2
    scale = max(e1, e2, 1e-300)
    return max(abs(r1), abs(r2)) / scale


def _assemble(params, g, e, amp1, amp2, delta1, delta2, alpha1, alpha2, branch=0):
    q = tuple(
        g[i] * abs(a) ** 2 / params.mech_freq[i] for i, a in enumerate((amp1, amp2))
    )
    coupling = tuple(effective_coupling(g[i], a) for i, a in enumerate((amp1, amp2)))
    return SteadyState(
        amp=(amp1, amp2),
        displacement=q,
        momentum=(0.0, 0.0),
        eff_detuning=(delta1, delta2),
        eff_coupling=coupling,
        alpha=(alpha1, alpha2),
        residual=_residual(params, e[0], e[1], amp1, amp2, alpha1, alpha2),
        branch=branch,
    )


def solve_fixed_detuning(params: PhysicalParams, delta1: float, delta2: float) -> SteadyState:
    """Closed-form working point at given effective detunings (rad/s)."""
    g = tuple(derive_coupling(params, j) for j in (1, 2))
    e = _drive_amps(params)
    amp1, amp2, a1, a2 = _closed_form_amps(params, e[0], e[1], delta1, delta2)
    return _assemble(params, g, e, amp1, amp2, delta1, delta2, a1, a2)


def solve_self_consistent(
    params: PhysicalParams,
    delta01: float,
    delta02: float,
    coupling: tuple[float, float] | None = None,
) -> list[SteadyState]:
    """All fixed points of the bare-detuning problem, sorted by |a_1|.

    More than one returned branch flags optical bistability.  ``coupling``
    overrides the derived single-photon couplings (useful for probing the
    linear limit).
    """
    g = coupling if coupling is not None else tuple(derive_coupling(params, j) for j in (1, 2))
    e = _drive_amps(params)

    if e[0] == 0.0 and e[1] == 0.0:
        a1 = complex(params.cavity_decay[0], delta01)
        a2 = complex(params.cavity_decay[1], delta02)
        return [_assemble(params, g, e, 0j, 0j, delta01, delta02, a1, a2)]

    def detunings(u1, u2):
        return (
            delta01 - g[0] ** 2 * u1 / params.mech_freq[0],
            delta02 - g[1] ** 2 * u2 / params.mech_freq[1],
        )

    def amps_at(u1, u2):
        d1, d2 = detunings(u1, u2)
        return _closed_form_amps(params, e[0], e[1], d1, d2)

    symmetric = (
        params.is_symmetric
        and delta01 == delta02
        and g[0] == g[1]
        and e[0] == e[1]
    )

    u_cap = (max(e) / min(params.cavity_decay)) ** 2  # |a|^2 cannot exceed resonance
    candidates: list[tuple[complex, complex]] = []

    if symmetric:
        # scalar photon-number equation h(u) = u (kappa^2 + (d0 - b u - xi)^2) - E^2
        kap = params.cavity_decay[0]
        xi = params.hop_strength
        b = g[0] ** 2 / params.mech_freq[0]

        def h(u):
            d = delta01 - b * u - xi
            return u * (kap * kap + d * d) - e[0] ** 2

        grid = np.linspace(0.0, 1.05 * u_cap, 4001)
        vals = h(grid)
        roots = []
        for i in range(len(grid) - 1):
            if vals[i] == 0.0:
                roots.append(grid[i])
            elif vals[i] * vals[i + 1] < 0.0:
                roots.append(optimize.brentq(h, grid[i], grid[i + 1], xtol=1e-300, rtol=1e-15))
        if vals[-1] == 0.0:
            roots.append(grid[-1])
        for u in roots:
            amp1, amp2, _, _ = amps_at(u, u)
            candidates.append((amp1, amp2))

    # damped fixed-point iteration from seeds spanning [0, u_cap], followed by
    # a multivariate root refinement; covers the asymmetric case and provides
    # an independent second route for the symmetric one
    for u0 in np.linspace(0.0, u_cap, N_SEEDS):
        amp1, amp2 = 0j, 0j
        try:
            amp1, amp2, _, _ = amps_at(u0, u0)
        except DegenerateConfigurationError:
            continue
        ok = True
        for _ in range(400):
            try:
                n1, n2, _, _ = amps_at(abs(amp1) ** 2, abs(amp2) ** 2)
            except DegenerateConfigurationError:
                ok = False
                break
            step = max(abs(n1 - amp1), abs(n2 - amp2))
            amp1 = (1.0 - DAMPING) * amp1 + DAMPING * n1
            amp2 = (1.0 - DAMPING) * amp2 + DAMPING * n2
            if step < 1e-13 * max(1.0, abs(amp1), abs(amp2)):
                break
        if not ok:
            continue

        def fun(v):
            c1 = complex(v[0], v[1])
            c2 = complex(v[2], v[3])
            d1, d2 = detunings(abs(c1) ** 2, abs(c2) ** 2)
            al1 = complex(params.cavity_decay[0], d1)
            al2 = complex(params.cavity_decay[1], d2)
            r1 = -al1 * c1 + 1j * params.hop_strength * c2 + e[0]
            r2 = -al2 * c2 + 1j * params.hop_strength * c1 + e[1]
            return [r1.real, r1.imag, r2.real, r2.imag]

        sol = optimize.root(fun, [amp1.real, amp1.imag, amp2.real, amp2.imag], method="hybr")
        if sol.success:
            candidates.append((complex(sol.x[0], sol.x[1]), complex(sol.x[2], sol.x[3])))
        else:
            candidates.append((amp1, amp2))

    branches: list[SteadyState] = []
    best = math.inf
    for amp1, amp2 in candidates:
        d1, d2 = detunings(abs(amp1) ** 2, abs(amp2) ** 2)
        al1 = complex(params.cavity_decay[0], d1)
        al2 = complex(params.cavity_decay[1], d2)
        res = _residual(params, e[0], e[1], amp1, amp2, al1, al2)
        best = min(best, res)
        if res >= RESIDUAL_TOL:
            continue
        dup = any(
            max(abs(amp1 - s.amp[0]), abs(amp2 - s.amp[1]))
            < DUPLICATE_TOL * max(1.0, abs(amp1), abs(amp2))
            for s in branches
        )
        if not dup:
            branches.append(_assemble(params, g, e, amp1, amp2, d1, d2, al1, al2))

    if not branches:
        raise ConvergenceFailureError(
            f"no self-consistent steady state converged (best residual {best:.3e})",
            best_residual=best,
        )
    branches.sort(key=lambda s: abs(s.amp[0]))
    return [replace(s, branch=i) for i, s in enumerate(branches)]
