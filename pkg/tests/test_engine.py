import math

import numpy as np
import pytest

from hopcav.engine import (
    AxisSpec,
    BathSpec,
    CSV_COLUMNS,
    SweepConfig,
    csv_text,
    grid_points,
    run_point,
    run_sweep,
)
from hopcav.errors import ConfigError
from hopcav.measures import symplectic_eigenvalues
from hopcav.params import Detuning, PhysicalParams

TWO_PI = 2.0 * math.pi
WM = TWO_PI * 1e7


def make_params(power=0.05, xi=0.0, delta=1.0, mode="effective"):
    return PhysicalParams.symmetric(
        cavity_length=1e-3,
        mirror_mass=5e-12,
        mech_freq=WM,
        mech_damping=TWO_PI * 100.0,
        cavity_decay=TWO_PI * 14e6,
        laser_wavelength=810e-9,
        drive_power=power,
        bath_temperature=0.4,
        hop_strength=xi * WM,
        detuning=Detuning(mode, (delta * WM, delta * WM)),
    )


def base_config(**kwargs):
    defaults = dict(params=make_params(), nbar_override=836.0)
    defaults.update(kwargs)
    return SweepConfig(**defaults)


class TestRunPoint:
    def test_undriven_point_is_separable(self):
        cfg = base_config(params=make_params(power=0.0, xi=0.0))
        res = run_point(cfg)
        (rec,) = res.records
        assert rec.stable
        assert rec.en_f1m1 == rec.en_f2m2 == rec.en_m1m2 == rec.en_f1f2 == 0.0
        assert rec.coupling_ratio == 0.0

    def test_reference_operating_point(self):
        res = run_point(base_config())
        (rec,) = res.records
        assert rec.stable
        assert rec.en_f1m1 > 0.0
        assert rec.en_f1m1 == pytest.approx(rec.en_f2m2, rel=1e-9)
        assert rec.lyap_residual < 1e-9
        assert res.covariances[0] is not None
        assert symplectic_eigenvalues(res.covariances[0]).min() >= 0.5 - 1e-8

    def test_unstable_point_has_empty_measures(self):
        # 75 mW at detuning ~ one mechanical frequency sits inside the
        # bistable window of the collective model
        cfg = base_config(params=make_params(power=0.075))
        (rec,) = run_point(cfg).records
        assert not rec.stable
        assert rec.en_f1m1 is None
        assert rec.fidelity is None
        assert rec.s1 is not None and rec.s1 < 0.0

    def test_axis_overrides(self):
        cfg = base_config(axes=(AxisSpec("delta", (0.5, 1.0)),))
        rec = run_point(cfg, {"delta": 0.5}).records[0]
        assert rec.delta == 0.5
        rec2 = run_point(cfg, {"delta": 0.5, "xi": 0.25}).records[0]
        assert rec2.xi == 0.25

    def test_nbar_axis_overrides_temperature(self):
        cfg = base_config(nbar_override=None)
        rec = run_point(cfg, {"nbar": 12345.0}).records[0]
        assert rec.nbar == 12345.0

    def test_temperature_axis(self):
        cfg = base_config(nbar_override=None)
        rec = run_point(cfg, {"temperature": 0.4}).records[0]
        assert rec.nbar == pytest.approx(832.96486491733122, rel=1e-12)

    def test_photon_number_axis_with_ideal_bath(self):
        cfg = base_config(bath=BathSpec(photon_number=0.0, correlation="ideal"))
        rec = run_point(cfg, {"photon_number": 0.05}).records[0]
        assert rec.photon_number == 0.05
        assert rec.correlation == pytest.approx(0.229128784747792, rel=1e-12)

    def test_point_errors_are_recorded_inline(self):
        cfg = base_config(bath=BathSpec(photon_number=0.01, correlation=0.5))
        (rec,) = run_point(cfg).records
        assert rec.error != ""
        assert rec.en_f1m1 is None


class TestBranchPolicy:
    # under the sweep-axis convention the solver's bare detuning is the
    # negated axis value, so the 100 mW fold sits at axis value -3.9
    def bare_config(self, policy):
        return base_config(
            params=make_params(power=0.1, delta=-3.9, mode="bare"),
            branch_policy=policy,
        )

    def test_all_branches_emitted(self):
        res = run_point(self.bare_config("all"))
        assert len(res.records) == 3
        amps = [r.amp1 for r in res.records]
        assert amps == sorted(amps)
        assert [r.branch for r in res.records] == [0, 1, 2]

    def test_default_branch_is_lowest_stable(self):
        res_all = run_point(self.bare_config("all"))
        res_def = run_point(self.bare_config("default"))
        assert len(res_def.records) == 1
        stable_branches = [r.branch for r in res_all.records if r.stable]
        expected = stable_branches[0] if stable_branches else 0
        assert res_def.records[0].branch == expected


class TestRunSweep:
    def test_duplicate_point_sweep_is_deterministic(self):
        cfg = base_config(axes=(AxisSpec("delta", (1.0, 1.0)),))
        res = run_sweep(cfg)
        assert len(res.records) == 2
        assert res.records[0] == res.records[1]

    def test_grid_row_major_order(self):
        cfg = base_config(
            axes=(AxisSpec("xi", (0.0, 0.5)), AxisSpec("delta", (0.2, 0.9, 1.4)))
        )
        pts = grid_points(cfg)
        assert pts == [
            {"xi": 0.0, "delta": 0.2},
            {"xi": 0.0, "delta": 0.9},
            {"xi": 0.0, "delta": 1.4},
            {"xi": 0.5, "delta": 0.2},
            {"xi": 0.5, "delta": 0.9},
            {"xi": 0.5, "delta": 1.4},
        ]
        res = run_sweep(cfg)
        assert [(r.xi, r.delta) for r in res.records] == [
            (0.0, 0.2), (0.0, 0.9), (0.0, 1.4), (0.5, 0.2), (0.5, 0.9), (0.5, 1.4),
        ]

    def test_worker_count_does_not_change_output(self):
        cfg = base_config(
            axes=(AxisSpec("xi", (0.0, 0.3)), AxisSpec("delta", (0.4, 0.8, 1.2)))
        )
        serial = run_sweep(cfg, workers=1)
        parallel = run_sweep(cfg, workers=2)
        assert serial.records == parallel.records

    def test_residual_gate_flag(self):
        res = run_sweep(base_config(axes=(AxisSpec("delta", (0.5, 1.0, 1.5)),)))
        assert not res.residual_failure

    def test_pointwise_monotone_in_photon_number(self):
        # squeezed-input family: mirror-cavity entanglement can only drop when
        # the input photon number grows, at every detuning
        cfg = base_config(
            bath=BathSpec(photon_number=0.0, correlation="ideal"),
            axes=(
                AxisSpec("photon_number", (0.0, 0.01, 0.05, 0.1)),
                AxisSpec("delta", tuple(np.linspace(0.2, 1.8, 17))),
            ),
        )
        res = run_sweep(cfg)
        by_n = {}
        for r in res.records:
            by_n.setdefault(r.photon_number, []).append((r.delta, r.en_f1m1))
        ns = sorted(by_n)
        for lo, hi in zip(ns, ns[1:]):
            for (d1, e1), (d2, e2) in zip(by_n[lo], by_n[hi]):
                assert d1 == d2
                assert e2 <= e1 + 1e-12


class TestDetuningSignConvention:
    def test_negative_convention_flips_the_physics(self):
        # the default convention puts the operating point on the cooling side;
        # flipping the sign convention turns the same numbers into a heating
        # configuration that has no steady state at this drive
        pos = run_point(base_config(detuning_sign="positive")).records[0]
        neg = run_point(base_config(detuning_sign="negative")).records[0]
        assert pos.stable
        assert not neg.stable


class TestCsv:
    def test_byte_identical_reruns(self):
        cfg = base_config(axes=(AxisSpec("delta", (0.3, 0.8, 1.3)),))
        a = csv_text(run_sweep(cfg).records, ("note",))
        b = csv_text(run_sweep(cfg).records, ("note",))
        assert a == b
        assert a.startswith("# note\n")

    def test_header_and_missing_cells(self):
        cfg = base_config(params=make_params(power=0.075))  # unstable point
        text = csv_text(run_point(cfg).records)
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        row = lines[1].split(",")
        cols = dict(zip(CSV_COLUMNS, row))
        assert cols["stable"] == "false"
        assert cols["en_f1m1"] == ""
        assert cols["fidelity"] == ""
        assert cols["delta"] == "1"

    def test_twelve_significant_digits(self):
        cfg = base_config()
        text = csv_text(run_point(cfg).records)
        row = dict(zip(CSV_COLUMNS, text.strip().split("\n")[1].split(",")))
        # amplitude carries the full 12 significant digits
        assert len(row["amp1"].replace(".", "").lstrip("0")) >= 11

    def test_lf_line_endings(self):
        text = csv_text(run_point(base_config()).records)
        assert "\r" not in text


class TestValidation:
    def test_too_many_axes(self):
        with pytest.raises(ConfigError):
            base_config(axes=(
                AxisSpec("delta", (0.0, 1.0)),
                AxisSpec("xi", (0.0, 1.0)),
                AxisSpec("power", (0.01, 0.02)),
            ))

    def test_duplicate_axes(self):
        with pytest.raises(ConfigError):
            base_config(axes=(AxisSpec("delta", (0.0, 1.0)), AxisSpec("delta", (2.0, 3.0))))

    def test_axis_needs_two_values(self):
        with pytest.raises(ConfigError):
            AxisSpec("delta", (1.0,))

    def test_axis_range_constructor(self):
        ax = AxisSpec.from_range("delta", 0.0, 2.0, 5)
        assert ax.values == (0.0, 0.5, 1.0, 1.5, 2.0)
        with pytest.raises(ConfigError):
            AxisSpec.from_range("delta", 0.0, math.inf, 5)

    def test_unknown_axis_name(self):
        with pytest.raises(ConfigError):
            AxisSpec("detuning", (0.0, 1.0))

    def test_bad_branch_policy(self):
        with pytest.raises(ConfigError):
            base_config(branch_policy="first")
