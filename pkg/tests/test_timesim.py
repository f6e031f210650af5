import math
from dataclasses import replace

import numpy as np
import pytest

from cbwave import fringes
from cbwave.chain import ArmSpec, canonical_cascade, set_path, single_mzi
from cbwave.errors import InvalidArgument, ValidationError
from cbwave.scenario_io import preset
from cbwave.timesim import Event, Scenario, arm_phase, event_timeline, sample_times, simulate


def test_arm_phase_examples():
    assert arm_phase(ArmSpec(freq_offset_hz=1.0), 1.0) == pytest.approx(2 * math.pi, abs=1e-15)
    arm = ArmSpec(initial_phase_rad=0.7)
    np.testing.assert_array_equal(arm_phase(arm, np.linspace(0, 9, 10)), 0.7)
    flipped = arm_phase(ArmSpec(freq_offset_hz=1.0), 3.0, [(2.0, "freq_offset", -1.0)])
    assert flipped == pytest.approx(2 * math.pi * (2 - 1), abs=1e-14)


def test_arm_phase_initial_phase_change():
    arm = ArmSpec(freq_offset_hz=0.5, initial_phase_rad=0.1)
    got = arm_phase(arm, np.array([1.0, 3.0]), [(2.0, "initial_phase", 1.0)])
    np.testing.assert_allclose(got, [0.1 + math.pi, 1.0 + 3 * math.pi], atol=1e-14)
    with pytest.raises(InvalidArgument):
        arm_phase(arm, -1.0)


def test_grid_is_inclusive():
    t = sample_times(preset("cbw"))
    assert len(t) == 12001 and t[0] == 0 and t[-1] == 12


def test_cbw_doubled_fringe():
    ts = simulate(preset("cbw"))
    t = ts.times_s
    assert np.max(np.abs(ts["I_D"] - 0.5 * (1 - np.cos(4 * np.pi * t)))) <= 1e-12
    assert np.max(np.abs(ts["I_C"] - 0.5 * (1 + np.cos(4 * np.pi * t)))) <= 1e-12
    assert ts["I_D"][0] == pytest.approx(0, abs=1e-15) and ts["I_C"][0] == pytest.approx(1, abs=1e-15)


def test_first_stage_monitor_follows_single_mzi_law():
    s = replace(preset("cbw"), input_intensity=3.0)
    ts = simulate(s)
    t = ts.times_s
    assert np.max(np.abs(ts["I_A"] - 1.5 * (1 - np.cos(2 * np.pi * t)))) <= 1e-12
    assert np.max(np.abs(ts["I_B"] - 1.5 * (1 + np.cos(2 * np.pi * t)))) <= 1e-12


@pytest.mark.parametrize("name", ["cbw", "usckd", "fig3a", "fig3b", "fig3c", "mzi"])
def test_energy_conservation(name):
    ts = simulate(preset(name))
    i0 = ts.input_intensity
    cd = ts["I_C"] + ts["I_D"]
    ab = ts["I_A"] + ts["I_B"]
    assert np.max(np.abs(cd[ts.lossless] - i0)) <= 1e-12
    assert np.max(np.abs(ab[ts.lossless_first] - i0)) <= 1e-12
    assert ts["I_D"].min() >= 0 and ts["I_D"].max() <= i0 * (1 + 1e-9)


def test_usckd_frozen():
    ts = simulate(preset("usckd"))
    assert np.max(np.abs(ts["I_C"] - 1)) <= 1e-12


def test_blocked_coupling_residue():
    s = Scenario(set_path(canonical_cascade(1, 1.0), "coupling1.upper", "transmission", 0), t_end_s=3)
    ts = simulate(s)
    expected = (1 / 8) * (1 - np.cos(4 * np.pi * ts.times_s))
    assert np.max(np.abs(ts["I_D"] - expected)) <= 1e-12


def test_blocked_coupling_spectrum():
    win = simulate(preset("fig3a")).window(4.0, 8.0)
    assert len(win) == 4000
    assert fringes.frequency_component(win, "I_D", 1.0) <= 1e-9
    assert fringes.frequency_component(win, "I_D", 2.0) == pytest.approx(1 / 8, abs=1e-9)


@pytest.mark.parametrize("t_up", [0.8, 0.6, 0.3])
def test_imbalanced_blocked_coupling_has_fundamental(t_up):
    # Expanding |E_D|^2 = (1/8)(1 - cos d)(a^2 + b^2 + 2ab cos d) gives a cos d
    # coefficient of -(a - b)^2 / 8 for first-stage arm amplitudes a, b.
    s = preset("fig3a")
    s = replace(s, chain=set_path(s.chain, "stage1.upper", "transmission", t_up))
    win = simulate(s).window(4.0, 8.0)
    assert fringes.frequency_component(win, "I_D", 1.0) == pytest.approx((1 - t_up) ** 2 / 8, abs=1e-9)


def test_fig3c_window_frozen_and_phase_continuous():
    ts = simulate(preset("fig3c"))
    w = ts.window(4.0, 8.0)
    assert np.max(np.abs(w["I_C"] - 1)) <= 1e-12
    assert np.max(w["I_D"]) <= 1e-12
    after = ts.window(8.0, 12.1)
    assert np.max(np.abs(after["I_D"] - 0.5 * (1 - np.cos(4 * np.pi * after.times_s)))) <= 1e-12
    # no jumps larger than the steepest fringe slope allows
    assert np.max(np.abs(np.diff(ts["I_A"]))) < 2 * np.pi * 1e-3


def test_doubling_rate_is_bit_identical_at_shared_times():
    s = preset("fig3c")
    coarse = simulate(s)
    fine = simulate(replace(s, sample_rate_hz=2000.0))
    np.testing.assert_array_equal(fine.times_s[::2], coarse.times_s)
    for ch in ("I_A", "I_B", "I_C", "I_D"):
        np.testing.assert_array_equal(fine[ch][::2], coarse[ch])


def test_event_applies_at_first_sample_not_before():
    s = Scenario(canonical_cascade(1, 1.0), (Event(0.0105, "coupling1.upper", "transmission", 0),),
                 t_end_s=0.1)
    ts = simulate(s)
    assert list(ts.lossless[9:13]) == [True, True, False, False]


def test_deterministic():
    a, b = simulate(preset("fig3b")), simulate(preset("fig3b"))
    for ch in a.channels:
        np.testing.assert_array_equal(a[ch], b[ch])


def test_timeline():
    assert event_timeline(preset("fig3a")) == [(4.0, "block coupling1.upper"),
                                               (8.0, "unblock coupling1.upper")]
    assert event_timeline(preset("cbw")) == []
    assert event_timeline(preset("fig3c"))[0] == (4.0, "set stage2.upper freq_offset=+1 Hz")


@pytest.mark.parametrize("kwargs, needle", [
    ({"events": (Event(5, "stage1.upper", "transmission", 0), Event(2, "stage1.upper", "transmission", 1))},
     "events must be sorted"),
    ({"events": (Event(20, "stage1.upper", "transmission", 0),)}, "outside"),
    ({"events": (Event(1, "stage9.upper", "transmission", 0),)}, "does not resolve"),
    ({"t_end_s": 0.0}, "before"),
    ({"sample_rate_hz": 0.01, "t_end_s": 1.0}, "fewer than 2"),
    ({"input_intensity": 0.0}, "input_intensity"),
])
def test_invalid_scenarios(kwargs, needle):
    s = replace(Scenario(single_mzi(1.0), t_end_s=5), **kwargs)
    with pytest.raises(ValidationError) as exc:
        simulate(s)
    assert any(needle in e for e in exc.value.errors)
    with pytest.raises(ValidationError):
        event_timeline(s)


def test_reference_arm_blockage_leaves_port_d_flat():
    # With one arm of either stage blocked, the light entering stage 2's second
    # splitter comes from a single arm, so stage 2 cannot interfere: I_D = I0/4.
    ts = simulate(preset("fig3b"))
    for t0, t1 in ((3.0, 5.0), (7.0, 9.0)):
        w = ts.window(t0, t1)
        assert np.max(np.abs(w["I_D"] - 0.25)) <= 1e-12
    from cbwave.chain import path_sum_oracle
    from cbwave.timesim import chain_at, stage_phases
    s = preset("fig3b")
    for t in (3.3, 4.71, 7.05, 8.9):
        e_d = path_sum_oracle(chain_at(s, t), stage_phases(s, np.array([t]))[0], (1, 0))[1]
        assert abs(e_d) ** 2 == pytest.approx(0.25, abs=1e-12)
