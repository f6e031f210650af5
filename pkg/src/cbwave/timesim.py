"""
Time-domain simulation of a chain driven by AOM frequency offsets.

Each arm accumulates phase ``phi0 + 2 pi * integral(df dt)`` from t = 0, so a
frequency change mid-run is phase-continuous. Scheduled events change one
field of one path; a sample at time ``t`` sees every event with ``time <= t``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import chain as chainmod
from .errors import InvalidArgument, ValidationError
from .optics import intensity

DEFAULT_WAVELENGTH_NM = 605.966


@dataclass(frozen=True)
class Event:
    time_s: float
    target: str
    field: str
    value: float


@dataclass(frozen=True)
class Scenario:
    chain: chainmod.Chain
    events: tuple = ()
    t_start_s: float = 0.0
    t_end_s: float = 12.0
    sample_rate_hz: float = 1000.0
    input_intensity: float = 1.0
    wavelength_nm: float = DEFAULT_WAVELENGTH_NM

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))


@dataclass
class TimeSeries:
    """Sampled detector intensities.

    ``lossless`` marks samples where every element of the chain transmits
    fully, ``lossless_first`` those where only the first stage does.
    """

    times_s: np.ndarray
    channels: dict
    input_intensity: float = 1.0
    lossless: np.ndarray = None
    lossless_first: np.ndarray = None

    def __len__(self):
        return len(self.times_s)

    def __getitem__(self, name):
        return self.channels[name]

    def window(self, t0, t1):
        """Samples with ``t0 <= t < t1``."""
        keep = (self.times_s >= t0) & (self.times_s < t1)

        def cut(a):
            return None if a is None else a[keep]

        return TimeSeries(self.times_s[keep], {k: v[keep] for k, v in self.channels.items()},
                          self.input_intensity, cut(self.lossless), cut(self.lossless_first))


def n_samples(t_start, t_end, rate):
    return int(math.floor((t_end - t_start) * rate + 1e-9)) + 1


def sample_times(s):
    n = n_samples(s.t_start_s, s.t_end_s, s.sample_rate_hz)
    return s.t_start_s + np.arange(n) / s.sample_rate_hz


def validate_scenario(s):
    errors = list(chainmod.validate_chain(s.chain))
    for name in ("t_start_s", "t_end_s", "sample_rate_hz", "input_intensity", "wavelength_nm"):
        if not math.isfinite(getattr(s, name)):
            errors.append(f"{name} not finite")
    if errors:
        return errors
    if s.t_start_s < 0:
        errors.append("t_start_s must be >= 0")
    if not s.t_start_s < s.t_end_s:
        errors.append("t_start_s must be before t_end_s")
    if s.sample_rate_hz <= 0:
        errors.append("sample_rate_hz must be positive")
    elif s.t_start_s < s.t_end_s and n_samples(s.t_start_s, s.t_end_s, s.sample_rate_hz) < 2:
        errors.append("sample grid yields fewer than 2 samples")
    if s.input_intensity <= 0:
        errors.append("input_intensity must be positive")
    if s.wavelength_nm <= 0:
        errors.append("wavelength_nm must be positive")
    times = [e.time_s for e in s.events]
    if any(b < a for a, b in zip(times, times[1:])):
        errors.append("events must be sorted")
    for i, e in enumerate(s.events):
        if not (s.t_start_s <= e.time_s <= s.t_end_s):
            errors.append(f"events[{i}]: time {e.time_s} outside [{s.t_start_s}, {s.t_end_s}]")
        try:
            chainmod.set_path(s.chain, e.target, e.field, e.value)
        except InvalidArgument as exc:
            errors.append(f"events[{i}]: {exc}")
    return errors


def arm_phase(arm, t, changes=()):
    """Phase of one arm at time(s) ``t``.

    :param arm: the arm's state at t = 0.
    :param t: seconds, scalar or array, ``>= 0``.
    :param changes: time-ordered ``(time_s, field, value)`` tuples for this arm;
        only ``freq_offset`` and ``initial_phase`` entries matter.
    :return: ``phi0(t) + 2 pi * integral_0^t df``.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise InvalidArgument("arm_phase needs t >= 0")
    cycles = arm.freq_offset_hz * t
    offset = np.full(t.shape, float(arm.initial_phase_rad))
    f = arm.freq_offset_hz
    for when, name, value in changes:
        if name == "freq_offset":
            cycles = cycles + (value - f) * np.maximum(t - when, 0.0)
            f = value
        elif name == "initial_phase":
            offset = np.where(t >= when, value, offset)
    out = offset + 2.0 * np.pi * cycles
    return out if out.ndim else float(out)


def _arm_changes(s):
    by_path = {}
    for e in s.events:
        by_path.setdefault(e.target, []).append((e.time_s, e.field, e.value))
    return by_path


def stage_phases(s, t):
    """Per-stage phase differences (upper minus lower), shape ``t.shape + (n_stages,)``."""
    changes = _arm_changes(s)
    cols = []
    for k, stage in enumerate(s.chain.stages, start=1):
        up = arm_phase(stage.upper, t, changes.get(f"stage{k}.upper", ()))
        lo = arm_phase(stage.lower, t, changes.get(f"stage{k}.lower", ()))
        cols.append(np.asarray(up) - np.asarray(lo))
    return np.stack(cols, axis=-1)


def chain_at(s, t):
    """Chain with every event of time ``<= t`` applied."""
    c = s.chain
    for e in s.events:
        if e.time_s <= t:
            c = chainmod.set_path(c, e.target, e.field, e.value)
    return c


def simulate(s):
    """Sample ``I_A, I_B`` (after stage 1) and ``I_C, I_D`` (chain output)."""
    errors = validate_scenario(s)
    if errors:
        raise ValidationError(errors)
    t = sample_times(s)
    phases = stage_phases(s, t)
    applied = np.searchsorted(np.array([e.time_s for e in s.events], dtype=float), t, side="right")
    out = {name: np.empty(len(t)) for name in ("I_A", "I_B", "I_C", "I_D")}
    lossless = np.empty(len(t), dtype=bool)
    lossless_first = np.empty(len(t), dtype=bool)
    c = s.chain
    done = 0
    for k in np.unique(applied):
        while done < k:
            e = s.events[done]
            c = chainmod.set_path(c, e.target, e.field, e.value)
            done += 1
        idx = np.nonzero(applied == k)[0]
        prefixes = chainmod.monitor_matrices(c, phases[idx])
        first, last = prefixes[0], prefixes[-1]
        for name, m, port in (("I_A", first, 0), ("I_B", first, 1), ("I_C", last, 0), ("I_D", last, 1)):
            out[name][idx] = s.input_intensity * intensity(m[:, port, 0])
        lossless[idx] = c.lossless
        lossless_first[idx] = c.stages[0].lossless
    return TimeSeries(t, out, s.input_intensity, lossless, lossless_first)


def _describe(e):
    if e.field == "transmission" and e.value == 0.0:
        return f"block {e.target}"
    if e.field == "transmission" and e.value == 1.0:
        return f"unblock {e.target}"
    unit = {"freq_offset": " Hz", "psi": " rad", "initial_phase": " rad"}.get(e.field, "")
    return f"set {e.target} {e.field}={e.value:+g}{unit}"


def event_timeline(s):
    errors = validate_scenario(s)
    if errors:
        raise ValidationError(errors)
    return [(e.time_s, _describe(e)) for e in s.events]
