"""Fringe metrics on sampled intensity traces."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, NoModulation, UndefinedVisibility, WindowTooShort

HYSTERESIS_FRACTION = 0.01


@dataclass(frozen=True)
class PeriodEstimate:
    period_s: float
    crossings_used: int
    uncertainty_s: float


@dataclass(frozen=True)
class WavelengthQuery:
    lambda0_nm: float
    order: int = 1
    kind: str = "cbw"


def _channel(ts, channel):
    try:
        return np.asarray(ts.channels[channel], dtype=float)
    except KeyError:
        raise InvalidArgument(f"no channel {channel!r}; have {sorted(ts.channels)}") from None


def _sample_interval(times):
    return float((times[-1] - times[0]) / (len(times) - 1))


def mean_crossings(times, signal, band):
    """Interpolated times where ``signal`` crosses zero, debounced by ``band``.

    A crossing only counts once the signal has left the ``[-band/2, band/2]``
    strip on the far side, so ripple around the mean level is ignored.
    """
    half = band / 2.0
    state = np.where(signal > half, 1, np.where(signal < -half, -1, 0))
    nz = np.nonzero(state)[0]
    if len(nz) < 2:
        return np.array([])
    switch = nz[1:][state[nz[1:]] != state[nz[:-1]]]
    crossings = []
    for j in switch:
        rising = state[j] > 0
        k = j - 1
        while k > 0 and ((signal[k] > 0) if rising else (signal[k] < 0)):
            k -= 1
        x0, x1 = signal[k], signal[k + 1]
        frac = 0.0 if x1 == x0 else -x0 / (x1 - x0)
        crossings.append(times[k] + frac * (times[k + 1] - times[k]))
    return np.array(crossings)


def estimate_period(ts, channel):
    """Modulation period from mean-level crossings.

    Period is twice the mean crossing spacing. When the crossing count allows,
    the span is trimmed to an even number of half-periods so the first and
    last crossing share a direction and a biased mean level cancels out.
    """
    s = _channel(ts, channel)
    ptp = float(np.ptp(s)) if len(s) else 0.0
    if ptp <= 1e-9 * ts.input_intensity:
        raise NoModulation(f"{channel}: peak-to-peak {ptp:.3g} shows no modulation")
    c = mean_crossings(ts.times_s, s - s.mean(), HYSTERESIS_FRACTION * ptp)
    if len(c) < 2:
        raise WindowTooShort(f"{channel}: only {len(c)} mean crossing(s) in window")
    if len(c) >= 3 and (len(c) - 1) % 2:
        c = c[:-1]
    period = 2.0 * (c[-1] - c[0]) / (len(c) - 1)
    return PeriodEstimate(float(period), len(c), _sample_interval(ts.times_s))


def visibility(ts, channel):
    s = _channel(ts, channel)
    hi, lo = float(s.max()), float(s.min())
    if hi + lo == 0.0:
        raise UndefinedVisibility(f"{channel}: signal is identically zero")
    return (hi - lo) / (hi + lo)


def frequency_component(ts, channel, f_hz):
    """Amplitude of the ``f_hz`` tone, ``(2/T) |sum s(t) exp(-2 pi i f t) dt|``.

    The window is cut to the largest whole number of cycles of ``f_hz``
    counted from the first sample; each sample stands for one interval ``dt``.
    """
    if not f_hz > 0:
        raise InvalidArgument("frequency must be positive")
    s = _channel(ts, channel)
    t = ts.times_s
    if len(t) < 2:
        raise WindowTooShort("need at least two samples")
    dt = _sample_interval(t)
    cycles = math.floor(len(t) * dt * f_hz + 1e-9)
    if cycles < 1:
        raise WindowTooShort(f"window shorter than one cycle of {f_hz} Hz")
    m = min(len(t), int(round(cycles / (f_hz * dt))))
    proj = np.sum(s[:m] * np.exp(-2j * np.pi * f_hz * t[:m]))
    return float(2.0 * abs(proj) / m)


def effective_wavelength(q):
    """``lambda0 / (2 * order)``, the same form for coherence and photonic waves."""
    if q.kind not in ("cbw", "pbw"):
        raise InvalidArgument(f"kind must be 'cbw' or 'pbw', got {q.kind!r}")
    if int(q.order) != q.order or q.order < 1:
        raise InvalidArgument(f"order must be a positive integer, got {q.order!r}")
    if not q.lambda0_nm > 0:
        raise InvalidArgument("lambda0_nm must be positive")
    return q.lambda0_nm / (2 * q.order)
