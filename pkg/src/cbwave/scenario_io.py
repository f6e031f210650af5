"""
Scenario documents (JSON), figure presets and CSV time-series tables.

Document layout::

    {
      "wavelength_nm": 605.966, "input_intensity": 1.0,
      "sample_rate_hz": 1000, "t_start_s": 0, "t_end_s": 12,
      "chain": [
        {"mzi": {"upper": {"df_hz": 1, "phi0_rad": 0, "t": 1}, "lower": {...}}},
        {"coupling": {"psi_rad": 0, "t_upper": 1, "t_lower": 1}},
        {"mzi": {...}}
      ],
      "events": [{"t_s": 4, "path": "coupling1.upper", "field": "transmission", "value": 0}]
    }

Only ``chain`` is required; other keys fall back to the preset defaults.
"""

import io
import json
import math

import numpy as np

from .chain import ArmSpec, Chain, CouplingSection, MziStage, canonical_cascade, single_mzi
from .errors import InvalidArgument, ValidationError
from .timesim import DEFAULT_WAVELENGTH_NM, Event, Scenario, TimeSeries, validate_scenario

PRESETS = ("mzi", "cbw", "usckd", "fig3a", "fig3b", "fig3c", "cascade")

_TOP_DEFAULTS = {
    "wavelength_nm": DEFAULT_WAVELENGTH_NM,
    "input_intensity": 1.0,
    "sample_rate_hz": 1000.0,
    "t_start_s": 0.0,
    "t_end_s": 12.0,
}
_ARM_KEYS = {"df_hz": 0.0, "phi0_rad": 0.0, "t": 1.0}
_COUPLING_KEYS = {"psi_rad": 0.0, "t_upper": 1.0, "t_lower": 1.0}
CSV_COLUMNS = ("t", "I_A", "I_B", "I_C", "I_D")


# -- presets -----------------------------------------------------------------


def _block(df_up1, df_up2, psi=0.0):
    return Chain((
        MziStage(upper=ArmSpec(freq_offset_hz=df_up1)),
        CouplingSection(psi_rad=psi),
        MziStage(upper=ArmSpec(freq_offset_hz=df_up2)),
    ))


def preset(name, n=None, df_hz=None):
    """Build a named scenario.

    ``cbw`` is one block with upper-arm offsets ``+df/-df`` and psi = 0;
    ``usckd`` uses ``+df/+df``. ``fig3a`` blocks the coupling psi-path over
    4-8 s; ``fig3b`` blocks the first then the second stage's reference arm
    (3-5 s, 7-9 s); ``fig3c`` flips the second stage to ``+df`` over 4-8 s.
    ``mzi`` is a lone stage over 5 s and ``cascade`` needs ``n`` blocks.
    All run 12 s at 1 kHz unless noted.
    """
    df = 1.0 if df_hz is None else float(df_hz)
    if name == "mzi":
        return Scenario(single_mzi(df), t_end_s=5.0)
    if name == "cascade":
        if n is None:
            raise InvalidArgument("preset 'cascade' needs n")
        return Scenario(canonical_cascade(int(n), df))
    if name not in PRESETS:
        raise InvalidArgument(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    if name == "usckd":
        return Scenario(_block(df, df))
    events = {
        "cbw": (),
        "fig3a": (Event(4.0, "coupling1.upper", "transmission", 0.0),
                  Event(8.0, "coupling1.upper", "transmission", 1.0)),
        "fig3b": (Event(3.0, "stage1.lower", "transmission", 0.0),
                  Event(5.0, "stage1.lower", "transmission", 1.0),
                  Event(7.0, "stage2.lower", "transmission", 0.0),
                  Event(9.0, "stage2.lower", "transmission", 1.0)),
        "fig3c": (Event(4.0, "stage2.upper", "freq_offset", df),
                  Event(8.0, "stage2.upper", "freq_offset", -df)),
    }[name]
    return Scenario(_block(df, -df), events)


# -- JSON documents ----------------------------------------------------------


def _num(obj, key, default, path, errors, lo=None, hi=None):
    value = obj.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors.append(f"{path}.{key}: expected a number, got {value!r}")
        return default
    if not math.isfinite(value):
        errors.append(f"{path}.{key}: {value} not finite")
        return default
    if lo is not None and not lo <= value <= hi:
        errors.append(f"{path}.{key}: {value} out of [{lo:g},{hi:g}]")
    return float(value)


def _unknown_keys(obj, allowed, path, errors):
    for key in obj:
        if key not in allowed:
            errors.append(f"{path}: unknown key {key!r}")


def _parse_arm(obj, path, errors):
    if not isinstance(obj, dict):
        errors.append(f"{path}: expected an object")
        return ArmSpec()
    _unknown_keys(obj, _ARM_KEYS, path, errors)
    return ArmSpec(
        freq_offset_hz=_num(obj, "df_hz", 0.0, path, errors),
        initial_phase_rad=_num(obj, "phi0_rad", 0.0, path, errors),
        transmission=_num(obj, "t", 1.0, path, errors, 0.0, 1.0),
    )


def _parse_element(obj, path, errors):
    if not isinstance(obj, dict) or len(obj) != 1 or next(iter(obj)) not in ("mzi", "coupling"):
        errors.append(f"{path}: expected {{\"mzi\": ...}} or {{\"coupling\": ...}}")
        return None
    kind, body = next(iter(obj.items()))
    path = f"{path}.{kind}"
    if not isinstance(body, dict):
        errors.append(f"{path}: expected an object")
        return None
    if kind == "mzi":
        _unknown_keys(body, ("upper", "lower"), path, errors)
        return MziStage(_parse_arm(body.get("upper", {}), path + ".upper", errors),
                        _parse_arm(body.get("lower", {}), path + ".lower", errors))
    _unknown_keys(body, _COUPLING_KEYS, path, errors)
    return CouplingSection(
        psi_rad=_num(body, "psi_rad", 0.0, path, errors),
        upper_transmission=_num(body, "t_upper", 1.0, path, errors, 0.0, 1.0),
        lower_transmission=_num(body, "t_lower", 1.0, path, errors, 0.0, 1.0),
    )


def _parse_event(obj, path, errors):
    if not isinstance(obj, dict):
        errors.append(f"{path}: expected an object")
        return None
    _unknown_keys(obj, ("t_s", "path", "field", "value"), path, errors)
    for key in ("t_s", "path", "field", "value"):
        if key not in obj:
            errors.append(f"{path}: missing {key!r}")
    if not isinstance(obj.get("path", ""), str) or not isinstance(obj.get("field", ""), str):
        errors.append(f"{path}: path and field must be strings")
        return None
    return Event(_num(obj, "t_s", 0.0, path, errors), obj.get("path", ""),
                 obj.get("field", ""), _num(obj, "value", 0.0, path, errors))


def scenario_from_dict(doc):
    """Validate a decoded document; raise :class:`ValidationError` listing every problem."""
    errors = []
    if not isinstance(doc, dict):
        raise ValidationError(["document root must be an object"])
    _unknown_keys(doc, set(_TOP_DEFAULTS) | {"chain", "events"}, "document", errors)
    top = {k: _num(doc, k, v, "document", errors) for k, v in _TOP_DEFAULTS.items()}
    raw_chain = doc.get("chain")
    if not isinstance(raw_chain, list) or not raw_chain:
        errors.append("chain: expected a non-empty array")
        raw_chain = []
    elements = [_parse_element(e, f"chain[{i}]", errors) for i, e in enumerate(raw_chain)]
    raw_events = doc.get("events", [])
    if not isinstance(raw_events, list):
        errors.append("events: expected an array")
        raw_events = []
    events = [_parse_event(e, f"events[{i}]", errors) for i, e in enumerate(raw_events)]
    if errors:
        raise ValidationError(errors)
    s = Scenario(Chain(tuple(elements)), tuple(events), **top)
    errors = validate_scenario(s)
    if errors:
        raise ValidationError(errors)
    return s


def parse_scenario(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError([f"JSON syntax error: {exc}"]) from None
    return scenario_from_dict(doc)


def scenario_to_dict(s):
    def arm(a):
        return {"df_hz": a.freq_offset_hz, "phi0_rad": a.initial_phase_rad, "t": a.transmission}

    chain = []
    for e in s.chain.elements:
        if isinstance(e, MziStage):
            chain.append({"mzi": {"upper": arm(e.upper), "lower": arm(e.lower)}})
        else:
            chain.append({"coupling": {"psi_rad": e.psi_rad, "t_upper": e.upper_transmission,
                                       "t_lower": e.lower_transmission}})
    return {
        "wavelength_nm": s.wavelength_nm,
        "input_intensity": s.input_intensity,
        "sample_rate_hz": s.sample_rate_hz,
        "t_start_s": s.t_start_s,
        "t_end_s": s.t_end_s,
        "chain": chain,
        "events": [{"t_s": e.time_s, "path": e.target, "field": e.field, "value": e.value}
                   for e in s.events],
    }


def serialize_scenario(s):
    return json.dumps(scenario_to_dict(s), indent=2)


# -- CSV ---------------------------------------------------------------------


def write_csv(ts):
    """Header ``t,I_A,I_B,I_C,I_D`` then one row per sample, 9 significant digits."""
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    cols = [ts.times_s] + [ts.channels[c] for c in CSV_COLUMNS[1:]]
    for row in zip(*cols):
        buf.write(",".join(f"{v:.8e}" for v in row) + "\n")
    return buf.getvalue()


def read_csv(text):
    """Parse a table written by :func:`write_csv`.

    The input intensity is not stored in the table; it is recovered as the
    largest per-sample port sum.
    """
    lines = text.strip("\n").split("\n")
    header = lines[0].split(",")
    if not header or header[0] != "t":
        raise InvalidArgument("CSV must start with a 't' column")
    try:
        data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]], dtype=float)
    except ValueError as exc:
        raise InvalidArgument(f"bad CSV value: {exc}") from None
    if data.ndim != 2 or data.shape[1] != len(header):
        raise InvalidArgument("CSV rows must match the header column count")
    channels = {name: data[:, i] for i, name in enumerate(header) if i}
    sums = [channels[a] + channels[b] for a, b in (("I_A", "I_B"), ("I_C", "I_D"))
            if a in channels and b in channels]
    i0 = float(max(np.max(s) for s in sums)) if sums else 1.0
    return TimeSeries(data[:, 0], channels, i0)
