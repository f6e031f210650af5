"""
Serial chains of Mach-Zehnder stages joined by coupling sections.

A chain alternates :class:`MziStage` and :class:`CouplingSection`, starting and
ending with a stage. Two consecutive stages with opposite arm frequency
offsets and a coupling in between form one asymmetrically coupled block.

Arm naming: in every element the "upper" path sits on port 1 (the slot that
carries the phase in ``diag(1, exp(i phi))``) and the "lower", reference path
on port 0. A stage's phase difference is ``phase(upper) - phase(lower)``, so a
lossless stage reduces exactly to :func:`cbwave.optics.mzi_matrix`.
"""

import cmath
import itertools
import math
import re
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidArgument, UnsupportedSize, ValidationError
from .optics import SQRT_HALF

MAX_ORACLE_SPLITTERS = 12

FIELDS = ("transmission", "psi", "freq_offset", "initial_phase")

_PATH_RE = re.compile(r"^(stage|coupling)(\d+)(?:\.(upper|lower))?$")


@dataclass(frozen=True)
class ArmSpec:
    freq_offset_hz: float = 0.0
    initial_phase_rad: float = 0.0
    transmission: float = 1.0


@dataclass(frozen=True)
class MziStage:
    upper: ArmSpec = field(default_factory=ArmSpec)
    lower: ArmSpec = field(default_factory=ArmSpec)

    @property
    def lossless(self):
        return self.upper.transmission == 1.0 and self.lower.transmission == 1.0


@dataclass(frozen=True)
class CouplingSection:
    psi_rad: float = 0.0
    upper_transmission: float = 1.0
    lower_transmission: float = 1.0

    @property
    def lossless(self):
        return self.upper_transmission == 1.0 and self.lower_transmission == 1.0


@dataclass(frozen=True)
class Chain:
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    @property
    def stages(self):
        return [e for e in self.elements if isinstance(e, MziStage)]

    @property
    def couplings(self):
        return [e for e in self.elements if isinstance(e, CouplingSection)]

    @property
    def n_blocks(self):
        """Number of coupled blocks; ``None`` for an odd stage count."""
        k = len(self.stages)
        return k // 2 if k % 2 == 0 else None

    @property
    def lossless(self):
        return all(e.lossless for e in self.elements)


def single_mzi(freq_offset_hz=0.0):
    return Chain((MziStage(upper=ArmSpec(freq_offset_hz=freq_offset_hz)),))


def canonical_cascade(n, delta_f_hz):
    """``n`` blocks: upper-arm offsets alternate ``+df, -df``, all couplings at psi = 0."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidArgument(f"block count must be a positive integer, got {n!r}")
    elements = []
    for k in range(2 * n):
        if k:
            elements.append(CouplingSection())
        sign = 1.0 if k % 2 == 0 else -1.0
        elements.append(MziStage(upper=ArmSpec(freq_offset_hz=sign * delta_f_hz)))
    return Chain(tuple(elements))


# -- validation --------------------------------------------------------------


def _check_number(errors, where, value, lo=None, hi=None, what="value"):
    if not isinstance(value, (int, float, np.integer, np.floating)) or isinstance(value, bool):
        errors.append(f"{where}: {what} must be a number")
        return
    if not math.isfinite(value):
        errors.append(f"{where}: {what} not finite")
    elif lo is not None and not (lo <= value <= hi):
        errors.append(f"{where}: transmission out of range ({value} not in [{lo},{hi}])")


def validate_chain(chain):
    """Return every invariant violation of ``chain``; an empty list means valid."""
    errors = []
    elements = getattr(chain, "elements", None)
    if elements is None:
        return ["not a chain"]
    if not any(isinstance(e, MziStage) for e in elements):
        errors.append("chain has no MZI stage")
    if elements and not isinstance(elements[0], MziStage):
        errors.append("chain must begin with an MZI stage")
    if elements and not isinstance(elements[-1], MziStage):
        errors.append("chain must end with an MZI stage")
    for i, (a, b) in enumerate(zip(elements, elements[1:])):
        if type(a) is type(b):
            errors.append(f"alternation violated at elements {i} and {i + 1}")
    s = c = 0
    for e in elements:
        if isinstance(e, MziStage):
            s += 1
            for side in ("upper", "lower"):
                arm = getattr(e, side)
                where = f"stage{s}.{side}"
                _check_number(errors, where, arm.freq_offset_hz, what="freq_offset")
                _check_number(errors, where, arm.initial_phase_rad, what="initial_phase")
                _check_number(errors, where, arm.transmission, 0.0, 1.0, "transmission")
        elif isinstance(e, CouplingSection):
            c += 1
            where = f"coupling{c}"
            _check_number(errors, where, e.psi_rad, what="psi")
            _check_number(errors, where + ".upper", e.upper_transmission, 0.0, 1.0, "transmission")
            _check_number(errors, where + ".lower", e.lower_transmission, 0.0, 1.0, "transmission")
        else:
            errors.append(f"unknown element type {type(e).__name__}")
    return errors


def _require_valid(chain):
    errors = validate_chain(chain)
    if errors:
        raise ValidationError(errors)


# -- matrices ----------------------------------------------------------------


def _mul(a, b):
    """Stacked 2x2 product written out entrywise (batch-size independent rounding)."""
    out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    out[..., 0, 0] = a[..., 0, 0] * b[..., 0, 0] + a[..., 0, 1] * b[..., 1, 0]
    out[..., 0, 1] = a[..., 0, 0] * b[..., 0, 1] + a[..., 0, 1] * b[..., 1, 1]
    out[..., 1, 0] = a[..., 1, 0] * b[..., 0, 0] + a[..., 1, 1] * b[..., 1, 0]
    out[..., 1, 1] = a[..., 1, 0] * b[..., 0, 1] + a[..., 1, 1] * b[..., 1, 1]
    return out


def stage_matrix(phi, t_upper=1.0, t_lower=1.0):
    """``BS . diag(t_lower, t_upper e^{i phi}) . BS``, broadcast over ``phi``."""
    e = t_upper * np.exp(1j * np.asarray(phi, dtype=float))
    lo = t_lower + 0j
    out = np.empty(e.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = 0.5 * (lo - e)
    out[..., 0, 1] = 0.5 * (1j * (lo + e))
    out[..., 1, 0] = 0.5 * (1j * (lo + e))
    out[..., 1, 1] = -0.5 * (lo - e)
    return out


def section_matrix(coupling):
    """``diag(t_lower, t_upper e^{i psi})`` for one coupling section."""
    m = np.zeros((2, 2), dtype=complex)
    m[0, 0] = coupling.lower_transmission
    m[1, 1] = coupling.upper_transmission * np.exp(1j * coupling.psi_rad)
    return m


def _phase_array(chain, phases):
    phases = np.asarray(phases, dtype=float)
    n = len(chain.stages)
    if phases.ndim == 0 or phases.shape[-1] != n:
        got = phases.shape[-1] if phases.ndim else 0
        raise InvalidArgument(f"phase assignment needs {n} entries, got {got}")
    if not np.all(np.isfinite(phases)):
        raise InvalidArgument("phase assignment contains non-finite values")
    return phases


def _element_matrices(chain, phases):
    k = 0
    for e in chain.elements:
        if isinstance(e, MziStage):
            yield stage_matrix(phases[..., k], e.upper.transmission, e.lower.transmission)
            k += 1
        else:
            yield np.broadcast_to(section_matrix(e), phases.shape[:-1] + (2, 2))


def monitor_matrices(chain, phases):
    """Prefix products after each element; the last one is the whole chain.

    ``phases`` may carry leading batch dimensions, e.g. one row per time sample.
    """
    _require_valid(chain)
    phases = _phase_array(chain, phases)
    prefixes = []
    acc = None
    for m in _element_matrices(chain, phases):
        acc = np.array(m) if acc is None else _mul(m, acc)
        prefixes.append(acc)
    return prefixes


def chain_matrix(chain, phases):
    return monitor_matrices(chain, phases)[-1]


# -- brute-force oracle ------------------------------------------------------


def _scalar_elements(chain, phases):
    """Flatten the chain into ('bs', None) and ('diag', (d0, d1)) steps."""
    steps = []
    k = 0
    for e in chain.elements:
        if isinstance(e, MziStage):
            d = (complex(e.lower.transmission), e.upper.transmission * cmath.exp(1j * float(phases[k])))
            steps += [("bs", None), ("diag", d), ("bs", None)]
            k += 1
        else:
            d = (complex(e.lower_transmission), e.upper_transmission * cmath.exp(1j * e.psi_rad))
            steps.append(("diag", d))
    return steps


def path_sum_oracle(chain, phases, field_in):
    """Output fields by explicit enumeration of every optical path.

    Each beam splitter either passes a path straight (amplitude ``1/sqrt2``) or
    crosses it (amplitude ``i/sqrt2``); diagonal elements multiply by their
    per-port factor. Amplitudes of all paths ending on a port are summed.
    """
    _require_valid(chain)
    if len(phases) != len(chain.stages):
        raise InvalidArgument(f"phase assignment needs {len(chain.stages)} entries, got {len(phases)}")
    steps = _scalar_elements(chain, phases)
    n_bs = sum(1 for kind, _ in steps if kind == "bs")
    if n_bs > MAX_ORACLE_SPLITTERS:
        raise UnsupportedSize(f"{n_bs} beam splitters exceed oracle bound {MAX_ORACLE_SPLITTERS}")
    straight, cross = complex(SQRT_HALF), 1j * SQRT_HALF
    out = [0j, 0j]
    for port_in, amp_in in enumerate(field_in):
        amp_in = complex(amp_in)
        if amp_in == 0:
            continue
        for choices in itertools.product((False, True), repeat=n_bs):
            port, amp, j = port_in, amp_in, 0
            for kind, d in steps:
                if kind == "bs":
                    if choices[j]:
                        port, amp = 1 - port, amp * cross
                    else:
                        amp = amp * straight
                    j += 1
                else:
                    amp = amp * d[port]
            out[port] += amp
    return np.array(out)


# -- editing -----------------------------------------------------------------


def resolve_path(chain, path):
    """Map a dotted path like ``"stage2.upper"`` to ``(element_index, side)``."""
    m = _PATH_RE.match(path)
    if not m:
        raise InvalidArgument(f"malformed path {path!r}")
    kind, idx, side = m.group(1), int(m.group(2)), m.group(3)
    cls = MziStage if kind == "stage" else CouplingSection
    hits = [i for i, e in enumerate(chain.elements) if isinstance(e, cls)]
    if not 1 <= idx <= len(hits):
        raise InvalidArgument(f"path {path!r} does not resolve: no {kind}{idx}")
    if kind == "stage" and side is None:
        raise InvalidArgument(f"path {path!r} must name an arm (.upper or .lower)")
    return hits[idx - 1], side


def set_path(chain, path, field_name, value):
    """Return a copy of ``chain`` with one field of one path replaced."""
    if field_name not in FIELDS:
        raise InvalidArgument(f"unknown field {field_name!r}")
    value = float(value)
    if not math.isfinite(value):
        raise InvalidArgument(f"{path}.{field_name}: value not finite")
    if field_name == "transmission" and not 0.0 <= value <= 1.0:
        raise InvalidArgument(f"{path}: transmission {value} out of [0,1]")
    i, side = resolve_path(chain, path)
    element = chain.elements[i]
    if isinstance(element, MziStage):
        attr = {"transmission": "transmission", "freq_offset": "freq_offset_hz",
                "initial_phase": "initial_phase_rad"}.get(field_name)
        if attr is None:
            raise InvalidArgument(f"field {field_name!r} does not apply to arm {path!r}")
        arm = replace(getattr(element, side), **{attr: value})
        new = replace(element, **{side: arm})
    elif field_name == "psi":
        if side is not None:
            raise InvalidArgument(f"psi addresses the whole coupling, not {path!r}")
        new = replace(element, psi_rad=value)
    elif field_name == "transmission":
        if side is None:
            raise InvalidArgument(f"transmission needs a coupling side, got {path!r}")
        new = replace(element, **{f"{side}_transmission": value})
    else:
        raise InvalidArgument(f"field {field_name!r} does not apply to coupling {path!r}")
    elements = list(chain.elements)
    elements[i] = new
    return Chain(tuple(elements))
