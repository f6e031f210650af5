"""
Synthetic 2D fringe frames and a 16-bit binary PGM writer.

A frame evaluates the chain once per pixel with an extra spatial phase on one
arm: a linear ramp on the first stage gives bar fringes, a quadratic radial
term on the second stage (lens curvature) gives Newton's rings.
"""

from dataclasses import dataclass

import numpy as np

from . import chain as chainmod
from . import timesim
from .errors import InvalidArgument, ValidationError
from .optics import intensity

MAXVAL = 65535

_PORTS = {"I_A": (0, 0), "I_B": (0, 1), "I_C": (-1, 0), "I_D": (-1, 1)}


@dataclass(frozen=True)
class FringeImage:
    width: int
    height: int
    pixels: np.ndarray  # (height, width) uint16, row-major, top row first
    channel: str = ""
    time_s: float = 0.0


def quantize(values, full_scale):
    """Map ``[0, full_scale]`` linearly onto ``[0, 65535]``, rounding half up."""
    q = np.floor(np.asarray(values) / full_scale * MAXVAL + 0.5)
    return np.clip(q, 0, MAXVAL).astype(np.uint16)


def _evaluate(s, channel, t, extra_phase, stage_index):
    if channel not in _PORTS:
        raise InvalidArgument(f"unknown channel {channel!r}")
    errors = timesim.validate_scenario(s)
    if errors:
        raise ValidationError(errors)
    c = timesim.chain_at(s, t)
    n_stages = len(c.stages)
    if stage_index >= n_stages:
        raise InvalidArgument(f"chain has {n_stages} stage(s); stage {stage_index + 1} needed")
    base = timesim.stage_phases(s, np.array([float(t)]))[0]
    phases = np.broadcast_to(base, extra_phase.shape + (n_stages,)).copy()
    phases[..., stage_index] += extra_phase
    prefix, port = _PORTS[channel]
    m = chainmod.monitor_matrices(c, phases)[prefix]
    return s.input_intensity * intensity(m[..., port, 0])


def _check_size(width, height):
    if int(width) != width or int(height) != height or width < 1 or height < 1:
        raise InvalidArgument(f"image size must be positive integers, got {width}x{height}")


def bar_fringe_image(s, channel, t, width, height, spatial_period_px):
    _check_size(width, height)
    if not spatial_period_px > 0:
        raise InvalidArgument("spatial_period_px must be positive")
    x = np.arange(width, dtype=float)
    row = _evaluate(s, channel, t, 2.0 * np.pi * x / spatial_period_px, 0)
    pixels = np.repeat(quantize(row, s.input_intensity)[None, :], height, axis=0)
    return FringeImage(width, height, pixels, channel, float(t))


def newton_ring_image(s, channel, t, width, height, curvature_rad_per_px2):
    """Rings from a phase ``kappa * r**2`` on the second stage's upper arm.

    ``r`` is measured from the geometric image center ``((w-1)/2, (h-1)/2)``.
    """
    _check_size(width, height)
    if not curvature_rad_per_px2 >= 0:
        raise InvalidArgument("curvature must be non-negative")
    dx = np.arange(width, dtype=float) - (width - 1) / 2.0
    dy = np.arange(height, dtype=float) - (height - 1) / 2.0
    r2 = dy[:, None] ** 2 + dx[None, :] ** 2
    values = _evaluate(s, channel, t, curvature_rad_per_px2 * r2, 1)
    return FringeImage(width, height, quantize(values, s.input_intensity), channel, float(t))


def pgm_encode(img):
    header = f"P5\n{img.width} {img.height}\n{MAXVAL}\n".encode("ascii")
    pixels = np.asarray(img.pixels)
    if pixels.shape != (img.height, img.width):
        raise InvalidArgument(f"pixel array {pixels.shape} does not match {img.height}x{img.width}")
    return header + pixels.astype(">u2").tobytes()


def pgm_decode(data):
    """Inverse of :func:`pgm_encode` for the exact header layout it writes."""
    magic, dims, maxval, body = data.split(b"\n", 3)
    if magic != b"P5" or int(maxval) != MAXVAL:
        raise InvalidArgument("not a 16-bit P5 graymap")
    width, height = (int(v) for v in dims.split())
    pixels = np.frombuffer(body, dtype=">u2").reshape(height, width).astype(np.uint16)
    return FringeImage(width, height, pixels)
