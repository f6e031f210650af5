"""
Complex 2x2 transfer matrices for two-port linear optics.

Matrices are ``(2, 2)`` complex128 arrays acting on column vectors of port
amplitudes (a ``FieldPair`` is a length-2 complex array). Optical order runs
right to left: an element traversed later multiplies from the left.

Port 1 is the slot that carries the phase in ``phase_matrix`` and
``coupling_matrix``; the chain model maps the frequency-shifted ("upper")
arm onto it.
"""

import math

import numpy as np

from .errors import InvalidArgument

SQRT_HALF = 1.0 / math.sqrt(2.0)

IDENTITY = np.eye(2, dtype=complex)
IDENTITY.flags.writeable = False


def _frozen(m):
    m = np.asarray(m, dtype=complex)
    m.flags.writeable = False
    return m


def _check_phase(value, name="phi"):
    if not math.isfinite(value):
        raise InvalidArgument(f"{name} must be finite, got {value!r}")


def bs_matrix():
    """Lossless 50/50 beam splitter, ``(1/sqrt2) [[1, i], [i, 1]]``."""
    return _frozen([[SQRT_HALF, 1j * SQRT_HALF], [1j * SQRT_HALF, SQRT_HALF]])


def phase_matrix(phi):
    """``diag(1, exp(i phi))``: relative phase ``phi`` on port 1."""
    _check_phase(phi)
    return _frozen([[1.0, 0.0], [0.0, np.exp(1j * phi)]])


def coupling_matrix(psi):
    """Inter-MZI coupling phase; same form as :func:`phase_matrix`."""
    _check_phase(psi, "psi")
    return _frozen([[1.0, 0.0], [0.0, np.exp(1j * psi)]])


def attenuation_matrix(t0, t1):
    """Amplitude transmissions on port 0 and port 1. ``t = 0`` blocks a path."""
    for name, t in (("t0", t0), ("t1", t1)):
        if not (0.0 <= t <= 1.0):
            raise InvalidArgument(f"{name}={t!r} out of [0,1]")
    return _frozen([[t0, 0.0], [0.0, t1]])


def matmul(m, n):
    """``m @ n``: ``n`` acts first, ``m`` last."""
    return _frozen(np.asarray(m) @ np.asarray(n))


def mzi_matrix(phi):
    """Closed form of ``BS . phase(phi) . BS``.

    :param phi: phase difference between the two arms, radians.
    :return: ``0.5 [[1 - e, i(1 + e)], [i(1 + e), -(1 - e)]]`` with ``e = exp(i phi)``.
    """
    _check_phase(phi)
    e = np.exp(1j * phi)
    return _frozen(0.5 * np.array([[1 - e, 1j * (1 + e)], [1j * (1 + e), -(1 - e)]]))


def apply(m, f):
    return np.asarray(m) @ np.asarray(f, dtype=complex)


def intensity(a):
    """``|a|^2``; works elementwise on arrays."""
    a = np.asarray(a)
    return a.real**2 + a.imag**2


def total_power(f):
    return float(np.sum(intensity(f)))


def is_unitary(m, eps):
    """True iff every entry of ``M^dagger M - I`` is within ``eps``."""
    if eps <= 0:
        raise InvalidArgument("eps must be positive")
    m = np.asarray(m)
    dev = m.conj().T @ m - np.eye(2)
    return bool(np.max(np.abs(dev)) <= eps)
