"""
Cascading blocks
================

Chaining n blocks multiplies the fringe rate by 2n: the chain matrix is
(-1)^n times a plane rotation by n * delta.
"""

import numpy as np

from cbwave import chain_matrix, estimate_period, preset, simulate
from cbwave.fringes import WavelengthQuery, effective_wavelength

delta = 0.3
for n in range(1, 9):
    s = preset("cascade", n=n)
    m = chain_matrix(s.chain, [delta, -delta] * n)
    rot = (-1) ** n * np.array([[np.cos(n * delta), np.sin(n * delta)],
                                [-np.sin(n * delta), np.cos(n * delta)]])
    period = estimate_period(simulate(s), "I_D").period_s
    lam = effective_wavelength(WavelengthQuery(605.966, n, "cbw"))
    print(f"n={n}: period {period:.4f} s (expect {1 / (2 * n):.4f}), "
          f"|M - rotation| = {np.linalg.norm(m - rot):.1e}, lambda_eff = {lam:.3f} nm")
