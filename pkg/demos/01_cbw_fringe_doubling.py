"""
Doubled fringes from one asymmetrically coupled block
=====================================================

A single Mach-Zehnder stage driven by a 1 Hz AOM offset produces a 1 Hz
moving fringe. Coupling two stages with opposite offsets (+1 Hz, -1 Hz)
through psi = 0 doubles the output fringe rate to 2 Hz.
"""

import numpy as np

from cbwave import estimate_period, frequency_component, preset, simulate, visibility
from cbwave.fringes import WavelengthQuery, effective_wavelength

# one stage: I_A, I_B follow (1 -/+ cos(2 pi t)) / 2
single = simulate(preset("mzi"))
print("single MZI period (I_B):", estimate_period(single, "I_B").period_s, "s")

# one block: the outputs C, D swing twice per second
ts = simulate(preset("cbw"))
print("block period (I_D):     ", estimate_period(ts, "I_D").period_s, "s")
print("visibility (I_D):       ", visibility(ts, "I_D"))
print("2 Hz amplitude of I_D:  ", frequency_component(ts, "I_D", 2.0))
print("1 Hz amplitude of I_D:  ", frequency_component(ts, "I_D", 1.0))

# first samples of each port, to compare against the closed forms
t = ts.times_s[:5]
print(np.column_stack([t, ts["I_D"][:5], 0.5 * (1 - np.cos(4 * np.pi * t))]))

# the halved period corresponds to a halved effective wavelength
print("effective wavelength:", effective_wavelength(WavelengthQuery(605.966, 1, "cbw")), "nm")
