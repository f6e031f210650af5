"""
Bar fringes and Newton's rings
==============================

Frames are rendered by adding a spatial phase to one arm: a linear ramp on
the first stage (bar fringes) or a quadratic radial term on the second stage
(lens curvature, rings). Output goes to 16-bit PGM files in ./frames.
"""

import pathlib

import numpy as np

from cbwave import bar_fringe_image, newton_ring_image, pgm_encode, preset

out = pathlib.Path("frames")
out.mkdir(exist_ok=True)
s = preset("cbw")

for t in (0.0, 0.125, 0.25):
    for ch in ("I_C", "I_D"):
        img = newton_ring_image(s, ch, t, 256, 256, 0.002)
        (out / f"rings_{ch}_t{t:.3f}.pgm").write_bytes(pgm_encode(img))
    c = newton_ring_image(s, "I_C", t, 256, 256, 0.002).pixels.astype(int)
    d = newton_ring_image(s, "I_D", t, 256, 256, 0.002).pixels.astype(int)
    print(f"t={t}: mean I_C pixel {c.mean():.0f}, I_C + I_D in [{(c + d).min()}, {(c + d).max()}]")

bar = bar_fringe_image(preset("mzi"), "I_B", 0.0, 256, 64, 64)
(out / "bar_I_B.pgm").write_bytes(pgm_encode(bar))
print("bar row head:", bar.pixels[0, :8])
print("wrote", sorted(p.name for p in out.iterdir()))
