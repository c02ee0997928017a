"""
Point and cone light sources
============================

Build attenuation maps, render a point light and a cone light, tint them and
overlay them on a black frame.
"""

import math
from pathlib import Path

import numpy as np

from nightforge import attenuation_map, colorize, render_cone, render_point, save_image
from nightforge.degradation import sum_glows
from nightforge.lights import diagonal

out = Path("demo_output")
out.mkdir(exist_ok=True)
h, w = 160, 240

###############################################################################
# With the default coefficients (1, 3, 1.8) the attenuation is 1 at the light
# and 1/5.8 one distance-unit away. Here one unit is 5% of the diagonal,
# which is the pipeline default.
unit = 0.05 * diagonal((h, w))
atten = attenuation_map((h, w), (100, 60), 1.0, 3.0, 1.8, unit=unit)
print(f"attenuation at centre {atten[100, 60]:.3f}, 1 unit away {atten[100, 60 + round(unit)]:.3f}")

point = colorize(render_point(atten, beta=1.0), (1.0, 0.75, 0.35))  # sodium lamp

###############################################################################
# A cone keeps only the pixels within the half-angle of its axis and fades
# them with the cosine of the angle. The axis is a unit (row, col) vector.
apex = (30, 170)
axis = (math.cos(math.radians(20)), -math.sin(math.radians(20)))  # mostly downward
cone_atten = attenuation_map((h, w), apex, 1.0, 3.0, 1.8, unit=3 * unit)
cone = colorize(render_cone(cone_atten, apex, axis, math.radians(35)), (0.9, 0.95, 1.0))

glow = sum_glows([point, cone], (h, w, 3))
save_image(np.clip(glow, 0.0, 1.0), out / "light_sources.png")
print("wrote", out / "light_sources.png")
