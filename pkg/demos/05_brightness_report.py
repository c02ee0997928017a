"""
Comparing brightness across image sets
======================================

Needs the output of ``03_synthesize_dataset.py``. Collect the synthesized
night images and their daytime sources into two sets and compare their
luminance statistics. Equivalent command::

    nightforge report --set night=demo_output/night --set day=demo_output/day \\
        --out demo_output/report --channel-means
"""

import shutil
from pathlib import Path

from nightforge import compare_sets

root = Path("demo_output")
night_dir = root / "night"
night_dir.mkdir(exist_ok=True)
for p in sorted((root / "pairs").glob("*_hazy.png")):
    shutil.copy(p, night_dir / p.name.replace("_hazy", ""))

summaries = compare_sets({"night": night_dir, "day": root / "day"}, root / "report", channel_means=True)
for name, st in summaries.items():
    r, g, b = st.channel_means
    print(f"{name:>5}: luminance {st.luminance_mean:.3f}  (R {r:.3f}, G {g:.3f}, B {b:.3f})")
print("see", root / "report" / "stats.csv", "and histogram.png")
