"""Counter-based random streams keyed by (master seed, image index, purpose).

Each purpose gets its own Philox generator whose key is the pair
``(master_seed, stream_index)`` and whose counter starts in a region reserved
for that purpose. Draws therefore depend only on the key triple, never on
which worker produced them or in what order images were processed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK_64 = (1 << 64) - 1

# Purpose ids occupy the most significant counter word.
PURPOSES = {"lights": 1, "noise": 2, "test": 3}


@dataclass(frozen=True)
class RngStream:
    master_seed: int
    stream_index: int

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_index"):
            value = getattr(self, name)
            if not 0 <= value <= MASK_64:
                raise ValueError(f"{name} must fit in an unsigned 64-bit integer, got {value}")

    def generator(self, purpose: str) -> np.random.Generator:
        """Fresh generator for ``purpose``; calling twice replays the same draws."""
        try:
            pid = PURPOSES[purpose]
        except KeyError:
            raise ValueError(f"unknown draw purpose {purpose!r}") from None
        bitgen = np.random.Philox(
            key=np.array([self.master_seed, self.stream_index], dtype=np.uint64),
            counter=np.array([0, 0, 0, pid], dtype=np.uint64),
        )
        return np.random.Generator(bitgen)

    def uniform(self, purpose: str, n: int) -> np.ndarray:
        """``n`` doubles in [0, 1) from the start of ``purpose``'s stream."""
        return self.generator(purpose).random(n)


def box_muller(gen: np.random.Generator, n: int) -> np.ndarray:
    """``n`` standard normal draws via the Box-Muller transform.

    Pairs ``(u1, u2)`` of uniforms are consumed in order; each pair yields
    ``r*cos(t)`` then ``r*sin(t)`` with ``r = sqrt(-2 ln(1 - u1))`` and
    ``t = 2 pi u2``. ``1 - u1`` lies in (0, 1] so the log is always finite.
    """
    m = (n + 1) // 2
    u = gen.random(2 * m)
    r = np.sqrt(-2.0 * np.log1p(-u[0::2]))
    t = 2.0 * np.pi * u[1::2]
    out = np.empty(2 * m)
    out[0::2] = r * np.cos(t)
    out[1::2] = r * np.sin(t)
    return out[:n]
