"""Reproducible pseudo-random states from a fixed linear congruential stream.

The generator is Knuth's 64-bit LCG (multiplier 6364136223846793005,
increment 1442695040888963407, modulus 2^64); uniforms take the top 53
bits, and complex Gaussians come from the Box-Muller transform.  The
stream is fully specified here so seeded outputs are bit-reproducible
across platforms without importing a heavyweight RNG.
"""

import math

import numpy as np

__all__ = ["LcgStream", "seeded_state", "seeded_unitary"]

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class LcgStream:
    """Deterministic uniform/Gaussian scalar stream."""

    def __init__(self, seed: int):
        self.state = (int(seed) ^ 0x9E3779B97F4A7C15) & _MASK
        # warm up so small seeds decorrelate
        for _ in range(4):
            self._next()

    def _next(self) -> int:
        self.state = (self.state * _MULT + _INC) & _MASK
        return self.state

    def uniform(self) -> float:
        """Uniform in the open interval (0, 1)."""
        return ((self._next() >> 11) + 0.5) / 2.0 ** 53

    def gauss_pair(self):
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2)

    def complex_gauss(self) -> complex:
        re, im = self.gauss_pair()
        return complex(re, im)


def seeded_state(dim: int, seed: int) -> np.ndarray:
    """Normalized complex state with i.i.d. Gaussian amplitudes."""
    stream = LcgStream(seed)
    v = np.array([stream.complex_gauss() for _ in range(dim)])
    return v / np.linalg.norm(v)


def seeded_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-ish unitary: QR of a seeded complex Gaussian matrix."""
    stream = LcgStream(seed)
    m = np.array([[stream.complex_gauss() for _ in range(dim)] for _ in range(dim)])
    q, r = np.linalg.qr(m)
    # fix the diagonal phases so the factorization is unique
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
