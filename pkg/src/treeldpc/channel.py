"""Binary-input AWGN and p-ary symmetric channels with counter-based seeding.

Every frame draws from its own stream, addressed by ``(seed, point, frame)``,
so simulation results do not depend on how frames are split among workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _key(seed: int, point: int) -> np.ndarray:
    return np.random.SeedSequence([int(seed), int(point)]).generate_state(2, np.uint64)


def stream(seed: int, point: int, frame: int) -> np.random.Generator:
    """Independent generator for one frame of one grid point."""
    return np.random.Generator(np.random.Philox(key=_key(seed, point), counter=[0, int(frame), 0, 0]))


class FrameStreams:
    """Reusable source of :func:`stream` generators for one grid point.

    Re-seating a single bit generator is several times cheaper than
    building a new one per frame; the draws are identical.
    """

    def __init__(self, seed: int, point: int):
        self._key = _key(seed, point)
        self._bg = np.random.Philox(key=self._key)
        self._gen = np.random.Generator(self._bg)

    def __call__(self, frame: int) -> np.random.Generator:
        self._bg.state = {
            "bit_generator": "Philox",
            "state": {"counter": np.array([0, frame, 0, 0], dtype=np.uint64), "key": self._key},
            "buffer": np.zeros(4, dtype=np.uint64),
            "buffer_pos": 4,
            "has_uint32": 0,
            "uinteger": 0,
        }
        return self._gen


@dataclass(frozen=True)
class BiAwgn:
    """BPSK (bit 0 -> +1) over additive white Gaussian noise.

    ``sigma**2 = 1 / (2 R 10**(ebn0_db/10))`` for code rate ``R``.
    """

    ebn0_db: float
    rate: float

    def __post_init__(self):
        if not 0 < self.rate <= 1:
            raise ValueError(f"code rate must lie in (0, 1], got {self.rate}")

    @property
    def sigma(self) -> float:
        return float(np.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))))

    def transmit(self, bits, rng) -> np.ndarray:
        bits = np.asarray(bits)
        return (1.0 - 2.0 * bits) + self.sigma * rng.standard_normal(bits.shape)

    def llr(self, y) -> np.ndarray:
        return llr(y, self.sigma)


def llr(y, sigma: float) -> np.ndarray:
    """Channel LLR ``log P(0|y)/P(1|y) = 2y/sigma^2``."""
    return 2.0 * np.asarray(y, dtype=float) / sigma**2


def biawgn_transmit(bits, chan: BiAwgn, rng) -> np.ndarray:
    return chan.transmit(bits, rng)


@dataclass(frozen=True)
class Psc:
    """p-ary symmetric channel: a symbol survives with probability ``1 - epsilon``,
    otherwise it becomes one of the other ``p - 1`` symbols uniformly."""

    p: int
    epsilon: float

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("alphabet size must be >= 2")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")

    def transmit(self, symbols, rng) -> np.ndarray:
        x = np.asarray(symbols, dtype=np.int64)
        u = rng.random(x.shape)
        shift = rng.integers(1, self.p, size=x.shape)
        return np.where(u < self.epsilon, (x + shift) % self.p, x)

    def likelihoods(self, r) -> np.ndarray:
        """``(..., p)`` array: ``1 - eps`` at the received symbol, ``eps/(p-1)`` elsewhere."""
        r = np.asarray(r, dtype=np.int64)
        L = np.full(r.shape + (self.p,), self.epsilon / (self.p - 1))
        np.put_along_axis(L, r[..., None], 1.0 - self.epsilon, axis=-1)
        return L

    def llr(self, r) -> np.ndarray:
        """Binary LLRs for ``p == 2`` (infinite at ``epsilon`` 0 or 1 are clipped)."""
        if self.p != 2:
            raise ValueError("binary LLRs need p == 2")
        eps = min(max(self.epsilon, 1e-300), 1 - 1e-16)
        mag = np.log((1 - eps) / eps)
        return np.where(np.asarray(r) == 0, mag, -mag)


def psc_transmit(symbols, chan: Psc, rng) -> np.ndarray:
    return chan.transmit(symbols, rng)


def psc_likelihoods(r, chan: Psc) -> np.ndarray:
    return chan.likelihoods(r)
