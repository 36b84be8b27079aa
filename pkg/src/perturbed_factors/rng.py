"""
Counter-based random streams.

Every random choice in the package draws from a :class:`Seed`: a 64-bit master
seed plus a derivation path. The pair is fed to :class:`numpy.random.SeedSequence`
with the path as spawn key and drives a Philox generator, so a given
``(master, path)`` produces the same stream on every platform and no two
distinct paths ever share a stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

_MAX_SEED = 2**64


@dataclass(frozen=True)
class Seed:
    master: int
    path: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.master < _MAX_SEED:
            raise ParameterError(f"master seed must be a 64-bit unsigned integer, got {self.master}")
        if any(p < 0 for p in self.path):
            raise ParameterError(f"derivation path entries must be nonnegative, got {self.path}")

    def derive(self, *indices: int) -> Seed:
        """Sub-stream for a child computation (one trial, one retry, ...)."""
        return Seed(self.master, self.path + tuple(indices))

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master, spawn_key=self.path)
        return np.random.Generator(np.random.Philox(seq))

    def __str__(self) -> str:
        if not self.path:
            return str(self.master)
        return f"{self.master}/" + ".".join(map(str, self.path))


def as_seed(seed: Seed | int) -> Seed:
    return seed if isinstance(seed, Seed) else Seed(seed)
