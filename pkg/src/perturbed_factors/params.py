from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto

from .errors import ParameterError


class Variant(Enum):
    #: 0 <= t < s, used by the gadgets and the tiling engine
    GADGET = auto()
    #: 1 <= t <= s, used by the partitioner, absorbers and balancing
    ABSORBER = auto()


@dataclass(frozen=True)
class RParams:
    """
    Canonical parametrization ``r = m*s + t`` of the clique size.

    The same ``r`` and ``s`` give different ``(m, t)`` under the two variants
    when ``s`` divides ``r``: the gadget variant takes ``t = 0`` while the
    absorber variant takes ``t = s`` and sets ``g = 1``.
    """

    m: int
    s: int
    t: int
    variant: Variant = Variant.GADGET

    def __post_init__(self) -> None:
        if self.m < 1 or self.s < 1:
            raise ParameterError(f"m and s must be positive, got m={self.m}, s={self.s}")
        if self.variant is Variant.GADGET:
            if not 0 <= self.t < self.s:
                raise ParameterError(f"gadget parameters need 0 <= t < s, got s={self.s}, t={self.t}")
        elif not 1 <= self.t <= self.s:
            raise ParameterError(f"absorber parameters need 1 <= t <= s, got s={self.s}, t={self.t}")

    @classmethod
    def gadget(cls, m: int, s: int, t: int) -> RParams:
        return cls(m, s, t, Variant.GADGET)

    @classmethod
    def absorber(cls, m: int, s: int, t: int) -> RParams:
        return cls(m, s, t, Variant.ABSORBER)

    @classmethod
    def from_r_s(cls, r: int, s: int, variant: Variant = Variant.GADGET) -> RParams:
        """Split ``r`` by ``s`` under the requested variant."""
        if s < 1 or r < s:
            raise ParameterError(f"need 1 <= s <= r, got r={r}, s={s}")
        if variant is Variant.GADGET:
            m, t = divmod(r, s)
        else:
            m = (r - 1) // s
            t = r - m * s
        return cls(m, s, t, variant)

    @property
    def r(self) -> int:
        return self.m * self.s + self.t

    @property
    def g(self) -> int:
        return int(self.variant is Variant.ABSORBER and self.t == self.s)

    def require(self, variant: Variant) -> None:
        if self.variant is not variant:
            raise ParameterError(f"operation needs {variant.name.lower()} parameters, got {self}")

    def __str__(self) -> str:
        return f"(r={self.r}, m={self.m}, s={self.s}, t={self.t}, {self.variant.name.lower()})"
