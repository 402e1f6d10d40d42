from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParams


@dataclass(frozen=True)
class MergeParams:
    """Parameters of a merge conversion: ``lam`` stripes of an [nI, kI] code
    become one stripe of an [nF, kF = lam * kI] code."""

    lam: int
    kI: int
    rI: int
    rF: int

    def __post_init__(self):
        if self.lam < 2:
            raise InvalidParams(f"lambda must be >= 2, got {self.lam}")
        if self.kI < 1:
            raise InvalidParams(f"kI must be >= 1, got {self.kI}")
        if self.rI < 0 or self.rF < 0:
            raise InvalidParams("parity counts must be non-negative")

    @property
    def nI(self) -> int:
        return self.kI + self.rI

    @property
    def kF(self) -> int:
        return self.lam * self.kI

    @property
    def nF(self) -> int:
        return self.kF + self.rF

    def __str__(self) -> str:
        return f"({self.nI},{self.kI};{self.nF},{self.kF}) lambda={self.lam}"
