"""Certificate types shared by the construction and verification layers.

Every certificate is a plain frozen record of exact rationals; whether it
actually certifies anything about a given map is decided by the checkers
in `certify`, never by construction provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .plmap import RatInterval

__all__ = [
    "DoubleTurbulenceCertificate",
    "TrapCertificate",
    "TrapInterval",
    "TurbulencePair",
]


@dataclass(frozen=True)
class TurbulencePair:
    """Two subintervals J0, J1 of J whose images under the map's
    `map_power`-th composition each cover J0 and J1.

    `map_power` is 1 when the pair concerns the map itself and 2 when it
    concerns the square of the map.
    """

    map_power: int
    J: RatInterval
    J0: RatInterval
    J1: RatInterval

    def canonical(self) -> "TurbulencePair":
        """Order the subintervals by left endpoint."""
        if (self.J0.lo, self.J0.hi) <= (self.J1.lo, self.J1.hi):
            return self
        return TurbulencePair(self.map_power, self.J, self.J1, self.J0)

    def reflected(self, lo: Fraction, hi: Fraction) -> "TurbulencePair":
        return TurbulencePair(
            self.map_power,
            self.J.reflected(lo, hi),
            self.J0.reflected(lo, hi),
            self.J1.reflected(lo, hi),
        ).canonical()


@dataclass(frozen=True)
class DoubleTurbulenceCertificate:
    """Turbulence of the squared map on two subintervals that share at
    most one point."""

    left: TurbulencePair
    right: TurbulencePair

    def canonical(self) -> "DoubleTurbulenceCertificate":
        a, b = self.left.canonical(), self.right.canonical()
        if a.J.lo <= b.J.lo:
            return DoubleTurbulenceCertificate(a, b)
        return DoubleTurbulenceCertificate(b, a)

    def reflected(self, lo: Fraction, hi: Fraction) -> "DoubleTurbulenceCertificate":
        return DoubleTurbulenceCertificate(
            self.left.reflected(lo, hi), self.right.reflected(lo, hi)
        ).canonical()


@dataclass(frozen=True)
class TrapCertificate:
    """Fixed point z and interval K with: c in K, the squared map sends K
    strictly inside itself, K holds no fixed points, and K and its image
    sit on opposite sides of z."""

    z: Fraction
    K: RatInterval
    c: Fraction

    def reflected(self, lo: Fraction, hi: Fraction) -> "TrapCertificate":
        s = lo + hi
        return TrapCertificate(s - self.z, self.K.reflected(lo, hi), s - self.c)


@dataclass(frozen=True)
class TrapInterval:
    """Level-one trap: c in J, the map itself sends J strictly inside J,
    and the reference fixed point z stays outside J."""

    J: RatInterval
    z: Fraction
    c: Fraction

    def reflected(self, lo: Fraction, hi: Fraction) -> "TrapInterval":
        s = lo + hi
        return TrapInterval(self.J.reflected(lo, hi), s - self.z, s - self.c)
