"""Exact, self-contained verification of certificates, plus symbolic
itinerary coding relative to a turbulence pair.

Checkers rely only on the exact-core primitives (evaluation, composition,
interval images, equation solving); they never trust how a certificate was
produced.  Failures are structured so callers and tests can assert on the
exact clause that broke.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .certificates import (
    DoubleTurbulenceCertificate,
    TrapCertificate,
    TrapInterval,
    TurbulencePair,
)
from .plmap import PLMap, RatInterval, as_rational

__all__ = [
    "Failure",
    "Itinerary",
    "VerificationResult",
    "itinerary",
    "verify_double",
    "verify_trap",
    "verify_trap_interval",
    "verify_turbulence",
]


@dataclass(frozen=True)
class Failure:
    """One violated clause: its identifier and the offending endpoint."""

    clause: str
    endpoint: Fraction | None
    message: str


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failures: tuple[Failure, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    @property
    def reason(self) -> str:
        return "; ".join(f"{f.clause}: {f.message}" for f in self.failures)


def _passed() -> VerificationResult:
    return VerificationResult(True)


def _failed(failures: list[Failure]) -> VerificationResult:
    return VerificationResult(False, tuple(failures))


def verify_turbulence(f: PLMap, pair: TurbulencePair) -> VerificationResult:
    """Exact check that `pair` witnesses turbulence of f^map_power.

    Clauses:
      nesting     J0 and J1 lie inside J, J inside the domain
      degenerate  J0 and J1 are non-degenerate intervals
      overlap     J0 and J1 share at most one point
      image_J0    J0 union J1 is covered by the image of J0
      image_J1    J0 union J1 is covered by the image of J1

    Degenerate subintervals are rejected: a single shared point trivially
    "covers" itself and carries no dynamical content.
    """
    failures: list[Failure] = []
    if pair.map_power < 1:
        return _failed([Failure("power", None, f"bad map power {pair.map_power}")])
    if not f.domain.contains_interval(pair.J):
        return _failed([Failure("nesting", pair.J.lo, "J leaves the domain")])
    for name, sub in (("J0", pair.J0), ("J1", pair.J1)):
        if not pair.J.contains_interval(sub):
            failures.append(Failure("nesting", sub.lo, f"{name} not inside J"))
        if sub.is_point:
            failures.append(Failure("degenerate", sub.lo, f"{name} is a point"))
    if not pair.J0.shares_at_most_a_point(pair.J1):
        failures.append(
            Failure("overlap", max(pair.J0.lo, pair.J1.lo),
                    "J0 and J1 overlap in more than one point"))
    if failures:
        return _failed(failures)

    g = f.compose(pair.map_power)
    img0 = g.image(pair.J0)
    img1 = g.image(pair.J1)
    union_lo = min(pair.J0.lo, pair.J1.lo)
    union_hi = max(pair.J0.hi, pair.J1.hi)
    for name, img in (("image_J0", img0), ("image_J1", img1)):
        if img.lo > union_lo:
            failures.append(
                Failure(name, union_lo,
                        f"image [{img.lo}, {img.hi}] misses the lower end"))
        if img.hi < union_hi:
            failures.append(
                Failure(name, union_hi,
                        f"image [{img.lo}, {img.hi}] misses the upper end"))
    if failures:
        return _failed(failures)
    return _passed()


def verify_double(f: PLMap, cert: DoubleTurbulenceCertificate) -> VerificationResult:
    """Both pairs verify at power two and their base intervals share at most
    one point."""
    failures: list[Failure] = []
    for name, pair in (("left", cert.left), ("right", cert.right)):
        if pair.map_power != 2:
            failures.append(
                Failure(name, None, f"map power {pair.map_power}, expected 2"))
            continue
        sub = verify_turbulence(f, pair)
        if not sub:
            failures.append(
                Failure(name, sub.failures[0].endpoint, sub.reason))
    if not cert.left.J.shares_at_most_a_point(cert.right.J):
        failures.append(
            Failure("separation", max(cert.left.J.lo, cert.right.J.lo),
                    "base intervals overlap in more than one point"))
    return _failed(failures) if failures else _passed()


def verify_trap(f: PLMap, cert: TrapCertificate) -> VerificationResult:
    """Exact check of the four trap clauses.

    Clauses:
      z    z is a fixed point of f
      i    c lies in K
      ii   the squared map sends K strictly inside K
      iii  K contains no fixed point of f
      iv   K and f(K) lie on opposite sides of z, z outside K
    """
    failures: list[Failure] = []
    dom = f.domain
    if not dom.contains_interval(cert.K) or not dom.contains(cert.c) \
            or not dom.contains(cert.z):
        return _failed([Failure("domain", cert.K.lo, "certificate leaves the domain")])
    if f(cert.z) != cert.z:
        failures.append(Failure("z", cert.z, f"f({cert.z}) != {cert.z}"))
    if not cert.K.contains(cert.c):
        failures.append(Failure("i", cert.c, f"c = {cert.c} outside K = {cert.K}"))
    img2 = f.compose(2).image(cert.K)
    inside = cert.K.contains_interval(img2)
    strict = img2.lo > cert.K.lo or img2.hi < cert.K.hi
    if not inside:
        failures.append(
            Failure("ii", img2.hi if img2.hi > cert.K.hi else img2.lo,
                    f"f^2(K) = {img2} not inside K = {cert.K}"))
    elif not strict:
        failures.append(Failure("ii", cert.K.lo, "f^2(K) equals K, inclusion not strict"))
    fixed = f.solve_fixed(cert.K)
    if fixed:
        failures.append(Failure("iii", fixed.min_point(),
                                f"K contains the fixed point {fixed.min_point()}"))
    img1 = f.image(cert.K)
    left_of = cert.K.hi < cert.z and cert.z <= img1.lo
    right_of = img1.hi <= cert.z and cert.z < cert.K.lo
    if not (left_of or right_of):
        failures.append(
            Failure("iv", cert.z,
                    f"K = {cert.K} and f(K) = {img1} not on opposite sides of z = {cert.z}"))
    return _failed(failures) if failures else _passed()


def verify_trap_interval(f: PLMap, cert: TrapInterval) -> VerificationResult:
    """Exact check of the level-one trap: c in J, f(J) strictly inside J,
    z a fixed point outside J."""
    failures: list[Failure] = []
    if not f.domain.contains_interval(cert.J) or not f.domain.contains(cert.c):
        return _failed([Failure("domain", cert.J.lo, "certificate leaves the domain")])
    if f(cert.z) != cert.z:
        failures.append(Failure("z", cert.z, f"f({cert.z}) != {cert.z}"))
    if not cert.J.contains(cert.c):
        failures.append(Failure("i", cert.c, f"c = {cert.c} outside J = {cert.J}"))
    img = f.image(cert.J)
    inside = cert.J.contains_interval(img)
    strict = img.lo > cert.J.lo or img.hi < cert.J.hi
    if not inside:
        failures.append(Failure("ii", img.hi,
                                f"f(J) = {img} not inside J = {cert.J}"))
    elif not strict:
        failures.append(Failure("ii", cert.J.lo, "f(J) equals J, inclusion not strict"))
    if cert.J.contains(cert.z):
        failures.append(Failure("iii", cert.z, f"z = {cert.z} inside J = {cert.J}"))
    return _failed(failures) if failures else _passed()


@dataclass(frozen=True)
class Itinerary:
    """Binary coding of an orbit relative to a turbulence pair.

    Symbol k is '0' when the k-th iterate (under the pair's composition
    power) lies in J0 and '1' when it lies in J1; a point on the shared
    boundary codes as '0'.  If some iterate escapes J0 union J1 the coding
    stops there and `escape_index` records the step.
    """

    start: Fraction
    symbols: str
    escape_index: int | None = None


def itinerary(f: PLMap, pair: TurbulencePair, x: object, length: int) -> Itinerary:
    """Code `length` steps of the orbit of x under f^map_power."""
    x = as_rational(x)
    if not (pair.J0.contains(x) or pair.J1.contains(x)):
        raise ValueError(f"{x} outside J0 union J1")
    g = f.compose(pair.map_power)
    symbols: list[str] = []
    y = x
    for k in range(length):
        if pair.J0.contains(y):
            symbols.append("0")
        elif pair.J1.contains(y):
            symbols.append("1")
        else:
            return Itinerary(x, "".join(symbols), escape_index=k)
        y = g(y)
    return Itinerary(x, "".join(symbols), escape_index=None)
