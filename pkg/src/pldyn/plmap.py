"""Exact piecewise-linear self-maps of a compact interval.

Every coordinate is an arbitrary-precision rational and every operation in
this module (evaluation, iteration, composition, interval images, equation
solving, periodic points) is exact.  Flat pieces turn solution loci into
closed segments rather than isolated points, so the solvers return unions
of closed intervals.

All values are immutable after construction and all operations are pure,
so concurrent use needs no synchronisation.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

__all__ = [
    "DomainError",
    "PLMap",
    "RatInterval",
    "Rational",
    "SolutionSet",
    "as_rational",
]

Rational = Fraction


class DomainError(ValueError):
    """Raised when a point or interval leaves a map's domain."""


def as_rational(value: object) -> Fraction:
    """Coerce an int, a string like ``"2/7"``, or a Fraction to a Fraction.

    Floats are rejected on purpose: admitting them would silently break the
    exactness guarantees everything here relies on.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with rational endpoints; lo == hi is a point."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersection(self, other: "RatInterval") -> "RatInterval | None":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return None
        return RatInterval(lo, hi)

    def shares_at_most_a_point(self, other: "RatInterval") -> bool:
        """True when the overlap with `other` is empty or a single point."""
        return min(self.hi, other.hi) <= max(self.lo, other.lo)

    def reflected(self, lo: Fraction, hi: Fraction) -> "RatInterval":
        """Image of this interval under x -> lo + hi - x."""
        s = lo + hi
        return RatInterval(s - self.hi, s - self.lo)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class SolutionSet:
    """Sorted union of pairwise-disjoint closed intervals (points allowed).

    Solvers return these; every point of every member satisfies the defining
    equation exactly, and no solution exists outside the union.
    """

    intervals: tuple[RatInterval, ...]

    @classmethod
    def from_intervals(cls, items: Iterable[RatInterval]) -> "SolutionSet":
        """Normalise: sort, then merge overlapping or touching members."""
        parts = sorted(items, key=lambda iv: (iv.lo, iv.hi))
        merged: list[RatInterval] = []
        for iv in parts:
            if merged and iv.lo <= merged[-1].hi:
                last = merged.pop()
                merged.append(RatInterval(last.lo, max(last.hi, iv.hi)))
            else:
                merged.append(iv)
        return cls(tuple(merged))

    @property
    def empty(self) -> bool:
        return not self.intervals

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __iter__(self) -> Iterator[RatInterval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __contains__(self, x: object) -> bool:
        x = as_rational(x)
        return any(iv.contains(x) for iv in self.intervals)

    def min_point(self) -> Fraction:
        if not self.intervals:
            raise ValueError("empty solution set has no minimum")
        return self.intervals[0].lo

    def max_point(self) -> Fraction:
        if not self.intervals:
            raise ValueError("empty solution set has no maximum")
        return self.intervals[-1].hi

    def representatives(self) -> list[Fraction]:
        """Endpoints plus one interior sample per non-degenerate segment."""
        out: list[Fraction] = []
        for iv in self.intervals:
            if iv.is_point:
                out.append(iv.lo)
            else:
                out.extend((iv.lo, iv.midpoint, iv.hi))
        return out


# --------------------------------------------------------------------------
# Internal curve helpers.
#
# A "curve" is a bare (xs, ys) breakpoint pair for a piecewise-linear
# function that need not map its domain into itself (restrictions and
# partial compositions are not self-maps).  PLMap delegates to these, and
# the witness machinery uses them for compositions restricted to shrinking
# subintervals, where building the full composed self-map would be wasteful.
# --------------------------------------------------------------------------

Curve = tuple[tuple[Fraction, ...], tuple[Fraction, ...]]


def curve_eval(curve: Curve, x: Fraction) -> Fraction:
    xs, ys = curve
    if x < xs[0] or x > xs[-1]:
        raise DomainError(f"{x} outside [{xs[0]}, {xs[-1]}]")
    i = bisect_right(xs, x) - 1
    if i == len(xs) - 1:
        return ys[-1]
    x0, x1 = xs[i], xs[i + 1]
    y0, y1 = ys[i], ys[i + 1]
    if x == x0:
        return y0
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def curve_restrict(curve: Curve, lo: Fraction, hi: Fraction) -> Curve:
    """Breakpoints of the same function restricted to [lo, hi]."""
    xs, ys = curve
    if lo < xs[0] or hi > xs[-1] or lo > hi:
        raise DomainError(f"[{lo}, {hi}] not inside [{xs[0]}, {xs[-1]}]")
    new_xs: list[Fraction] = [lo]
    new_ys: list[Fraction] = [curve_eval(curve, lo)]
    for x, y in zip(xs, ys):
        if lo < x < hi:
            new_xs.append(x)
            new_ys.append(y)
    if hi > lo:
        new_xs.append(hi)
        new_ys.append(curve_eval(curve, hi))
    return tuple(new_xs), tuple(new_ys)


def curve_after(outer: "PLMap", curve: Curve) -> Curve:
    """Exact composition outer(curve(x)) as a new curve.

    New breakpoints are the curve's own plus, on every non-flat piece, the
    curve-preimages of the outer map's breakpoints crossed by that piece.
    Between consecutive new breakpoints the inner values stay inside a
    single outer piece, so the composite is linear there.
    """
    xs, ys = curve
    out_xs = outer._xs
    new_xs: list[Fraction] = []
    new_ys: list[Fraction] = []

    def push(x: Fraction, y: Fraction) -> None:
        if new_xs and new_xs[-1] == x:
            return
        new_xs.append(x)
        new_ys.append(y)

    out_ys = outer._ys
    for i in range(len(xs) - 1):
        x0, x1 = xs[i], xs[i + 1]
        y0, y1 = ys[i], ys[i + 1]
        push(x0, outer(y0))
        if y0 != y1:
            lo_v, hi_v = (y0, y1) if y0 < y1 else (y1, y0)
            j0 = bisect_right(out_xs, lo_v)
            j1 = bisect_right(out_xs, hi_v) - 1
            if j1 >= j0 and out_xs[j1] == hi_v:
                j1 -= 1
            indices = range(j0, j1 + 1) if y0 < y1 else range(j1, j0 - 1, -1)
            span = x1 - x0
            dy = y1 - y0
            for j in indices:
                beta = out_xs[j]
                push(x0 + (beta - y0) * span / dy, out_ys[j])
    push(xs[-1], outer(ys[-1]))
    return tuple(new_xs), tuple(new_ys)


def _piece_window(curve: Curve, lo: Fraction, hi: Fraction) -> range:
    """Indices of pieces meeting [lo, hi]; validates the window."""
    xs, _ = curve
    if lo < xs[0] or hi > xs[-1]:
        raise DomainError(f"[{lo}, {hi}] not inside [{xs[0]}, {xs[-1]}]")
    first = max(bisect_right(xs, lo) - 1, 0)
    last = min(bisect_right(xs, hi) - 1, len(xs) - 2)
    return range(first, last + 1)


def curve_solve_equal(
    curve: Curve, target: Fraction, lo: Fraction, hi: Fraction
) -> SolutionSet:
    """Exact solution set { x in [lo, hi] : curve(x) = target }."""
    xs, ys = curve
    found: list[RatInterval] = []
    for i in _piece_window(curve, lo, hi):
        x0, x1 = xs[i], xs[i + 1]
        y0, y1 = ys[i], ys[i + 1]
        a = x0 if x0 >= lo else lo
        b = x1 if x1 <= hi else hi
        if a > b:
            continue
        va = y0 if a == x0 else y0 + (y1 - y0) * (a - x0) / (x1 - x0)
        vb = y1 if b == x1 else y0 + (y1 - y0) * (b - x0) / (x1 - x0)
        if va == vb:
            if va == target:
                found.append(RatInterval(a, b))
        elif min(va, vb) <= target <= max(va, vb):
            x_star = a + (target - va) * (b - a) / (vb - va)
            found.append(RatInterval(x_star, x_star))
    return SolutionSet.from_intervals(found)


def curve_solve_fixed(curve: Curve, lo: Fraction, hi: Fraction) -> SolutionSet:
    """Exact solution set { x in [lo, hi] : curve(x) = x }.

    A piece of slope one is either entirely fixed (a segment solution) or
    entirely free; any other slope contributes at most one root per piece.
    """
    xs, ys = curve
    found: list[RatInterval] = []
    for i in _piece_window(curve, lo, hi):
        x0, x1 = xs[i], xs[i + 1]
        y0, y1 = ys[i], ys[i + 1]
        a = x0 if x0 >= lo else lo
        b = x1 if x1 <= hi else hi
        if a > b:
            continue
        va = y0 if a == x0 else y0 + (y1 - y0) * (a - x0) / (x1 - x0)
        vb = y1 if b == x1 else y0 + (y1 - y0) * (b - x0) / (x1 - x0)
        ga = va - a
        gb = vb - b
        if ga == gb:
            if not ga:
                found.append(RatInterval(a, b))
        elif (ga <= 0 <= gb) or (gb <= 0 <= ga):
            x_star = a - ga * (b - a) / (gb - ga)
            found.append(RatInterval(x_star, x_star))
    return SolutionSet.from_intervals(found)


def curve_extremes(curve: Curve, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Exact (min, max) of the curve over [lo, hi].

    Extremes of a piecewise-linear function over a closed interval are
    attained at the interval endpoints or at interior breakpoints, so it
    suffices to inspect those finitely many values.
    """
    xs, ys = curve
    if lo < xs[0] or hi > xs[-1] or lo > hi:
        raise DomainError(f"[{lo}, {hi}] not inside [{xs[0]}, {xs[-1]}]")
    values = [curve_eval(curve, lo), curve_eval(curve, hi)]
    i0 = bisect_right(xs, lo)
    i1 = bisect_right(xs, hi) - 1
    for j in range(i0, i1 + 1):
        if lo < xs[j] < hi:
            values.append(ys[j])
    return min(values), max(values)


def _proper_divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


@dataclass(frozen=True)
class PLMap:
    """Continuous piecewise-linear self-map of a compact interval.

    The map is the linear interpolation through `breakpoints`, whose
    x-coordinates are strictly increasing and whose first and last entries
    define the domain.  All values must lie inside the domain, so the map
    sends its interval into itself and iteration is always defined.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    _xs: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _ys: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _slopes: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        pts = tuple(
            (as_rational(x), as_rational(y)) for x, y in self.breakpoints
        )
        if len(pts) < 2:
            raise ValueError("a map needs at least two breakpoints")
        xs = tuple(p[0] for p in pts)
        ys = tuple(p[1] for p in pts)
        for i in range(len(xs) - 1):
            if xs[i] >= xs[i + 1]:
                raise ValueError(
                    f"breakpoint x-values must be strictly increasing "
                    f"(got {xs[i]} then {xs[i + 1]})"
                )
        lo, hi = xs[0], xs[-1]
        for x, y in pts:
            if y < lo or y > hi:
                raise ValueError(
                    f"value {y} at x={x} leaves the domain [{lo}, {hi}]"
                )
        slopes = tuple(
            (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)
        )
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "_xs", xs)
        object.__setattr__(self, "_ys", ys)
        object.__setattr__(self, "_slopes", slopes)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[object, object]]) -> "PLMap":
        return cls(tuple((x, y) for x, y in pairs))

    # -- basic queries ----------------------------------------------------

    @property
    def domain(self) -> RatInterval:
        return RatInterval(self._xs[0], self._xs[-1])

    @property
    def domain_lo(self) -> Fraction:
        return self._xs[0]

    @property
    def domain_hi(self) -> Fraction:
        return self._xs[-1]

    @property
    def curve(self) -> Curve:
        return self._xs, self._ys

    def __call__(self, x: object) -> Fraction:
        x = as_rational(x)
        xs = self._xs
        if x < xs[0] or x > xs[-1]:
            raise DomainError(f"{x} outside [{xs[0]}, {xs[-1]}]")
        i = bisect_right(xs, x) - 1
        if i == len(xs) - 1:
            return self._ys[-1]
        if x == xs[i]:
            return self._ys[i]
        return self._ys[i] + self._slopes[i] * (x - xs[i])

    def iterate(self, x: object, n: int) -> Fraction:
        """n-fold application; iterate(x, 0) == x."""
        if n < 0:
            raise ValueError("iteration count must be non-negative")
        y = as_rational(x)
        if y < self.domain_lo or y > self.domain_hi:
            raise DomainError(f"{y} outside {self.domain}")
        for _ in range(n):
            y = self(y)
        return y

    def orbit(self, x: object, n: int) -> list[Fraction]:
        """The points x, f(x), ..., f^n(x) as a list of length n + 1."""
        y = as_rational(x)
        out = [y]
        for _ in range(n):
            y = self(y)
            out.append(y)
        return out

    # -- structural operations --------------------------------------------

    def compose(self, k: int) -> "PLMap":
        """Exact k-fold composition as a new map on the same domain.

        The breakpoint count can grow exponentially in k; callers bound k.
        Composition is cached per (map, k).
        """
        if k < 1:
            raise ValueError("composition power must be >= 1")
        return _compose_cached(self, k)

    def image(self, iv: RatInterval) -> RatInterval:
        """Exact image interval of iv under the map."""
        m, mx = curve_extremes(self.curve, iv.lo, iv.hi)
        return RatInterval(m, mx)

    def min_on(self, iv: RatInterval) -> Fraction:
        return curve_extremes(self.curve, iv.lo, iv.hi)[0]

    def max_on(self, iv: RatInterval) -> Fraction:
        return curve_extremes(self.curve, iv.lo, iv.hi)[1]

    def solve_equal(self, target: object, iv: RatInterval | None = None) -> SolutionSet:
        """Exact solution set of f(x) = target over iv (default whole domain)."""
        iv = iv if iv is not None else self.domain
        return curve_solve_equal(self.curve, as_rational(target), iv.lo, iv.hi)

    def solve_fixed(self, iv: RatInterval | None = None) -> SolutionSet:
        """Exact solution set of f(x) = x over iv (default whole domain)."""
        iv = iv if iv is not None else self.domain
        return curve_solve_fixed(self.curve, iv.lo, iv.hi)

    def fixed_points(self) -> SolutionSet:
        return self.solve_fixed()

    def periodic_points(self, p: int) -> list[Fraction]:
        """Points of exact minimal period p, sorted.

        Segments of the fixed-point set of the p-th composition are
        represented by their endpoints plus one interior sample, and each
        candidate is checked individually for minimal period.
        """
        if p < 1:
            raise ValueError("period must be >= 1")
        g = self if p == 1 else self.compose(p)
        # representatives of a merged solution set are strictly increasing,
        # so the filtered list needs no re-sorting or dedup
        candidates = g.solve_fixed().representatives()
        divisors = _proper_divisors(p)
        depth = divisors[-1] if divisors else 0
        out = []
        for x in candidates:
            y = x
            minimal = True
            for k in range(1, depth + 1):
                y = self(y)
                if y == x and p % k == 0:
                    minimal = False
                    break
            if minimal:
                out.append(x)
        return out

    def reflected(self) -> "PLMap":
        """Conjugate of the map by x -> lo + hi - x (orientation reversal)."""
        s = self.domain_lo + self.domain_hi
        pts = tuple((s - x, s - y) for x, y in reversed(self.breakpoints))
        return PLMap(pts)

    def reflect_point(self, x: object) -> Fraction:
        return self.domain_lo + self.domain_hi - as_rational(x)

    def __str__(self) -> str:
        pts = ", ".join(f"({x}, {y})" for x, y in self.breakpoints)
        return f"PLMap[{pts}]"


@lru_cache(maxsize=256)
def _compose_cached(f: PLMap, k: int) -> PLMap:
    if k == 1:
        return f
    half = _compose_cached(f, k // 2)
    curve = curve_after(half, half.curve)
    if k % 2 == 1:
        curve = curve_after(f, curve)
    return PLMap(tuple(zip(*curve)))
