"""Constructive turbulence and trap witnesses for piecewise-linear maps.

Given a point whose orbit returns at-or-below an ascent (or the mirror
configuration), `build_witness` follows an exact constructive case split
and returns either a trap certificate (confined alternating dynamics
around a fixed point) or a double-turbulence certificate for the squared
map.  Every intermediate point of the construction is kept in a
`WitnessTrace` so each step can be re-verified independently, and every
certificate is checked by the `certify` module before being returned.

The construction is written for the ascending configuration
f^n(c) <= c < f(c); the mirror case is handled by conjugating with the
orientation reversal x -> lo + hi - x and reflecting the results back.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from .certificates import (
    DoubleTurbulenceCertificate,
    TrapCertificate,
    TrapInterval,
    TurbulencePair,
)
from .certify import verify_double, verify_trap, verify_turbulence
from .plmap import (
    PLMap,
    RatInterval,
    SolutionSet,
    as_rational,
    curve_after,
    curve_restrict,
    curve_solve_equal,
    curve_solve_fixed,
)

__all__ = [
    "ConstructionError",
    "DegenerateTwoCycleError",
    "ReturnHypothesis",
    "ReturnHypothesisFound",
    "OrbitClassification",
    "TowerPoint",
    "WitnessTrace",
    "build_witness",
    "check_return_hypothesis",
    "classify_orbit",
    "periodic_tower",
    "level_one_witness",
]


class ConstructionError(RuntimeError):
    """A construction step found no admissible point.

    Outside the exact two-cycle boundary (see `DegenerateTwoCycleError`)
    this indicates a bug, not a mathematical possibility; it is always
    surfaced with the partial trace attached.
    """

    def __init__(self, message: str, trace: "WitnessTrace | None" = None):
        super().__init__(message)
        self.trace = trace


class DegenerateTwoCycleError(ConstructionError):
    """The hypothesis point sits on an exact two-cycle and every admissible
    choice of auxiliary points collapses the construction.

    At this boundary (the return inequality holding with equality at a
    point of period two) neither certificate kind need exist: x -> 1 - x
    with c = 1/4, n = 2 satisfies the hypothesis yet has no trap and no
    turbulence, since its square is the identity.
    """


class ReturnHypothesisFound(Exception):
    """Raised by `classify_orbit` when the orbit itself produces a witness
    configuration; carry it to `build_witness` instead of classifying."""

    def __init__(self, c: Fraction, n: int):
        super().__init__(f"orbit satisfies witness hypothesis at c={c}, n={n}")
        self.c = c
        self.n = n


@dataclass(frozen=True)
class ReturnHypothesis:
    """A point c and return time n with f^n(c) <= c < f(c) (side 'up') or
    f(c) < c <= f^n(c) (side 'down')."""

    c: Fraction
    n: int
    side: str  # "up" | "down"


@dataclass(frozen=True)
class WitnessTrace:
    """Every intermediate point of the construction, in original
    coordinates.

    For side 'down' the fields satisfy the mirror relations (reflect the
    map and every value to recover the ascending ones).  Optional fields
    are populated according to the case taken.
    """

    c: Fraction
    n: int
    side: str
    X: tuple[Fraction, ...]
    a: Fraction
    b: Fraction
    z: Fraction
    v: Fraction
    z0: Fraction
    case: int
    d: Fraction | None = None
    s: Fraction | None = None
    t: Fraction | None = None
    t_tilde: Fraction | None = None
    u1: Fraction | None = None
    e: Fraction | None = None
    u: Fraction | None = None
    w: Fraction | None = None
    r: Fraction | None = None
    tower: tuple[tuple[Fraction, Fraction], ...] = ()

    def reflected(self, lo: Fraction, hi: Fraction) -> "WitnessTrace":
        s = lo + hi

        def rf(x):
            return None if x is None else s - x

        return WitnessTrace(
            c=s - self.c,
            n=self.n,
            side="down" if self.side == "up" else "up",
            X=tuple(sorted(s - x for x in self.X)),
            a=s - self.a, b=s - self.b, z=s - self.z, v=s - self.v,
            z0=s - self.z0, case=self.case,
            d=rf(self.d), s=rf(self.s), t=rf(self.t), t_tilde=rf(self.t_tilde),
            u1=rf(self.u1), e=rf(self.e), u=rf(self.u), w=rf(self.w),
            r=rf(self.r),
            tower=tuple((s - un, s - pn) for un, pn in self.tower),
        )


def check_return_hypothesis(f: PLMap, c: object, n: int) -> ReturnHypothesis | None:
    """Exact test of the return inequality; equality f^n(c) = c counts."""
    if n < 2:
        raise ValueError("return time n must be >= 2")
    c = as_rational(c)
    fc = f(c)
    fnc = f.iterate(c, n)
    if fc > c and fnc <= c:
        return ReturnHypothesis(c, n, "up")
    if fc < c and fnc >= c:
        return ReturnHypothesis(c, n, "down")
    return None


def _pick_in_open(
    solutions: SolutionSet, lo: Fraction, hi: Fraction
) -> Fraction | None:
    """Smallest deterministic solution strictly inside (lo, hi).

    For a segment of solutions straddling `lo`, the midpoint of the
    admissible overlap is used so the choice stays strictly interior.
    """
    for iv in solutions:
        if iv.hi <= lo or iv.lo >= hi:
            continue
        if iv.lo > lo:
            return iv.lo
        upper = min(iv.hi, hi)
        return (lo + upper) / 2
    return None


def _case3_right_pair(
    f: PLMap,
    f2: PLMap,
    d: Fraction,
    z0: Fraction,
    u1: Fraction,
    trace: WitnessTrace,
) -> tuple[TurbulencePair, dict]:
    """The turbulence pair on the far side of the fixed point.

    The band [d, z0] maps onto an interval whose endpoints are taken by
    f(d) and f(z0) whenever those differ, and the split point e = f(u1)
    then satisfies f(e) = d.  When f(d) = f(z0), the other extreme r of
    the band's image is attained only at interior points; u = f(u1) maps
    to d, and a point w between with f^2(w) = r splits the pair.
    """
    fd, fz0 = f(d), f(z0)
    band = RatInterval(d, z0)
    img = f.image(band)
    extras: dict = {}
    if fd != fz0:
        lo, hi = (fz0, fd) if fd > fz0 else (fd, fz0)
        if (img.lo, img.hi) != (lo, hi):
            raise ConstructionError(
                f"image of [{d}, {z0}] is {img}, expected [{lo}, {hi}]", trace)
        e = f(u1)
        if not (lo < e < hi):
            raise ConstructionError(f"split point e = {e} not inside ({lo}, {hi})", trace)
        extras["e"] = e
        pair = TurbulencePair(2, RatInterval(lo, hi), RatInterval(lo, e),
                              RatInterval(e, hi))
        return pair, extras

    u = f(u1)
    extras["u"] = u
    if img.lo == fd and img.hi > fd:
        # image is [f(d), r] with the maximum r attained only inside
        r = img.hi
        extras["r"] = r
        if not (fd < u <= r):
            raise ConstructionError(f"u = {u} not inside ({fd}, {r}]", trace)
        w = _pick_in_open(f2.solve_equal(r, RatInterval(fd, u)), fd, u)
        if w is None:
            raise ConstructionError(
                f"no solution of f^2 = {r} strictly inside ({fd}, {u})", trace)
        extras["w"] = w
        pair = TurbulencePair(2, RatInterval(fd, u), RatInterval(fd, w),
                              RatInterval(w, u))
        return pair, extras
    if img.hi == fd and img.lo < fd:
        # image is [r, f(d)] with the minimum r attained only inside
        r = img.lo
        extras["r"] = r
        if not (r <= u < fd):
            raise ConstructionError(f"u = {u} not inside [{r}, {fd})", trace)
        w = _pick_in_open(f2.solve_equal(r, RatInterval(u, fd)), u, fd)
        if w is None:
            raise ConstructionError(
                f"no solution of f^2 = {r} strictly inside ({u}, {fd})", trace)
        extras["w"] = w
        pair = TurbulencePair(2, RatInterval(u, fd), RatInterval(u, w),
                              RatInterval(w, fd))
        return pair, extras
    raise ConstructionError(
        f"band [{d}, {z0}] maps to the single point {fd}, impossible here", trace)


def _build_up(
    f: PLMap, h: ReturnHypothesis
) -> tuple[TrapCertificate | DoubleTurbulenceCertificate, WitnessTrace]:
    """Construction for the ascending side f^n(c) <= c < f(c).

    Anchor points:
      X   the first n orbit points of c
      a   the largest orbit point still mapped strictly upward
      b   the largest orbit point in [a, f(a)] mapped down to a or below
      z   the smallest fixed point in [a, b]
      v   the largest preimage of b in [a, z]
      z0  the smallest fixed point of the square in [v, z]

    The defaults (largest b, smallest z, largest v) are deterministic
    tie-breaks; when they collapse the construction (z0 = v, which forces
    an exact two-cycle through the configuration) the finitely many other
    admissible choices are tried in a fixed order before giving up.
    """
    c, n = h.c, h.n
    X = f.orbit(c, n - 1)
    x_set = sorted(set(X))
    ascending = [x for x in x_set if f(x) > x]
    if not ascending:
        raise ConstructionError("no ascending orbit point, hypothesis violated")
    a = max(ascending)
    fa = f(a)
    b_candidates = sorted(
        (x for x in x_set if a <= x <= fa and f(x) <= a), reverse=True)
    if not b_candidates:
        raise ConstructionError(f"no drop point in orbit inside [{a}, {fa}]")

    f2 = f.compose(2)
    first_degenerate: WitnessTrace | None = None

    for b in b_candidates:
        z_solutions = f.solve_fixed(RatInterval(a, b))
        if z_solutions.empty:
            raise ConstructionError(f"no fixed point in [{a}, {b}]")
        for z in sorted(set(z_solutions.representatives())):
            v_solutions = f.solve_equal(b, RatInterval(a, z))
            if v_solutions.empty:
                continue
            for v in sorted(set(v_solutions.representatives()), reverse=True):
                z0_solutions = f2.solve_fixed(RatInterval(v, z))
                if z0_solutions.empty:
                    raise ConstructionError(
                        f"no fixed point of the square in [{v}, {z}]")
                z0 = z0_solutions.min_point()
                skeleton = WitnessTrace(
                    c=c, n=n, side="up", X=tuple(x_set),
                    a=a, b=b, z=z, v=v, z0=z0, case=0)
                if z0 == v:
                    if first_degenerate is None:
                        first_degenerate = skeleton
                    continue
                return _cases_up(f, f2, h, skeleton)

    raise DegenerateTwoCycleError(
        "every admissible choice collapses: the configuration sits on an "
        "exact two-cycle, where neither certificate kind need exist",
        first_degenerate)


def _cases_up(
    f: PLMap, f2: PLMap, h: ReturnHypothesis, tr: WitnessTrace
) -> tuple[TrapCertificate | DoubleTurbulenceCertificate, WitnessTrace]:
    minI = f.domain_lo
    c, v, z, z0 = tr.c, tr.v, tr.z, tr.z0
    left = RatInterval(minI, v)

    d_solutions = f2.solve_equal(z0, left)
    if d_solutions.empty:
        # case 1: the square stays below z0 left of v, trap [minI, t]
        m1 = f2.max_on(left)
        t = (max(v, m1) + z0) / 2
        cert = TrapCertificate(z=z, K=RatInterval(minI, t), c=c)
        trace = dataclasses.replace(tr, case=1, t=t)
        result = verify_trap(f, cert)
        if not result:
            raise ConstructionError(f"case 1 certificate rejected: {result.reason}",
                                    trace)
        return cert, trace

    d = d_solutions.max_point()
    s = f2.min_on(RatInterval(d, z0))
    if s > d:
        # case 2: the square's dip stays above d, trap [s, t~]
        m2 = f2.max_on(RatInterval(s, v))
        t_tilde = (max(v, m2) + z0) / 2
        cert = TrapCertificate(z=z, K=RatInterval(s, t_tilde), c=c)
        trace = dataclasses.replace(tr, case=2, d=d, s=s, t_tilde=t_tilde)
        result = verify_trap(f, cert)
        if not result:
            raise ConstructionError(f"case 2 certificate rejected: {result.reason}",
                                    trace)
        return cert, trace

    # case 3: the square comes all the way back down to d inside the band
    u1_solutions = f2.solve_equal(d, RatInterval(d, z0))
    if u1_solutions.empty:
        raise ConstructionError(
            f"square never returns to {d} on [{d}, {z0}]",
            dataclasses.replace(tr, case=3, d=d, s=s))
    u1 = u1_solutions.min_point()
    trace = dataclasses.replace(tr, case=3, d=d, s=s, u1=u1)
    left_pair = TurbulencePair(
        2, RatInterval(d, z0), RatInterval(d, u1), RatInterval(u1, z0))
    right_pair, extras = _case3_right_pair(f, f2, d, z0, u1, trace)
    trace = dataclasses.replace(trace, **extras)
    cert = DoubleTurbulenceCertificate(left_pair, right_pair).canonical()
    result = verify_double(f, cert)
    if not result:
        raise ConstructionError(f"case 3 certificate rejected: {result.reason}", trace)
    return cert, trace


def build_witness(
    f: PLMap, h: ReturnHypothesis
) -> tuple[TrapCertificate | DoubleTurbulenceCertificate, WitnessTrace]:
    """Run the constructive case split and return a verified certificate
    with its trace.

    Exactly one certificate kind comes back: a `TrapCertificate` (cases 1
    and 2) or a `DoubleTurbulenceCertificate` (case 3).  Raises
    `ConstructionError` if any step finds no admissible point, and its
    subclass `DegenerateTwoCycleError` on the exact two-cycle boundary.
    """
    recheck = check_return_hypothesis(f, h.c, h.n)
    if recheck is None or recheck.side != h.side:
        raise ValueError(f"hypothesis {h} does not hold for this map")
    if h.side == "up":
        return _build_up(f, h)
    rf = f.reflected()
    rc = f.reflect_point(h.c)
    rh = ReturnHypothesis(rc, h.n, "up")
    cert, trace = _build_up(rf, rh)
    lo, hi = f.domain_lo, f.domain_hi
    return cert.reflected(lo, hi), trace.reflected(lo, hi)


# -- periodic tower ---------------------------------------------------------


@dataclass(frozen=True)
class TowerPoint:
    """Level n of the tower: u_n and a point p_n of minimal period 2n."""

    n: int
    u: Fraction
    p: Fraction

    @property
    def period(self) -> int:
        return 2 * self.n


def _verify_tower_point(
    f: PLMap, p: Fraction, n: int, z0: Fraction, trace: WitnessTrace
) -> None:
    period = 2 * n
    orbit = f.orbit(p, period)
    if orbit[-1] != p:
        raise ConstructionError(f"tower point {p} not {period}-periodic", trace)
    for q in range(1, period):
        if period % q == 0 and orbit[q] == p:
            raise ConstructionError(
                f"tower point {p} has period {q}, expected {period}", trace)
    for i, y in enumerate(orbit):
        if i % 2 == 0 and not y < z0:
            raise ConstructionError(
                f"even iterate f^{i}({p}) = {y} not below {z0}", trace)
        if i % 2 == 1 and not y > z0:
            raise ConstructionError(
                f"odd iterate f^{i}({p}) = {y} not above {z0}", trace)


def periodic_tower(f: PLMap, trace: WitnessTrace, N: int) -> list[TowerPoint]:
    """Points p_1, ..., p_N of minimal periods 2, 4, ..., 2N from a case-3
    trace.

    Level n solves (f^2)^{n-1} = u_1 on [d, p_{n-1}] for u_n and takes the
    smallest fixed point of (f^2)^n in (d, u_n) as p_n; compositions are
    built restricted to the shrinking bands, which keeps the breakpoint
    growth proportional to what the band actually sees.  Every p_n is
    re-verified by exact iteration (minimal period and the alternation of
    its orbit around z0) before being returned.
    """
    if trace.case != 3:
        raise ValueError("periodic tower requires a case-3 trace")
    if N < 0:
        raise ValueError("tower height must be >= 0")
    if N == 0:
        return []

    if trace.side == "up":
        work = f
        d, u1, z0 = trace.d, trace.u1, trace.z0
        back = lambda x: x  # noqa: E731
    else:
        work = f.reflected()
        s = f.domain_lo + f.domain_hi
        d, u1, z0 = s - trace.d, s - trace.u1, s - trace.z0
        back = lambda x: s - x  # noqa: E731
    if d is None or u1 is None:
        raise ValueError("trace is missing the case-3 band")

    g = work.compose(2)
    p_solutions = curve_solve_fixed(g.curve, d, u1)
    p_prev = _pick_strictly_inside(p_solutions, d, u1)
    if p_prev is None:
        raise ConstructionError(f"no fixed point of the square in ({d}, {u1})", trace)
    _verify_tower_point(work, p_prev, 1, z0, trace)
    out = [TowerPoint(1, back(u1), back(p_prev))]

    if N == 1:
        return out

    # band: curve of g^(n-1) restricted to [d, p_{n-1}]
    band = curve_restrict(g.curve, d, p_prev)
    for n in range(2, N + 1):
        un_solutions = curve_solve_equal(band, u1, d, p_prev)
        if un_solutions.empty:
            raise ConstructionError(
                f"no solution of the level-{n} return equation on [{d}, {p_prev}]",
                trace)
        u_n = un_solutions.min_point()
        fix_curve = curve_after(g, curve_restrict(band, d, u_n))
        p_n = _pick_strictly_inside(curve_solve_fixed(fix_curve, d, u_n), d, u_n)
        if p_n is None:
            raise ConstructionError(
                f"no level-{n} periodic point inside ({d}, {u_n})", trace)
        _verify_tower_point(work, p_n, n, z0, trace)
        out.append(TowerPoint(n, back(u_n), back(p_n)))
        band = curve_after(g, curve_restrict(band, d, p_n))
        p_prev = p_n
    return out


def _pick_strictly_inside(
    solutions: SolutionSet, lo: Fraction, hi: Fraction
) -> Fraction | None:
    """Smallest solution point strictly inside (lo, hi)."""
    for iv in solutions:
        if iv.hi <= lo or iv.lo >= hi:
            continue
        if iv.lo > lo:
            return iv.lo
        return (lo + min(iv.hi, hi)) / 2
    return None


# -- orbit classification ---------------------------------------------------


@dataclass(frozen=True)
class OrbitClassification:
    """Outcome of following a single orbit.

    kind 'monotone': the tail from `from_index` is weakly monotone and
    provably converges to the exact fixed point `limit`.

    kind 'spiral': the orbit alternates around the fixed point `z_hat`
    with the nested run pattern; `p` and `q` are set exactly when the
    orbit is exactly 2-periodic in its tail, otherwise `p_range` and
    `q_range` carry enclosing bounds.  `switch_indices` are the recorded
    side changes.

    kind 'inconclusive': nothing was established within the horizon (or
    the orbit's denominators outgrew the configured bit bound).
    """

    kind: str
    horizon: int
    limit: Fraction | None = None
    from_index: int | None = None
    z_hat: Fraction | None = None
    p: Fraction | None = None
    q: Fraction | None = None
    p_range: RatInterval | None = None
    q_range: RatInterval | None = None
    switch_indices: tuple[int, ...] = ()


def _switch_indices(xs: list[Fraction], z_hat: Fraction) -> tuple[int, ...]:
    out = []
    for i in range(1, len(xs)):
        if (xs[i] - z_hat) * (xs[i - 1] - z_hat) < 0:
            out.append(i)
    return tuple(out)


def _monotone_attempt(
    f: PLMap, xs: list[Fraction], j: int
) -> OrbitClassification | None:
    """Try to certify a weakly monotone tail as converging.

    For an increasing tail ending at x the candidate limit is the smallest
    fixed point z* at or above x.  The certificate is x <= f(y) <= z* for
    every y in [x, z*], which traps the tail and forces convergence to z*.
    The attempt is abandoned when an earlier orbit point lies strictly
    inside (x, z*): the tail will sweep past it, and if that point was a
    descent the sweep creates a witness configuration the incremental scan
    must be allowed to see.
    """
    if j < 2:
        return None
    x = xs[j]
    if xs[j - 2] <= xs[j - 1] <= x:
        rising = True
    elif xs[j - 2] >= xs[j - 1] >= x:
        rising = False
    else:
        return None

    if rising:
        fixed = f.solve_fixed(RatInterval(x, f.domain_hi))
        if fixed.empty:
            return None
        z_star = fixed.min_point()
        span = RatInterval(x, z_star)
        drift_lo = min(f(p) - p for p in _span_candidates(f, span))
        if drift_lo < 0 or f.max_on(span) > z_star:
            return None
    else:
        fixed = f.solve_fixed(RatInterval(f.domain_lo, x))
        if fixed.empty:
            return None
        z_star = fixed.max_point()
        span = RatInterval(z_star, x)
        drift_hi = max(f(p) - p for p in _span_candidates(f, span))
        if drift_hi > 0 or f.min_on(span) < z_star:
            return None

    lo, hi = min(x, z_star), max(x, z_star)
    if any(lo < y < hi for y in xs[:j]):
        return None

    m = j
    while m > 0 and (
        (rising and xs[m - 1] <= xs[m]) or (not rising and xs[m - 1] >= xs[m])
    ):
        m -= 1
    return OrbitClassification(
        kind="monotone", horizon=j, limit=z_star, from_index=m)


def _span_candidates(f: PLMap, span: RatInterval) -> list[Fraction]:
    pts = [span.lo, span.hi]
    pts.extend(x for x in f._xs if span.lo < x < span.hi)
    return pts


def _spiral_attempt(
    f: PLMap, xs: list[Fraction], horizon: int
) -> OrbitClassification | None:
    """Check the alternating nested-run pattern against each fixed point."""
    for z_hat in f.solve_fixed().representatives():
        sides = [1 if x > z_hat else (-1 if x < z_hat else 0) for x in xs]
        if any(s == 0 for s in sides):
            continue
        runs: list[tuple[int, list[Fraction]]] = []
        for x, s in zip(xs, sides):
            if runs and runs[-1][0] == s:
                runs[-1][1].append(x)
            else:
                runs.append((s, [x]))
        if len(runs) < 3:
            continue
        ok = True
        prev_below: list[Fraction] | None = None
        prev_above: list[Fraction] | None = None
        for s, vals in runs:
            inc = all(vals[i] < vals[i + 1] for i in range(len(vals) - 1))
            dec = all(vals[i] > vals[i + 1] for i in range(len(vals) - 1))
            if s < 0:
                if not inc or (prev_below is not None and vals[0] <= prev_below[-1]):
                    ok = False
                    break
                prev_below = vals
            else:
                if not dec or (prev_above is not None and vals[0] >= prev_above[-1]):
                    ok = False
                    break
                prev_above = vals
        if not ok or prev_below is None or prev_above is None:
            continue
        return OrbitClassification(
            kind="spiral", horizon=horizon, z_hat=z_hat,
            p_range=RatInterval(prev_below[-1], z_hat),
            q_range=RatInterval(z_hat, prev_above[-1]),
            switch_indices=_switch_indices(xs, z_hat))
    return None


def classify_orbit(
    f: PLMap,
    x0: object,
    horizon: int,
    max_denominator_bits: int = 4096,
) -> OrbitClassification:
    """Follow the exact orbit of x0 and classify its asymptotics.

    The orbit is scanned incrementally for witness configurations: a later
    point falling strictly below an earlier ascending point (or the
    mirror), or the orbit closing into an exact cycle of minimal period at
    least 3.  Any such configuration raises `ReturnHypothesisFound` with the
    earliest witness; exact cycles of period 1 or 2 classify as monotone
    or spiral.  Orbits whose denominators outgrow `max_denominator_bits`
    return inconclusive rather than switching to approximation.
    """
    x = as_rational(x0)
    if not f.domain.contains(x):
        raise ValueError(f"{x} outside {f.domain}")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")

    xs: list[Fraction] = [x]
    seen: dict[Fraction, int] = {x: 0}
    asc_max: Fraction | None = None
    desc_min: Fraction | None = None

    for j in range(1, horizon + 1):
        x = f(x)
        if x.denominator.bit_length() > max_denominator_bits:
            return OrbitClassification(kind="inconclusive", horizon=j)
        xs.append(x)

        # fold in the direction of x_{j-2}, now old enough to witness
        if j >= 2:
            prev = xs[j - 2]
            nxt = xs[j - 1]
            if nxt > prev:
                asc_max = prev if asc_max is None else max(asc_max, prev)
            elif nxt < prev:
                desc_min = prev if desc_min is None else min(desc_min, prev)

        if x in seen:
            i0 = seen[x]
            period = j - i0
            cycle = xs[i0:j]
            if period >= 3:
                witnesses = [i0]
                witnesses.extend(
                    i for i in range(j - 1)
                    if xs[i + 1] > xs[i] and x < xs[i])
                witnesses.extend(
                    i for i in range(j - 1)
                    if xs[i + 1] < xs[i] and x > xs[i])
                i_best = min(witnesses)
                raise ReturnHypothesisFound(xs[i_best], j - i_best)
            if period == 1:
                m = i0
                while m > 0 and xs[m - 1] == xs[m]:
                    m -= 1
                return OrbitClassification(
                    kind="monotone", horizon=j, limit=x, from_index=m)
            p, q = min(cycle), max(cycle)
            z_hat = f.solve_fixed(RatInterval(p, q)).min_point()
            return OrbitClassification(
                kind="spiral", horizon=j, z_hat=z_hat, p=p, q=q,
                p_range=RatInterval(p, p), q_range=RatInterval(q, q),
                switch_indices=_switch_indices(xs, z_hat))
        seen[x] = j

        if j >= 2:
            up_hit = asc_max is not None and x < asc_max
            down_hit = desc_min is not None and x > desc_min
            if up_hit or down_hit:
                witnesses = [
                    i for i in range(j - 1)
                    if (xs[i + 1] > xs[i] and x < xs[i])
                    or (xs[i + 1] < xs[i] and x > xs[i])]
                i_best = min(witnesses)
                raise ReturnHypothesisFound(xs[i_best], j - i_best)

        concluded = _monotone_attempt(f, xs, j)
        if concluded is not None:
            return concluded

    spiral = _spiral_attempt(f, xs, horizon)
    if spiral is not None:
        return spiral
    return OrbitClassification(kind="inconclusive", horizon=horizon)


# -- level-one witnesses -----------------------------------------------------


def level_one_witness(
    f: PLMap, z: object, c: object
) -> TrapInterval | TurbulencePair:
    """Level-one case split for a point pushed strictly away from a fixed
    point: f(c) < c < z or z < c < f(c).

    Returns either a `TrapInterval` (the map sends an interval around c
    strictly inside itself, away from z) or a verified `TurbulencePair`
    for the map itself, in which case points of minimal periods 1, 2 and 3
    are spot-checked to exist.
    """
    z = as_rational(z)
    c = as_rational(c)
    if f(z) != z:
        raise ValueError(f"{z} is not a fixed point")
    fc = f(c)
    if fc < c < z:
        return _level_one_descending(f, z, c)
    if z < c < fc:
        rf = f.reflected()
        rz, rc = f.reflect_point(z), f.reflect_point(c)
        result = _level_one_descending(rf, rz, rc)
        return result.reflected(f.domain_lo, f.domain_hi)
    raise ValueError(
        f"need f(c) < c < z or z < c < f(c); got f({c}) = {fc}, z = {z}")


def _level_one_descending(
    f: PLMap, z: Fraction, c: Fraction
) -> TrapInterval | TurbulencePair:
    minI = f.domain_lo
    z0p = f.solve_fixed(RatInterval(c, z)).min_point()
    left = RatInterval(minI, c)

    d_solutions = f.solve_equal(z0p, left)
    if d_solutions.empty:
        m1 = f.max_on(left)
        t = (max(c, m1) + z0p) / 2
        return TrapInterval(J=RatInterval(minI, t), z=z, c=c)
    d = d_solutions.max_point()
    s = f.min_on(RatInterval(d, z0p))
    if s > d:
        m2 = f.max_on(RatInterval(s, c))
        t = (max(c, m2) + z0p) / 2
        return TrapInterval(J=RatInterval(s, t), z=z, c=c)

    u1 = f.solve_equal(d, RatInterval(d, z0p)).min_point()
    pair = TurbulencePair(
        1, RatInterval(d, z0p), RatInterval(d, u1), RatInterval(u1, z0p))
    result = verify_turbulence(f, pair)
    if not result:
        raise ConstructionError(f"level-one pair rejected: {result.reason}")
    for p in (1, 2, 3):
        if not f.periodic_points(p):
            raise ConstructionError(f"turbulent map missing period-{p} points")
    return pair
