"""Detectors for the five chaos hypotheses: odd periods, dense chain
recurrence, omega-limit structure, proximal-separating pairs, and orbit
oscillation.

The odd-period search and the chain transition graph are exact; the
orbit-sampling detectors are explicitly heuristic, with documented
thresholds, and their verdicts are evidence rather than certificates.
Only this module rounds: long orbits are snapped to a fixed 256-bit
dyadic grid between steps so horizons of 10^4 stay affordable.  Given the
same map, parameters and seed every detector is deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .plmap import PLMap, RatInterval
from .witness import ReturnHypothesis, ReturnHypothesisFound, check_return_hypothesis, classify_orbit

__all__ = [
    "DEFAULT_DELTA_PROX",
    "DEFAULT_DELTA_SEP",
    "DEFAULT_HORIZON",
    "DEFAULT_RESOLUTION",
    "ChainGraph",
    "ChainRecurrenceReport",
    "LYReport",
    "LYScanResult",
    "OmegaEstimate",
    "OscillationResult",
    "chain_graph",
    "chain_point_to_c",
    "chain_recurrent",
    "detect_odd_period",
    "li_yorke_scan",
    "omega_estimate",
    "oscillation_test",
    "snap_to_grid",
    "tarjan_scc",
]

DEFAULT_DELTA_SEP = Fraction(1, 100)
DEFAULT_DELTA_PROX = Fraction(1, 1000)
DEFAULT_HORIZON = 10_000
DEFAULT_RESOLUTION = 1024

_GRID_BITS = 256

# prime with 2 as a primitive root; seeds drawn from this lattice keep
# long orbits even under maps with slopes of the form +-2^k
_LATTICE_PRIME = 2_000_003


def snap_to_grid(x: Fraction, bits: int = _GRID_BITS) -> Fraction:
    """Cap orbit precision: values whose denominators fit in `bits` bits
    pass through exactly; larger ones round to the nearest multiple of
    2^-bits (ties to even).

    Leaving small denominators untouched keeps short exact cycles exact,
    so statements like "the tail gap is 2/7" stay decidable, while long
    generic orbits stay affordable.
    """
    if x.denominator.bit_length() <= bits:
        return x
    scale = 1 << bits
    return Fraction(round(x * scale), scale)


# -- odd periods -------------------------------------------------------------


def detect_odd_period(f: PLMap, max_odd: int) -> tuple[Fraction, int] | None:
    """Scan odd periods 3, 5, ... up to max_odd; return (c, n) for the
    smallest point of the first odd period found, or None.

    The returned c satisfies the witness hypothesis at return time n, so
    it can be handed straight to the witness builder.
    """
    if max_odd < 3 or max_odd % 2 == 0:
        raise ValueError("max_odd must be an odd integer >= 3")
    for n in range(3, max_odd + 1, 2):
        points = f.periodic_points(n)
        for c in points:
            if check_return_hypothesis(f, c, n) is not None:
                return c, n
    return None


# -- chain transition graph --------------------------------------------------


@dataclass(frozen=True)
class ChainGraph:
    """Directed graph over equal cells of the domain: i -> j whenever the
    epsilon-inflation of the exact image of cell i meets cell j."""

    resolution: int
    epsilon: Fraction
    cells: tuple[RatInterval, ...]
    edges: tuple[tuple[int, ...], ...]

    def edge_count(self) -> int:
        return sum(len(row) for row in self.edges)

    def edge_list(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.edges) for j in row]


def _make_cells(f: PLMap, resolution: int) -> tuple[RatInterval, ...]:
    lo, hi = f.domain_lo, f.domain_hi
    w = (hi - lo) / resolution
    return tuple(
        RatInterval(lo + i * w, lo + (i + 1) * w) for i in range(resolution)
    )


def chain_graph(f: PLMap, resolution: int, epsilon: Fraction) -> ChainGraph:
    """Exact transition graph at the given resolution and tolerance."""
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    cells = _make_cells(f, resolution)
    lo, hi = f.domain_lo, f.domain_hi
    w = (hi - lo) / resolution
    edges: list[tuple[int, ...]] = []
    for cell in cells:
        img = f.image(cell)
        a, b = img.lo - epsilon, img.hi + epsilon
        j_first = max(0, int((a - lo) / w) - 1)
        j_last = min(resolution - 1, int((b - lo) / w) + 1)
        row = tuple(
            j for j in range(j_first, j_last + 1)
            if cells[j].lo <= b and cells[j].hi >= a
        )
        edges.append(row)
    return ChainGraph(resolution, epsilon, cells, tuple(edges))


def tarjan_scc(edges: tuple[tuple[int, ...], ...]) -> list[list[int]]:
    """Strongly connected components, iterative Tarjan.

    Returns components as lists of node indices, in reverse topological
    order of the condensation.
    """
    n = len(edges)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            node, ptr = work[-1]
            if ptr == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack[node] = True
            advanced = False
            for k in range(ptr, len(edges[node])):
                nxt = edges[node][k]
                if index[nxt] == -1:
                    work[-1] = (node, k + 1)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if on_stack[nxt]:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            if low[node] == index[node]:
                comp = []
                while True:
                    v = stack.pop()
                    on_stack[v] = False
                    comp.append(v)
                    if v == node:
                        break
                components.append(comp)
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return components


@dataclass(frozen=True)
class ChainRecurrenceReport:
    """Cells on directed cycles of the transition graph, plus the exact
    witness that the square moves some point.

    `dense_flag` is set only when every cell is recurrent at this
    resolution and the verdict survives one resolution doubling, which
    damps discretisation artifacts.
    """

    resolution: int
    epsilon: Fraction
    recurrent_cells: frozenset[int]
    dense_flag: bool
    witness_a: Fraction | None


def _recurrent_cells(graph: ChainGraph) -> frozenset[int]:
    recurrent: set[int] = set()
    for comp in tarjan_scc(graph.edges):
        if len(comp) > 1:
            recurrent.update(comp)
    for i, row in enumerate(graph.edges):
        if i in row:
            recurrent.add(i)
    return frozenset(recurrent)


def chain_recurrent(
    f: PLMap, resolution: int, epsilon: Fraction
) -> ChainRecurrenceReport:
    """Cycle cells of the transition graph with a density verdict."""
    graph = chain_graph(f, resolution, epsilon)
    recurrent = _recurrent_cells(graph)
    dense = len(recurrent) == resolution
    if dense:
        doubled = chain_graph(f, 2 * resolution, epsilon)
        dense = len(_recurrent_cells(doubled)) == 2 * resolution

    f2 = f.compose(2)
    witness = None
    candidates = [x for x, _ in f.breakpoints]
    candidates.extend(cell.midpoint for cell in graph.cells)
    for a in candidates:
        if f2(a) != a:
            witness = a
            break
    return ChainRecurrenceReport(
        resolution=resolution,
        epsilon=Fraction(epsilon),
        recurrent_cells=recurrent,
        dense_flag=dense,
        witness_a=witness,
    )


def chain_point_to_c(
    f: PLMap, x0: Fraction, report: ChainRecurrenceReport
) -> Fraction | None:
    """From a moving chain-recurrent candidate x0, solve for a point c two
    steps before it on the stated side.

    For f(x0) < x0 the sought configuration is f(c) < c < f^2(c) = x0;
    for f(x0) > x0 it is the mirror f(c) > c > f^2(c) = x0.  Returns the
    smallest admissible c, or None when the geometry does not arise.
    """
    x0 = Fraction(x0)
    fx0 = f(x0)
    if fx0 == x0:
        return None
    solutions = f.compose(2).solve_equal(x0)
    for c in solutions.representatives():
        fc = f(c)
        if fx0 < x0 and fc < c < x0:
            return c
        if fx0 > x0 and fc > c > x0:
            return c
    return None


# -- omega-limit estimate ------------------------------------------------------


@dataclass(frozen=True)
class OmegaEstimate:
    """Cells hit by a sampled orbit tail and the fixed points among them.

    `multi_flag` records whether some visited cell contains none of the
    hit fixed points, i.e. the tail closure is not exhausted by them.
    """

    seed: Fraction
    burn_in: int
    sample_len: int
    resolution: int
    closure_cells: frozenset[int]
    fixed_point_hits: tuple[Fraction, ...]
    multi_flag: bool


def _cell_index(f: PLMap, resolution: int, x: Fraction) -> int:
    lo, hi = f.domain_lo, f.domain_hi
    idx = int((x - lo) * resolution / (hi - lo))
    return min(max(idx, 0), resolution - 1)


def omega_estimate(
    f: PLMap,
    b: Fraction,
    burn_in: int,
    sample_len: int,
    resolution: int = DEFAULT_RESOLUTION,
) -> OmegaEstimate:
    """Iterate from b on the 256-bit grid and record the tail's cells."""
    if sample_len < 1:
        raise ValueError("sample_len must be >= 1")
    b = Fraction(b)
    x = b
    for _ in range(burn_in):
        x = snap_to_grid(f(x))
    visited: set[int] = set()
    for _ in range(sample_len):
        visited.add(_cell_index(f, resolution, x))
        x = snap_to_grid(f(x))

    cells = _make_cells(f, resolution)
    hits: list[Fraction] = []
    for rep in f.solve_fixed().representatives():
        if _cell_index(f, resolution, rep) in visited:
            hits.append(rep)
    multi = any(
        not any(cells[i].contains(p) for p in hits) for i in visited
    )
    return OmegaEstimate(
        seed=b,
        burn_in=burn_in,
        sample_len=sample_len,
        resolution=resolution,
        closure_cells=frozenset(visited),
        fixed_point_hits=tuple(hits),
        multi_flag=multi,
    )


# -- proximal-separating pairs -------------------------------------------------


@dataclass(frozen=True)
class LYReport:
    """Gap statistics for one pair of seeds.

    sup_gap is the maximum gap over all computed steps, inf_gap the
    minimum over the second half.  The verdict is 'proximal-separating'
    when the orbits were at least delta_sep apart at some step yet come
    within delta_prox during the tail; note that a transient early
    separation counts toward sup_gap, so this is evidence, not proof.
    """

    x: Fraction
    y: Fraction
    horizon: int
    sup_gap: Fraction
    inf_gap: Fraction
    verdict: str  # "proximal-separating" | "indeterminate"


@dataclass(frozen=True)
class LYScanResult:
    """All pair reports plus the aggregated densely-chaotic evidence."""

    reports: tuple[LYReport, ...]
    densely_chaotic: bool
    non_periodic_seed: Fraction | None

    def __iter__(self):
        return iter(self.reports)

    def __len__(self) -> int:
        return len(self.reports)


def _pair_gaps(
    f: PLMap, x: Fraction, y: Fraction, horizon: int
) -> tuple[Fraction, Fraction]:
    sup_gap = abs(x - y)
    inf_gap = None
    tail_start = horizon // 2
    for i in range(1, horizon + 1):
        x = snap_to_grid(f(x))
        y = snap_to_grid(f(y))
        gap = abs(x - y)
        if gap > sup_gap:
            sup_gap = gap
        if i >= tail_start and (inf_gap is None or gap < inf_gap):
            inf_gap = gap
    return sup_gap, inf_gap if inf_gap is not None else sup_gap


def li_yorke_scan(
    f: PLMap,
    num_pairs: int,
    horizon: int = DEFAULT_HORIZON,
    delta_sep: Fraction = DEFAULT_DELTA_SEP,
    delta_prox: Fraction = DEFAULT_DELTA_PROX,
    resolution: int = DEFAULT_RESOLUTION,
    seed: int = 0,
) -> LYScanResult:
    """Gap statistics for seeded pairs drawn from an odd lattice.

    The lattice denominator is odd so that maps with dyadic slopes do not
    collapse the grid onto itself degenerately.  Alongside the pair
    verdicts, a few seeds are classified exactly to look for a point that
    fails the asymptotic period-two test within the horizon.
    """
    if delta_sep <= 0 or delta_prox <= 0:
        raise ValueError("thresholds must be positive")
    rng = random.Random(seed)
    lo, hi = f.domain_lo, f.domain_hi
    # odd prime with 2 as a primitive root: maps with dyadic slopes then
    # permute the lattice with long cycles instead of collapsing it
    den = max(_LATTICE_PRIME, 2 * resolution + 1)
    span = hi - lo

    def lattice_point() -> Fraction:
        return lo + span * Fraction(rng.randrange(1, den), den)

    reports = []
    for _ in range(num_pairs):
        x, y = lattice_point(), lattice_point()
        sup_gap, inf_gap = _pair_gaps(f, x, y, horizon)
        verdict = (
            "proximal-separating"
            if sup_gap >= delta_sep and inf_gap <= delta_prox
            else "indeterminate"
        )
        reports.append(LYReport(x, y, horizon, sup_gap, inf_gap, verdict))

    non_periodic = None
    for report in reports[: min(4, len(reports))]:
        try:
            outcome = classify_orbit(f, report.x, min(horizon, 2000))
        except ReturnHypothesisFound:
            continue
        if outcome.kind == "inconclusive":
            non_periodic = report.x
            break
    dense = any(r.verdict == "proximal-separating" for r in reports)
    return LYScanResult(tuple(reports), dense, non_periodic)


# -- oscillation test ----------------------------------------------------------


@dataclass(frozen=True)
class OscillationResult:
    """Consecutive-gap statistics g_n = |f^n(c) - f^{n+1}(c)|.

    True when the tail still swings at least delta_sep wide yet comes
    within delta_prox of closing, the finite-horizon proxy for a gap
    sequence with positive upper and zero lower limit.
    """

    c: Fraction
    horizon: int
    sup_tail: Fraction
    inf_tail: Fraction
    verdict: bool

    def __bool__(self) -> bool:
        return self.verdict


def oscillation_test(
    f: PLMap,
    c: Fraction,
    horizon: int = DEFAULT_HORIZON,
    delta_sep: Fraction = DEFAULT_DELTA_SEP,
    delta_prox: Fraction = DEFAULT_DELTA_PROX,
) -> OscillationResult:
    """Track |f^n(c) - f^{n+1}(c)| on the snapped orbit of c."""
    c = Fraction(c)
    x = c
    y = snap_to_grid(f(x))
    tail_start = horizon // 2
    sup_tail = None
    inf_tail = None
    for i in range(horizon):
        gap = abs(x - y)
        if i >= tail_start:
            if sup_tail is None or gap > sup_tail:
                sup_tail = gap
            if inf_tail is None or gap < inf_tail:
                inf_tail = gap
        x, y = y, snap_to_grid(f(y))
    verdict = sup_tail >= delta_sep and inf_tail <= delta_prox
    return OscillationResult(c, horizon, sup_tail, inf_tail, verdict)
