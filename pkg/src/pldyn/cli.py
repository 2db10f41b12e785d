"""Command-line front end.

Exit codes are uniform across subcommands: 0 for success or a verified
certificate, 1 for a mathematical refutation (hypothesis fails, invalid
certificate), 2 for malformed input.  All persisted values are exact
"p/q" strings; figures are optional side outputs rendered next to the
delimited data.
"""

from __future__ import annotations

import dataclasses
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import click

from . import detectors, plots
from .certificates import (
    DoubleTurbulenceCertificate,
    TrapCertificate,
    TrapInterval,
    TurbulencePair,
)
from .certify import (
    verify_double,
    verify_trap,
    verify_trap_interval,
    verify_turbulence,
)
from .plmap import DomainError, PLMap
from .serialize import (
    CertificateFormatError,
    MapFormatError,
    encode_certificate,
    fingerprint,
    format_rational,
    load_map,
    map_to_json_dict,
    parse_certificate_file,
    parse_rational,
    render_certificate_file,
)
from .witness import (
    ConstructionError,
    ReturnHypothesisFound,
    build_witness,
    check_return_hypothesis,
    classify_orbit,
    periodic_tower,
)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_BAD_INPUT = 2


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_map_arg(path: str) -> PLMap:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_BAD_INPUT, f"cannot read {path}: {exc}")
    try:
        return load_map(text)
    except MapFormatError as exc:
        _fail(EXIT_BAD_INPUT, f"{path}: {exc}")


def _parse_rational_arg(text: str, name: str) -> Fraction:
    try:
        return parse_rational(text)
    except MapFormatError:
        _fail(EXIT_BAD_INPUT, f"{name} must be a rational like 2/7, got {text!r}")


def _write_or_stdout(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option()
def main() -> None:
    """Certified analysis of continuous piecewise-linear interval maps."""


# -- analyze -----------------------------------------------------------------


def _condition_odd_period(f: PLMap, max_odd: int) -> tuple[dict, list[dict]]:
    found = detectors.detect_odd_period(f, max_odd)
    if found is None:
        return {"status": "negative", "max_odd": max_odd}, []
    c, n = found
    block = {
        "status": "certificate",
        "c": format_rational(c),
        "n": n,
        "max_odd": max_odd,
    }
    certs = _certify_trigger(f, c, n, source=f"odd period {n}")
    return block, certs


def _certify_trigger(f: PLMap, c: Fraction, n: int, source: str) -> list[dict]:
    h = check_return_hypothesis(f, c, n)
    if h is None:
        return []
    try:
        cert, trace = build_witness(f, h)
    except ConstructionError as exc:
        return [{
            "source": source,
            "verified": False,
            "error": str(exc),
        }]
    if isinstance(cert, DoubleTurbulenceCertificate):
        ok = bool(verify_double(f, cert))
    else:
        ok = bool(verify_trap(f, cert))
    entry = encode_certificate(cert, trace)
    entry["source"] = source
    entry["verified"] = ok
    return [entry]


def _condition_chain(f: PLMap, resolution: int, epsilon: Fraction) -> tuple[dict, list[dict]]:
    report = detectors.chain_recurrent(f, resolution, epsilon)
    block = {
        "status": "heuristic evidence",
        "resolution": resolution,
        "epsilon": format_rational(epsilon),
        "dense_flag": report.dense_flag,
        "recurrent_cells": len(report.recurrent_cells),
        "witness_a": None if report.witness_a is None
        else format_rational(report.witness_a),
        "satisfied": report.dense_flag and report.witness_a is not None,
    }
    certs: list[dict] = []
    if block["satisfied"]:
        c = _chain_certificate_candidate(f, report)
        if c is not None:
            block["chain_point_c"] = format_rational(c)
            certs = _certify_trigger(f, c, 2, source="chain recurrence")
    return block, certs


def _chain_certificate_candidate(f: PLMap, report) -> Fraction | None:
    lo, hi = f.domain_lo, f.domain_hi
    w = (hi - lo) / report.resolution
    candidates = [x for x, _ in f.breakpoints]
    for i in sorted(report.recurrent_cells):
        candidates.append(lo + i * w + w / 2)
    for x0 in candidates:
        if f(x0) == x0:
            continue
        c = detectors.chain_point_to_c(f, x0, report)
        if c is not None and check_return_hypothesis(f, c, 2) is not None:
            return c
    return None


def _condition_omega(f: PLMap, seed: int, resolution: int, horizon: int) -> dict:
    rng_seed = Fraction(
        (seed * 2654435761 + 123457) % detectors._LATTICE_PRIME or 1,
        detectors._LATTICE_PRIME)
    b = f.domain_lo + (f.domain_hi - f.domain_lo) * rng_seed
    est = detectors.omega_estimate(
        f, b, burn_in=min(horizon, 1000), sample_len=min(horizon, 3000),
        resolution=resolution)
    return {
        "status": "heuristic evidence",
        "seed": format_rational(b),
        "cells_visited": len(est.closure_cells),
        "fixed_point_hits": [format_rational(p) for p in est.fixed_point_hits],
        "multi_flag": est.multi_flag,
        "satisfied": bool(est.fixed_point_hits) and est.multi_flag,
    }


def _condition_li_yorke(
    f: PLMap, pairs: int, horizon: int, resolution: int, seed: int
) -> dict:
    scan = detectors.li_yorke_scan(
        f, num_pairs=pairs, horizon=horizon, resolution=resolution, seed=seed)
    return {
        "status": "heuristic evidence",
        "pairs": pairs,
        "horizon": horizon,
        "proximal_separating": sum(
            1 for r in scan.reports if r.verdict == "proximal-separating"),
        "densely_chaotic": scan.densely_chaotic,
        "non_periodic_seed": None if scan.non_periodic_seed is None
        else format_rational(scan.non_periodic_seed),
        "satisfied": scan.densely_chaotic,
    }


def _condition_oscillation(f: PLMap, horizon: int, seed: int) -> dict:
    c = f.domain_lo + (f.domain_hi - f.domain_lo) * Fraction(
        (seed * 48271 + 123457) % detectors._LATTICE_PRIME or 1,
        detectors._LATTICE_PRIME)
    res = detectors.oscillation_test(f, c, horizon=horizon)
    return {
        "status": "heuristic evidence",
        "c": format_rational(c),
        "sup_tail": format_rational(res.sup_tail),
        "inf_tail": format_rational(res.inf_tail),
        "satisfied": res.verdict,
    }


def _orbit_block(f: PLMap, x0: Fraction, horizon: int) -> tuple[dict, list[dict]]:
    entry: dict = {"x0": format_rational(x0)}
    certs: list[dict] = []
    try:
        outcome = classify_orbit(f, x0, horizon)
    except ReturnHypothesisFound as exc:
        entry["outcome"] = "witness hypothesis"
        entry["c"] = format_rational(exc.c)
        entry["n"] = exc.n
        certs = _certify_trigger(f, exc.c, exc.n, source=f"orbit of {x0}")
        return entry, certs
    entry["outcome"] = outcome.kind
    if outcome.kind == "monotone":
        entry["limit"] = format_rational(outcome.limit)
        entry["from_index"] = outcome.from_index
    elif outcome.kind == "spiral":
        entry["z_hat"] = format_rational(outcome.z_hat)
        if outcome.p is not None:
            entry["p"] = format_rational(outcome.p)
            entry["q"] = format_rational(outcome.q)
        else:
            entry["p_range"] = [format_rational(outcome.p_range.lo),
                                format_rational(outcome.p_range.hi)]
            entry["q_range"] = [format_rational(outcome.q_range.lo),
                                format_rational(outcome.q_range.hi)]
        entry["switches"] = len(outcome.switch_indices)
    return entry, certs


@main.command()
@click.argument("map_file", type=click.Path())
@click.option("--horizon", default=detectors.DEFAULT_HORIZON, show_default=True,
              help="Iteration horizon for the sampling detectors.")
@click.option("--resolution", default=detectors.DEFAULT_RESOLUTION,
              show_default=True, help="Cell count for grid detectors.")
@click.option("--epsilon", default=None,
              help="Chain tolerance as p/q (default 1/resolution).")
@click.option("--max-odd", default=5, show_default=True,
              help="Largest odd period scanned.")
@click.option("--pairs", default=12, show_default=True,
              help="Seed pairs for the proximal-separating scan.")
@click.option("--seed", default=0, show_default=True,
              help="Seed for all sampled detectors.")
@click.option("--x0", "x0s", multiple=True,
              help="Classify the orbit of this point (repeatable).")
@click.option("--out", type=click.Path(), default=None,
              help="Write the JSON report here instead of stdout.")
@click.option("--figures", type=click.Path(), default=None,
              help="Directory for rendered figures.")
@click.option("--chain-graph-out", type=click.Path(), default=None,
              help="Export the chain transition graph as an edge list.")
def analyze(map_file, horizon, resolution, epsilon, max_odd, pairs, seed,
            x0s, out, figures, chain_graph_out):
    """Run every detector on a map and report findings with certificates."""
    f = _load_map_arg(map_file)
    eps = (
        Fraction(1, resolution) if epsilon is None
        else _parse_rational_arg(epsilon, "--epsilon")
    )
    if eps <= 0:
        _fail(EXIT_BAD_INPUT, "--epsilon must be positive")

    timings: dict[str, float] = {}
    certificates: list[dict] = []
    conditions: dict[str, dict] = {}

    t0 = time.perf_counter()
    conditions["odd_period"], certs = _condition_odd_period(f, max_odd)
    certificates.extend(certs)
    timings["odd_period"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    conditions["chain_recurrence"], certs = _condition_chain(f, resolution, eps)
    certificates.extend(certs)
    timings["chain_recurrence"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    conditions["omega_limit"] = _condition_omega(f, seed, resolution, horizon)
    timings["omega_limit"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    conditions["li_yorke"] = _condition_li_yorke(f, pairs, horizon, resolution, seed)
    timings["li_yorke"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    conditions["oscillation"] = _condition_oscillation(f, horizon, seed)
    timings["oscillation"] = time.perf_counter() - t0

    orbits = []
    for raw in x0s:
        x0 = _parse_rational_arg(raw, "--x0")
        if not f.domain.contains(x0):
            _fail(EXIT_BAD_INPUT, f"--x0 {raw} outside the domain {f.domain}")
        block, certs = _orbit_block(f, x0, horizon)
        orbits.append(block)
        certificates.extend(certs)

    if chain_graph_out:
        graph = detectors.chain_graph(f, resolution, eps)
        lines = [f"{i} {j}" for i, j in graph.edge_list()]
        Path(chain_graph_out).write_text("\n".join(lines) + "\n", encoding="utf-8")

    report = {
        "fingerprint": fingerprint(f),
        "map": map_to_json_dict(f),
        "parameters": {
            "horizon": horizon,
            "resolution": resolution,
            "epsilon": format_rational(eps),
            "max_odd": max_odd,
            "pairs": pairs,
            "seed": seed,
        },
        "conditions": conditions,
        "certificates": certificates,
        "orbits": orbits,
        "timings": timings,
    }

    if figures:
        fig_dir = Path(figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        first_cert = None
        for entry in certificates:
            if entry.get("verified"):
                first_cert, _ = parse_certificate_file(json.dumps(entry))
                break
        plots.plot_map(f, str(fig_dir / "map.png"), certificate=first_cert)
        rep = detectors.chain_recurrent(f, min(resolution, 128), eps)
        plots.plot_chain_cells(f, rep, str(fig_dir / "chain_cells.png"))
        report["figures"] = sorted(
            p.name for p in fig_dir.glob("*.png"))

    _write_or_stdout(json.dumps(report, indent=2, sort_keys=True) + "\n", out)


# -- witness -----------------------------------------------------------------


@main.command()
@click.argument("map_file", type=click.Path())
@click.option("--c", "c_raw", required=True, help="Hypothesis point as p/q.")
@click.option("--n", "n", required=True, type=int, help="Return time, >= 2.")
@click.option("--tower", default=0, show_default=True,
              help="Also compute this many periodic-tower levels (case 3).")
@click.option("--out", type=click.Path(), default=None,
              help="Write the certificate here instead of stdout.")
def witness(map_file, c_raw, n, tower, out):
    """Build and verify a witness certificate from a hypothesis point."""
    f = _load_map_arg(map_file)
    c = _parse_rational_arg(c_raw, "--c")
    if n < 2:
        _fail(EXIT_BAD_INPUT, "--n must be >= 2")
    if not f.domain.contains(c):
        _fail(EXIT_BAD_INPUT, f"--c {c_raw} outside the domain {f.domain}")

    h = check_return_hypothesis(f, c, n)
    if h is None:
        fc = f(c)
        fnc = f.iterate(c, n)
        _fail(EXIT_REFUTED,
              f"hypothesis fails at c = {format_rational(c)}: "
              f"f(c) = {format_rational(fc)}, "
              f"f^{n}(c) = {format_rational(fnc)}; "
              f"need f^n(c) <= c < f(c) or f(c) < c <= f^n(c)")
    try:
        cert, trace = build_witness(f, h)
    except ConstructionError as exc:
        _fail(EXIT_REFUTED, f"construction failed: {exc}")
    if tower > 0 and trace.case == 3:
        levels = periodic_tower(f, trace, tower)
        trace = dataclasses.replace(
            trace, tower=tuple((tp.u, tp.p) for tp in levels))
    _write_or_stdout(render_certificate_file(cert, trace), out)


# -- verify ------------------------------------------------------------------


@main.command()
@click.argument("map_file", type=click.Path())
@click.argument("cert_file", type=click.Path())
def verify(map_file, cert_file):
    """Check a certificate file against a map; exit 0 only if it verifies."""
    f = _load_map_arg(map_file)
    try:
        text = Path(cert_file).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_BAD_INPUT, f"cannot read {cert_file}: {exc}")
    try:
        cert, _trace = parse_certificate_file(text)
    except CertificateFormatError as exc:
        _fail(EXIT_BAD_INPUT, f"{cert_file}: {exc}")

    try:
        if isinstance(cert, DoubleTurbulenceCertificate):
            result = verify_double(f, cert)
        elif isinstance(cert, TurbulencePair):
            result = verify_turbulence(f, cert)
        elif isinstance(cert, TrapCertificate):
            result = verify_trap(f, cert)
        else:
            result = verify_trap_interval(f, cert)
    except DomainError as exc:
        _fail(EXIT_REFUTED, f"certificate leaves the map domain: {exc}")
    if result:
        click.echo("verified")
        sys.exit(EXIT_OK)
    click.echo("refuted", err=False)
    for failure in result.failures:
        click.echo(f"  clause {failure.clause}: {failure.message}")
    sys.exit(EXIT_REFUTED)


# -- orbit -------------------------------------------------------------------


@main.command()
@click.argument("map_file", type=click.Path())
@click.option("--x0", "x0_raw", required=True, help="Starting point as p/q.")
@click.option("--n", "n", default=50, show_default=True,
              help="Number of iterations.")
@click.option("--format", "fmt", type=click.Choice(["csv"]), default="csv",
              show_default=True)
@click.option("--out", type=click.Path(), default=None,
              help="Write the CSV here instead of stdout.")
@click.option("--plot", type=click.Path(), default=None,
              help="Render a cobweb figure to this file.")
def orbit(map_file, x0_raw, n, fmt, out, plot):
    """Emit an exact orbit table and cobweb segment data as CSV."""
    f = _load_map_arg(map_file)
    x0 = _parse_rational_arg(x0_raw, "--x0")
    if not f.domain.contains(x0):
        _fail(EXIT_BAD_INPUT, f"--x0 {x0_raw} outside the domain {f.domain}")
    if n < 0:
        _fail(EXIT_BAD_INPUT, "--n must be >= 0")

    points = f.orbit(x0, n)
    lines = ["i,x_i"]
    lines.extend(f"{i},{format_rational(x)}" for i, x in enumerate(points))
    lines.append("")
    lines.append("x,y,x2,y2")
    for x, y in zip(points, points[1:]):
        fx, fy = format_rational(x), format_rational(y)
        lines.append(f"{fx},{fx},{fx},{fy}")
        lines.append(f"{fx},{fy},{fy},{fy}")
    _write_or_stdout("\n".join(lines) + "\n", out)

    if plot:
        plots.plot_cobweb(f, points, plot)


if __name__ == "__main__":
    main()
