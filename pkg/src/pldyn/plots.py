"""Matplotlib renderers used by the CLI report paths.

All figures go straight to files with the Agg backend; nothing here opens
a window.  Rationals are converted to floats only at the very last step,
for pixels, never for any persisted data.
"""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .certificates import (
    DoubleTurbulenceCertificate,
    TrapCertificate,
    TrapInterval,
    TurbulencePair,
)
from .detectors import ChainRecurrenceReport
from .plmap import PLMap

_FIGSIZE = (6.4, 4.8)
_DPI = 140


def _map_line(ax, f: PLMap) -> None:
    xs = [float(x) for x, _ in f.breakpoints]
    ys = [float(y) for _, y in f.breakpoints]
    lo, hi = float(f.domain_lo), float(f.domain_hi)
    ax.plot([lo, hi], [lo, hi], color="0.7", lw=0.8, label="diagonal")
    ax.plot(xs, ys, color="C0", lw=1.6, label="map")
    ax.set_xlim(lo, hi)
    ax.set_ylim(lo, hi)
    ax.set_xlabel("x")
    ax.set_ylabel("f(x)")


def plot_map(f: PLMap, path: str, certificate=None) -> str:
    """Graph of the map with fixed points and certificate intervals."""
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    _map_line(ax, f)
    for iv in f.solve_fixed():
        ax.plot([float(iv.lo)], [float(iv.lo)], "o", color="C3", ms=5)
        if not iv.is_point:
            ax.plot([float(iv.lo), float(iv.hi)],
                    [float(iv.lo), float(iv.hi)], color="C3", lw=2.5)

    spans = []
    if isinstance(certificate, DoubleTurbulenceCertificate):
        spans = [(certificate.left.J, "C1"), (certificate.right.J, "C2")]
    elif isinstance(certificate, TurbulencePair):
        spans = [(certificate.J0, "C1"), (certificate.J1, "C2")]
    elif isinstance(certificate, (TrapCertificate, TrapInterval)):
        iv = certificate.K if isinstance(certificate, TrapCertificate) else certificate.J
        spans = [(iv, "C1")]
    for iv, color in spans:
        ax.axvspan(float(iv.lo), float(iv.hi), color=color, alpha=0.15)

    ax.set_title("piecewise-linear map")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_cobweb(f: PLMap, orbit: list[Fraction], path: str) -> str:
    """Cobweb diagram for a precomputed orbit."""
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    _map_line(ax, f)
    xs = []
    ys = []
    for x0, x1 in zip(orbit, orbit[1:]):
        xs.extend([float(x0), float(x0)])
        ys.extend([float(x0), float(x1)])
        xs.extend([float(x0), float(x1)])
        ys.extend([float(x1), float(x1)])
    ax.plot(xs, ys, color="C3", lw=0.9, alpha=0.85)
    if orbit:
        ax.plot([float(orbit[0])], [float(orbit[0])], "s", color="C3", ms=5)
    ax.set_title(f"cobweb, {max(len(orbit) - 1, 0)} steps")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_chain_cells(f: PLMap, report: ChainRecurrenceReport, path: str) -> str:
    """Recurrent cells of the chain transition graph under the map graph."""
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    _map_line(ax, f)
    lo, hi = f.domain_lo, f.domain_hi
    w = (hi - lo) / report.resolution
    for i in sorted(report.recurrent_cells):
        ax.axvspan(float(lo + i * w), float(lo + (i + 1) * w),
                   color="C2", alpha=0.25, lw=0)
    ax.set_title(
        f"chain-recurrent cells, resolution {report.resolution}, "
        f"epsilon {report.epsilon}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
