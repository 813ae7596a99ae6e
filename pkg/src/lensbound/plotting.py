"""Figures: Farey paths in the disk model and per-p sweep profiles."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from lensbound.rational import Slope  # noqa: E402

PATH_COLOR = "#c0392b"
PLUS_COLOR = "#1f77b4"
MINUS_COLOR = "#d62728"
TESS_COLOR = "#bbbbbb"


def boundary_point(s: Slope) -> tuple[float, float]:
    """Place a/b at angle 2*atan2(a, b): 0 at angle 0, 1 at pi/2, inf at pi, -1 at -pi/2.

    Increasing slope means counterclockwise, matching the Farey order convention.
    """
    theta = 2 * math.atan2(s.num, s.den)
    return math.cos(theta), math.sin(theta)


def geodesic(s: Slope, t: Slope, samples: int = 48) -> tuple[list[float], list[float]]:
    """Hyperbolic geodesic between two ideal points, as a polyline."""
    (x1, y1), (x2, y2) = boundary_point(s), boundary_point(t)
    cross = x1 * y2 - x2 * y1
    if abs(cross) < 1e-12:
        return [x1, x2], [y1, y2]
    # circle orthogonal to the unit circle through both points
    dot = x1 * x2 + y1 * y2
    k = 1.0 / (1.0 + dot)
    cx, cy = (x1 + x2) * k, (y1 + y2) * k
    r = math.hypot(x1 - cx, y1 - cy)
    a1 = math.atan2(y1 - cy, x1 - cx)
    a2 = math.atan2(y2 - cy, x2 - cx)
    delta = (a2 - a1 + math.pi) % (2 * math.pi) - math.pi
    xs = [cx + r * math.cos(a1 + delta * i / samples) for i in range(samples + 1)]
    ys = [cy + r * math.sin(a1 + delta * i / samples) for i in range(samples + 1)]
    return xs, ys


def _tessellation_edges(max_den: int):
    slopes = {Slope(1, 0)}
    for d in range(1, max_den + 1):
        for n in range(-3 * d, 3 * d + 1):
            slopes.add(Slope(n, d))
    slopes = sorted(slopes, key=lambda s: (s.den, s.num))
    for i, s in enumerate(slopes):
        for t in slopes[i + 1 :]:
            if abs(s.num * t.den - s.den * t.num) == 1:
                yield s, t


def plot_farey_path(path, out, signs: str | None = None, title: str | None = None, max_den: int = 5):
    """Draw ``path`` over a truncated Farey tessellation and save to ``out``.

    With ``signs`` the interior edges are colored by sign.
    """
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.add_patch(plt.Circle((0, 0), 1, fill=False, lw=1.2, color="black"))
    for s, t in _tessellation_edges(max_den):
        xs, ys = geodesic(s, t)
        ax.plot(xs, ys, color=TESS_COLOR, lw=0.5, zorder=1)
    edges = list(zip(path, path[1:]))
    for i, (s, t) in enumerate(edges):
        color, style = PATH_COLOR, "-"
        if signs is not None and 0 < i < len(edges) - 1:
            color = PLUS_COLOR if signs[i - 1] == "+" else MINUS_COLOR
        elif signs is not None:
            style = "--"
        xs, ys = geodesic(s, t)
        ax.plot(xs, ys, color=color, lw=2.2, ls=style, zorder=3)
    for s in path:
        x, y = boundary_point(s)
        ax.plot([x], [y], "o", color="black", ms=4, zorder=4)
        ax.annotate(str(s) if not s.is_inf else "∞", (x * 1.08, y * 1.08), ha="center", va="center", fontsize=8)
    ax.set_xlim(-1.25, 1.25)
    ax.set_ylim(-1.25, 1.25)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return out


def plot_sweep(report, out):
    """Per-p instance counts and violations of a sweep report."""
    ps = [p for p, _ in report.rows]
    fig, ax = plt.subplots(figsize=(7, 3.5))
    keys = sorted({k for _, row in report.rows for k in row})
    for k in keys:
        ax.plot(ps, [row.get(k, 0) for _, row in report.rows], lw=1, label=k)
    ax.set_xlabel("p")
    ax.set_ylabel("count")
    ax.set_title(f"sweep {report.name}, p <= {report.pmax}")
    ax.legend(frameon=False, fontsize=8)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return out
