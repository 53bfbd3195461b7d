"""
SVG pictures of rank ≤ 2 weight systems: weights, the weight hull, the
z-hulls of the strata, the index set, and for one β its ray and walls.
Output bytes are deterministic for identical input.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from app.config import get_settings
from app.models.action import WeightSystem
from app.models.errors import OutputError, PlotRankError
from app.models.strata import StratumIndex
from app.services.quotient import epsilon_window
from app.utils.rational import Vector, format_vector, scale

logger = logging.getLogger("plot")

matplotlib.rcParams["svg.hashsalt"] = "strataflux"
matplotlib.rcParams["svg.fonttype"] = "none"


def convex_hull(points: Sequence[Vector]) -> List[Vector]:
    """Vertices of a planar hull in counter-clockwise order (monotone chain, exact)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b) -> Fraction:
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: List[Vector] = []
    for p in pts:
        while len(lower) > 1 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Vector] = []
    for p in reversed(pts):
        while len(upper) > 1 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _xy(v: Vector, rank: int):
    return (float(v[0]), 0.0) if rank == 1 else (float(v[0]), float(v[1]))


def _draw_hull(ax, points: Sequence[Vector], rank: int, **style) -> None:
    if rank == 1:
        values = [float(p[0]) for p in points]
        ax.plot([min(values), max(values)], [0.0, 0.0], **style)
        return
    hull = convex_hull(points)
    xs = [float(p[0]) for p in hull] + [float(hull[0][0])]
    ys = [float(p[1]) for p in hull] + [float(hull[0][1])]
    ax.plot(xs, ys, **style)


def render_svg(ws: WeightSystem, strata: List[StratumIndex], path: str,
               chosen: Optional[StratumIndex] = None) -> None:
    r = ws.rank
    if r > 2:
        raise PlotRankError(f"plots need rank 1 or 2, got rank {r}")
    size = get_settings().PLOT_SIZE_INCHES

    fig, ax = plt.subplots(figsize=(size, size if r == 2 else size / 3))
    try:
        _draw_hull(ax, ws.weights, r, color="0.6", linewidth=1.0)
        for si in strata:
            if not si.is_zero and len(si.z_support) > 1:
                _draw_hull(ax, ws.select(si.z_support.indices), r, color="tab:blue", linestyle="--", linewidth=0.8)

        for i, w in enumerate(ws.weights):
            x, y = _xy(w, r)
            ax.plot([x], [y], "o", color="black", markersize=4)
            label = ws.labels[i] if ws.labels else str(i)
            ax.annotate(label, (x, y), textcoords="offset points", xytext=(4, 4), fontsize=8)

        for si in strata:
            x, y = _xy(si.beta, r)
            ax.plot([x], [y], "x", color="tab:red", markersize=7)
            ax.annotate("β=" + ",".join(format_vector(si.beta)), (x, y),
                        textcoords="offset points", xytext=(4, -10), fontsize=7, color="tab:red")

        if chosen is not None and not chosen.is_zero:
            window = epsilon_window(chosen, ws)
            top = max([Fraction(1)] + list(window.walls))
            end = _xy(scale(top, chosen.beta), r)
            ax.plot([0.0, end[0]], [0.0, end[1]], color="tab:green", linewidth=1.0)
            for wall in window.walls:
                x, y = _xy(scale(wall, chosen.beta), r)
                ax.plot([x], [y], "|" if r == 1 else "s", color="tab:green", markersize=8)

        ax.axhline(0.0, color="0.85", linewidth=0.5, zorder=0)
        if r == 2:
            ax.axvline(0.0, color="0.85", linewidth=0.5, zorder=0)
            ax.set_aspect("equal", adjustable="datalim")
        else:
            ax.set_yticks([])
        ax.set_title(f"rank {r}, {len(ws.weights)} weights, |B| = {len(strata)}", fontsize=9)
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as e:
            raise OutputError(path, e.strerror or str(e)) from e
    finally:
        plt.close(fig)
    logger.info(f"[Plot] wrote {path}")
