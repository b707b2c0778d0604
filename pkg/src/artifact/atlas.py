"""Two-disk phase portraits: building the atlas document and rendering it.

A portrait pairs a disk in the original plane with a disk in the partner
plane. Chosen with r1*r2 >= 4, the two disks jointly cover the whole
sphere, the second disk supplying a neighborhood of the infinitely
remote point that the first one cannot show.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .analyze import classify_linear, infinite_point_status, is_equilibrium, jacobian_at
from .charts import AT_INFINITY, Chart, Circle, Line, Point, map_curve
from .conjugate import DiffSystem, conjugate
from .dynamics import IntegratorConfig, Trajectory, field_eval, integrate


class OutOfRange(ValueError):
    """Disk parameter outside (0, 1]."""


def disk_radius(eps) -> float:
    """Radius of the disk whose boundary projects to the cut at height 1-eps.

    eps = 1 cuts at the equator, giving radius 2 (the fixed circle of
    the transition map).
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise OutOfRange(f"disk parameter must lie in (0, 1]: {eps}")
    return 2 * math.sqrt(float((2 - eps) / eps))


@dataclass(frozen=True)
class AtlasConfig:
    """Knobs for atlas assembly.

    Disk sizes come from eps1/eps2 unless explicit radii are given.
    Curve markers annotate known cycles or separatrices: each entry is
    (disk, descriptor) with disk 1 for the original plane and 2 for the
    partner plane; the marker is also drawn as its image in the other
    disk, and circle markers contribute two extra seeds bracketing the
    circle.
    """

    eps1: Fraction = Fraction(1, 5)
    eps2: Fraction = Fraction(1, 5)
    radius1: float | None = None
    radius2: float | None = None
    rays: int = 8
    rings: int = 3
    extra_seeds: tuple = ()   # (disk, (x, y)) pairs
    markers: tuple = ()       # (disk, Circle | Line | Point) pairs
    integrator: IntegratorConfig = IntegratorConfig(max_time=12.0)
    size: int = 420

    def __post_init__(self):
        if self.rays < 0 or self.rings < 0:
            raise ValueError("seed grid counts cannot be negative")
        if self.size < 64:
            raise ValueError("render size below 64 px is unreadable")
        for which in ("radius1", "radius2"):
            value = getattr(self, which)
            if value is not None and value <= 0:
                raise ValueError(f"{which} must be positive")
        for disk, _ in tuple(self.extra_seeds) + tuple(self.markers):
            if disk not in (1, 2):
                raise ValueError(f"disk index must be 1 or 2: {disk}")

    def radii(self) -> tuple[float, float]:
        r1 = self.radius1 if self.radius1 is not None else disk_radius(self.eps1)
        r2 = self.radius2 if self.radius2 is not None else disk_radius(self.eps2)
        if r1 * r2 < 4:
            raise ValueError(
                f"disks of radii {r1} and {r2} leave a gap around the "
                "infinitely remote point (need r1*r2 >= 4)")
        return r1, r2

    def config_hash(self) -> str:
        blob = json.dumps({
            "eps1": str(self.eps1), "eps2": str(self.eps2),
            "radius1": self.radius1, "radius2": self.radius2,
            "rays": self.rays, "rings": self.rings,
            "extra_seeds": [[d, [float(x), float(y)]]
                            for d, (x, y) in self.extra_seeds],
            "markers": [[d, c.to_json_dict()] for d, c in self.markers],
            "integrator": {
                "rel_tol": self.integrator.rel_tol,
                "abs_tol": self.integrator.abs_tol,
                "initial_step": self.integrator.initial_step,
                "max_step": self.integrator.max_step,
                "max_time": self.integrator.max_time,
                "outer_radius": self.integrator.outer_radius,
                "origin_guard": self.integrator.origin_guard,
            },
            "size": self.size,
        }, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class DiskChart:
    chart: Chart
    vars: tuple[str, str]
    radius: float
    trajectories: list
    equilibria: list   # ((x, y), label) pairs
    arrows: list       # ((x, y), (ux, uy)) unit direction at mid arc
    curves: list       # Circle / Line overlays

    def to_json_dict(self) -> dict:
        return {
            "chart": self.chart.value,
            "vars": list(self.vars),
            "radius": self.radius,
            "trajectories": [t.to_json_dict() for t in self.trajectories],
            "equilibria": [{"point": [x, y], "label": label}
                           for (x, y), label in self.equilibria],
            "arrows": [{"at": [x, y], "direction": [ux, uy]}
                       for (x, y), (ux, uy) in self.arrows],
            "curves": [c.to_json_dict() for c in self.curves],
        }


@dataclass
class AtlasDocument:
    """The ordered disk pair: the original plane's disk always first."""

    disks: tuple
    provenance: dict
    size: int = 420

    def to_json_dict(self) -> dict:
        return {"schema": 1,
                "size": self.size,
                "disks": [d.to_json_dict() for d in self.disks],
                "provenance": self.provenance}


def _clip_exit(traj: Trajectory, radius: float) -> None:
    """Pull an overshooting final sample back onto the disk boundary."""
    if traj.termination != "exited-outer-disk" or len(traj.samples) < 2:
        return
    t0, x0, y0 = traj.samples[-2]
    t1, x1, y1 = traj.samples[-1]
    dx, dy = x1 - x0, y1 - y0
    # smallest s in [0, 1] with |(x0, y0) + s*(dx, dy)| = radius
    a = dx * dx + dy * dy
    b = x0 * dx + y0 * dy
    c = x0 * x0 + y0 * y0 - radius * radius
    if a == 0:
        return
    disc = b * b - a * c
    if disc < 0:
        return
    s = (-b + math.sqrt(disc)) / a
    s = max(0.0, min(1.0, s))
    traj.samples[-1] = (t0 + s * (t1 - t0), x0 + s * dx, y0 + s * dy)


def _mid_arc_arrow(traj: Trajectory):
    """Arrow at the sample nearest half the polyline's arc length."""
    pts = [(x, y) for _, x, y in traj.samples]
    if len(pts) < 3:
        return None
    total = 0.0
    lens = [0.0]
    for (ax, ay), (bx, by) in zip(pts, pts[1:]):
        total += math.hypot(bx - ax, by - ay)
        lens.append(total)
    if total == 0:
        return None
    idx = min(range(1, len(pts) - 1), key=lambda i: abs(lens[i] - total / 2))
    ux, uy = pts[idx + 1][0] - pts[idx - 1][0], pts[idx + 1][1] - pts[idx - 1][1]
    norm = math.hypot(ux, uy)
    if norm == 0:
        return None
    return pts[idx], (ux / norm, uy / norm)


def _grid_seeds(radius: float, rays: int, rings: int):
    seeds = []
    for ring in range(1, rings + 1):
        rho = radius * ring / (rings + 1)
        for ray in range(rays):
            angle = 2 * math.pi * ray / rays
            seeds.append((rho * math.cos(angle), rho * math.sin(angle)))
    return seeds


def _circle_bracket_seeds(circle: Circle):
    cx, cy = float(circle.center[0]), float(circle.center[1])
    rad = math.sqrt(float(circle.radius2))
    return [(cx + 0.85 * rad, cy), (cx + 1.15 * rad, cy)]


def _image_curve(curve):
    image = map_curve(curve)
    if image is AT_INFINITY or isinstance(image, Point):
        return None
    return image


def _origin_marker(sys: DiffSystem):
    if not is_equilibrium(sys, (Fraction(0), Fraction(0))):
        return None
    label = classify_linear(jacobian_at(sys, (Fraction(0), Fraction(0))))
    return ((0.0, 0.0), label)


def build_atlas(sys: DiffSystem, cfg: AtlasConfig | None = None) -> AtlasDocument:
    """Assemble the two-disk portrait document for a system.

    Seeds a polar grid in each disk (plus configured extras), runs each
    seed forward and backward clipped to its disk, and marks chart
    origins that are equilibria; the partner disk's origin stands for
    the original plane's infinitely remote point.
    """
    cfg = cfg or AtlasConfig()
    r1, r2 = cfg.radii()
    result = conjugate(sys)
    partner = result.conjugate

    disks = []
    for disk_no, (system, chart, radius) in enumerate(
            [(sys, Chart.N, r1), (partner, Chart.S, r2)], start=1):
        seeds = _grid_seeds(radius, cfg.rays, cfg.rings)
        seeds += [tuple(map(float, p)) for d, p in cfg.extra_seeds
                  if d == disk_no]
        curves = []
        for d, marker in cfg.markers:
            own = marker if d == disk_no else _image_curve(marker)
            if isinstance(own, (Circle, Line)):
                curves.append(own)
                if d == disk_no and isinstance(own, Circle):
                    seeds += _circle_bracket_seeds(own)
        icfg = replace(cfg.integrator, outer_radius=radius)
        trajectories = []
        for seed in seeds:
            if math.hypot(*seed) >= radius:
                continue
            for direction in ("forward", "backward"):
                traj = integrate(system, seed, icfg,
                                 direction=direction, chart=chart)
                _clip_exit(traj, radius)
                if len(traj.samples) >= 2:
                    trajectories.append(traj)
        equilibria = []
        origin = _origin_marker(system)
        if origin is not None:
            equilibria.append(origin)
        for d, marker in cfg.markers:
            if d == disk_no and isinstance(marker, Point) \
                    and not isinstance(marker.at, str):
                px, py = float(marker.at[0]), float(marker.at[1])
                if math.hypot(px, py) <= radius:
                    equilibria.append(((px, py), "marked"))
        arrows = [a for a in map(_mid_arc_arrow, trajectories) if a]
        disks.append(DiskChart(chart=chart, vars=system.vars, radius=radius,
                               trajectories=trajectories,
                               equilibria=equilibria, arrows=arrows,
                               curves=curves))

    provenance = {
        "system": {"vars": list(sys.vars),
                   "rhs": [p.to_text() for p in sys.rhs]},
        "conjugation": result.to_json_dict(),
        "config_hash": cfg.config_hash(),
    }
    return AtlasDocument(disks=tuple(disks), provenance=provenance,
                         size=cfg.size)


def lift_to_sphere(traj: Trajectory) -> list:
    """Samplewise stereographic lift of a trajectory onto the unit sphere."""
    flip = 1.0 if traj.chart is Chart.N else -1.0
    out = []
    for _, x, y in traj.samples:
        s = x * x + y * y
        denom = s + 4
        out.append((4 * x / denom, 4 * y / denom, flip * (s - 4) / denom))
    return out


def _fmt(value: float) -> str:
    text = f"{value:.4f}"
    return "0.0000" if text == "-0.0000" else text


def _dot_path(cx: float, cy: float, r: float) -> str:
    # a filled dot drawn as two arcs, keeping <circle> reserved for
    # the disk boundaries
    return (f"M {_fmt(cx - r)} {_fmt(cy)} "
            f"a {_fmt(r)} {_fmt(r)} 0 1 0 {_fmt(2 * r)} 0 "
            f"a {_fmt(r)} {_fmt(r)} 0 1 0 {_fmt(-2 * r)} 0 Z")


class _DiskFrame:
    """Maps plane coordinates into one disk's pixel viewport."""

    def __init__(self, cx: float, cy: float, px_radius: float, radius: float):
        self.cx, self.cy = cx, cy
        self.scale = px_radius / radius
        self.px_radius = px_radius

    def to_px(self, x: float, y: float) -> tuple[float, float]:
        return self.cx + x * self.scale, self.cy - y * self.scale


def _curve_polylines(curve, radius: float):
    """Clip an overlay curve to the disk, as one or more point runs."""
    runs, run = [], []
    if isinstance(curve, Circle):
        ccx, ccy = float(curve.center[0]), float(curve.center[1])
        rad = math.sqrt(float(curve.radius2))
        pts = [(ccx + rad * math.cos(2 * math.pi * k / 256),
                ccy + rad * math.sin(2 * math.pi * k / 256))
               for k in range(257)]
    else:
        a, b, c = float(curve.a), float(curve.b), float(curve.c)
        norm = math.hypot(a, b)
        if abs(c) / norm > radius:
            return []
        # foot of the perpendicular from the center, then the chord
        fx, fy = -a * c / norm ** 2, -b * c / norm ** 2
        half = math.sqrt(max(0.0, radius ** 2 - (c / norm) ** 2))
        tx, ty = -b / norm, a / norm
        pts = [(fx - half * tx, fy - half * ty), (fx + half * tx, fy + half * ty)]
    for x, y in pts:
        if math.hypot(x, y) <= radius * (1 + 1e-9):
            run.append((x, y))
        elif run:
            runs.append(run)
            run = []
    if run:
        runs.append(run)
    return [r for r in runs if len(r) >= 2]


def render_svg(doc: AtlasDocument) -> bytes:
    """Deterministic SVG for a document: two disks side by side.

    Trajectories are polylines with one mid-arc arrowhead, equilibria
    are filled dots, overlay curves are dashed. The only <circle>
    elements are the two disk boundaries.
    """
    size = doc.size
    margin = 40
    gap = 60
    width = 2 * size + 2 * margin + gap
    height = size + 2 * margin + 30
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    for index, disk in enumerate(doc.disks):
        cx = margin + size / 2 + index * (size + gap)
        cy = margin + size / 2
        frame = _DiskFrame(cx, cy, size / 2, disk.radius)
        parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                     f'r="{_fmt(size / 2)}" fill="none" stroke="#333333" '
                     f'stroke-width="1.5"/>')
        for curve in disk.curves:
            for run in _curve_polylines(curve, disk.radius):
                pts = " ".join(f"{_fmt(qx)},{_fmt(qy)}"
                               for qx, qy in (frame.to_px(x, y)
                                              for x, y in run))
                parts.append(f'<polyline points="{pts}" fill="none" '
                             f'stroke="#b3402a" stroke-width="1.2" '
                             f'stroke-dasharray="6 4"/>')
        for traj in disk.trajectories:
            pts = " ".join(f"{_fmt(qx)},{_fmt(qy)}"
                           for qx, qy in (frame.to_px(x, y)
                                          for _, x, y in traj.samples))
            parts.append(f'<polyline points="{pts}" fill="none" '
                         f'stroke="#1f4e79" stroke-width="1"/>')
        for (ax, ay), (ux, uy) in disk.arrows:
            px, py = frame.to_px(ax, ay)
            # screen-space direction (y axis flips)
            dx, dy = ux, -uy
            size_px = 5.0
            tip = (px + dx * size_px, py + dy * size_px)
            left = (px - dy * size_px * 0.6, py + dx * size_px * 0.6)
            right = (px + dy * size_px * 0.6, py - dx * size_px * 0.6)
            path = (f"M {_fmt(tip[0])} {_fmt(tip[1])} "
                    f"L {_fmt(left[0])} {_fmt(left[1])} "
                    f"L {_fmt(right[0])} {_fmt(right[1])} Z")
            parts.append(f'<path d="{path}" fill="#1f4e79"/>')
        for (ex, ey), label in disk.equilibria:
            px, py = frame.to_px(ex, ey)
            parts.append(f'<path d="{_dot_path(px, py, 3.5)}" '
                         f'fill="#111111"><title>{label}</title></path>')
        caption = f"({disk.vars[0]}, {disk.vars[1]})  radius {_fmt(disk.radius)}"
        parts.append(f'<text x="{_fmt(cx)}" y="{_fmt(margin + size + 22)}" '
                     f'font-family="sans-serif" font-size="13" '
                     f'text-anchor="middle" fill="#333333">{caption}</text>')
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
