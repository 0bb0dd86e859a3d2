"""Grid generation and export of planar images (SVG, CSV) and surface meshes (OBJ)."""

import cmath
import csv
import io
import logging
import math

import numpy as np
from jinja2 import Environment, FileSystemLoader, select_autoescape

from shearlab.core.config import get_settings
from shearlab.core.exceptions import NotLiftableError, ShearLabError, UnsupportedError
from shearlab.models.grid import DiskGrid, GridCurve, RenderJob
from shearlab.models.maps import FourSlitMap, HalfLine
from shearlab.models.numerics import QuadratureConfig
from shearlab.services.maps import map_phi, slit_omitted_halflines
from shearlab.services.minsurf import surface_point
from shearlab.services.numerics import polar_point
from shearlab.services.shear import evaluate_shear

logger = logging.getLogger(__name__)

CSV_HEADER = ("curve_id", "point_index", "z_re", "z_im", "w_re", "w_im")
SVG_SIZE = 1000.0
SVG_MARGIN = 0.05


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def generate_grid(g: DiskGrid) -> list[GridCurve]:
    """Rays by angle 2 pi j / n_rays, then circles by radius r_max i / n_circles."""
    curves: list[GridCurve] = []
    radii = np.linspace(0.0, g.r_max, g.samples_per_curve)
    for j in range(g.n_rays):
        angle = 2 * math.pi * j / g.n_rays
        points = np.array([polar_point(float(r), angle) for r in radii])
        curves.append(GridCurve(len(curves), "ray", j, points))
    angles = np.linspace(0.0, 2 * math.pi, g.samples_per_curve)
    for i in range(1, g.n_circles + 1):
        radius = g.r_max * i / g.n_circles
        points = np.array([polar_point(radius, float(t)) for t in angles])
        curves.append(GridCurve(len(curves), "circle", i, points))
    return curves


def _image_point(job: RenderJob, z: complex, cfg: QuadratureConfig) -> complex:
    if job.target == "map":
        return map_phi(job.map, z, cfg)
    return evaluate_shear(job.map, job.dilatation, z, cfg).f


def evaluate_curves(
    job: RenderJob, cfg: QuadratureConfig | None = None
) -> list[tuple[GridCurve, np.ndarray]]:
    """Image of every grid curve under f (target shear) or phi (target map).

    Raises:
        ShearLabError: Re-raised with the failing curve and point in the message.
    """
    cfg = cfg or job.quadrature()
    images = []
    for curve in generate_grid(job.grid):
        values = np.empty(len(curve.points), dtype=complex)
        for i, z in enumerate(curve.points):
            try:
                values[i] = _image_point(job, complex(z), cfg)
            except ShearLabError as e:
                raise type(e)(
                    f"curve {curve.curve_id} ({curve.kind} {curve.index}) "
                    f"point {i} z={complex(z)!r}: {e}"
                ) from e
        images.append((curve, values))
    logger.info(f"evaluated {len(images)} curves for {job.target} of {job.map.kind}")
    return images


def _write(job: RenderJob, payload: str) -> str:
    if job.out is not None:
        job.out.parent.mkdir(parents=True, exist_ok=True)
        job.out.write_text(payload, encoding="utf-8", newline="\n")
        logger.info(f"wrote {job.format} output to {job.out}")
    return payload


def _csv_payload(images: list[tuple[GridCurve, np.ndarray]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for curve, values in images:
        for i, (z, w) in enumerate(zip(curve.points, values, strict=True)):
            writer.writerow(
                [curve.curve_id, i, _fmt(z.real), _fmt(z.imag), _fmt(w.real), _fmt(w.imag)]
            )
    return buffer.getvalue()


class _Frame:
    """Affine map from the image bounding box (plus margin) to SVG user units."""

    def __init__(self, points: np.ndarray) -> None:
        finite = points[np.isfinite(points)]
        if finite.size == 0:
            finite = np.array([0j])
        x_lo, x_hi = float(finite.real.min()), float(finite.real.max())
        y_lo, y_hi = float(finite.imag.min()), float(finite.imag.max())
        mx = SVG_MARGIN * ((x_hi - x_lo) or 1.0)
        my = SVG_MARGIN * ((y_hi - y_lo) or 1.0)
        self.x_lo, self.x_hi = x_lo - mx, x_hi + mx
        self.y_lo, self.y_hi = y_lo - my, y_hi + my
        self.scale = SVG_SIZE / max(self.x_hi - self.x_lo, self.y_hi - self.y_lo)
        self.width = (self.x_hi - self.x_lo) * self.scale
        self.height = (self.y_hi - self.y_lo) * self.scale

    def xy(self, w: complex) -> str:
        x = (w.real - self.x_lo) * self.scale
        y = (self.y_hi - w.imag) * self.scale
        return f"{x:.3f},{y:.3f}"

    def path(self, values: np.ndarray) -> str:
        parts: list[str] = []
        pen_down = False
        for w in values:
            if not cmath.isfinite(w):
                pen_down = False
                continue
            parts.append(("L" if pen_down else "M") + self.xy(complex(w)))
            pen_down = True
        return " ".join(parts)

    def clip_halfline(self, line: HalfLine) -> str | None:
        a = line.anchor
        if not self.y_lo <= a.imag <= self.y_hi:
            return None
        end = self.x_hi if line.direction == 1 else self.x_lo
        if (end - a.real) * line.direction <= 0:
            return None
        start = min(max(a.real, self.x_lo), self.x_hi)
        return f"M{self.xy(complex(start, a.imag))} L{self.xy(complex(end, a.imag))}"


def _svg_payload(job: RenderJob, images: list[tuple[GridCurve, np.ndarray]]) -> str:
    frame = _Frame(np.concatenate([values for _, values in images]))
    slits: list[str] = []
    if isinstance(job.map, FourSlitMap):
        try:
            lines = slit_omitted_halflines(job.map.params)
        except UnsupportedError:
            lines = []
        slits = [d for d in (frame.clip_halfline(line) for line in lines) if d]

    env = Environment(
        loader=FileSystemLoader(get_settings().templates_dir),
        autoescape=select_autoescape(["svg", "j2"]),
        keep_trailing_newline=True,
    )
    template = env.get_template("figure.svg.j2")
    return template.render(
        width=f"{frame.width:.3f}",
        height=f"{frame.height:.3f}",
        view_box=f"0 0 {frame.width:.3f} {frame.height:.3f}",
        title=f"{job.target} of {job.map.kind} map, omega = z^{job.dilatation.m}",
        stroke_width=f"{SVG_SIZE / 500:.3f}",
        dash=f"{SVG_SIZE / 100:.1f} {SVG_SIZE / 200:.1f}",
        curves=[
            {"curve_id": curve.curve_id, "kind": curve.kind, "d": frame.path(values)}
            for curve, values in images
        ],
        slits=slits,
    )


def render_map(job: RenderJob, cfg: QuadratureConfig | None = None) -> str:
    """Render the grid image as SVG or CSV; write it to job.out when set."""
    if job.format == "obj":
        raise ValueError("obj output is a surface mesh; use render_surface")
    images = evaluate_curves(job, cfg)
    payload = _csv_payload(images) if job.format == "csv" else _svg_payload(job, images)
    return _write(job, payload)


def mesh_faces(n_rays: int, n_circles: int) -> list[tuple[int, ...]]:
    """1-based OBJ faces: a triangle fan around the centre, then quads.

    Vertex 1 is the centre; grid point (circle i, ray j) is 2 + (i-1) n_rays + j.
    """
    if n_circles == 0 or n_rays < 3:
        return []

    def vid(i: int, j: int) -> int:
        return 2 + (i - 1) * n_rays + j % n_rays

    faces: list[tuple[int, ...]] = [(1, vid(1, j), vid(1, j + 1)) for j in range(n_rays)]
    for i in range(1, n_circles):
        faces.extend(
            (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1))
            for j in range(n_rays)
        )
    return faces


def surface_vertices(
    job: RenderJob, cfg: QuadratureConfig | None = None
) -> np.ndarray:
    """(u, v, w) of the centre, then of every (circle, ray) grid point, row-major."""
    cfg = cfg or job.quadrature()
    g = job.grid
    sources = [0j] + [
        polar_point(g.r_max * i / g.n_circles, 2 * math.pi * j / g.n_rays)
        for i in range(1, g.n_circles + 1)
        for j in range(g.n_rays)
    ]
    rows = []
    for z in sources:
        sample = surface_point(job.map, job.dilatation, z, cfg)
        rows.append((sample.u, sample.v, sample.w))
    return np.array(rows, dtype=float)


def render_surface(job: RenderJob, cfg: QuadratureConfig | None = None) -> str:
    """Write the lifted minimal surface over the polar grid as an OBJ mesh.

    Raises:
        NotLiftableError: When the dilatation has no analytic square root.
    """
    if not job.dilatation.liftable:
        raise NotLiftableError(f"omega = z^{job.dilatation.m} cannot be lifted")
    vertices = surface_vertices(job, cfg)
    lines = [f"v {_fmt(u)} {_fmt(v)} {_fmt(w)}\n" for u, v, w in vertices]
    lines += [
        "f " + " ".join(str(k) for k in face) + "\n"
        for face in mesh_faces(job.grid.n_rays, job.grid.n_circles)
    ]
    logger.info(f"surface mesh: {len(vertices)} vertices")
    return _write(job, "".join(lines))
