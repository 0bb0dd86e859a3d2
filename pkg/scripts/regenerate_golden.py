"""
Regenerate the golden export files used by the render tests.

Usage:
    uv run python scripts/regenerate_golden.py

This script will:
1. Render the A=B=1, c=0 slit shear with omega = z^2 as CSV
2. Render the n=5 polygon shear with omega = z^10 as SVG
3. Write the n=3 polygon surface with omega = z^6 as an OBJ mesh
"""

import logging
import os
import sys
from pathlib import Path

# Add the project root to the path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from dotenv import load_dotenv

load_dotenv()

from shearlab.models.grid import DiskGrid, RenderJob
from shearlab.models.maps import FourSlitMap, NGonParams, RegularNGonMap, SlitMapParams
from shearlab.models.shear import MonomialDilatation
from shearlab.services.render import render_map, render_surface

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"

# Small grids keep the files reviewable; the same jobs are rebuilt by the tests.
GOLDEN_JOBS = {
    "slit_c0_m2.csv": RenderJob(
        map=FourSlitMap(params=SlitMapParams.from_c(1.0, 1.0, 0.0)),
        dilatation=MonomialDilatation(m=2),
        grid=DiskGrid(n_rays=4, n_circles=2, r_max=0.9, samples_per_curve=17),
        format="csv",
    ),
    "polygon_n5_m10.svg": RenderJob(
        map=RegularNGonMap(params=NGonParams(n=5)),
        dilatation=MonomialDilatation(m=10),
        grid=DiskGrid(n_rays=5, n_circles=2, r_max=0.9, samples_per_curve=17),
        format="svg",
    ),
    "surface_n3_m6.obj": RenderJob(
        map=RegularNGonMap(params=NGonParams(n=3)),
        dilatation=MonomialDilatation(m=6),
        grid=DiskGrid(n_rays=6, n_circles=3, r_max=0.9, samples_per_curve=16),
        format="obj",
    ),
}


def write_golden(name: str) -> Path:
    """Render GOLDEN_JOBS[name] into GOLDEN_DIR and return the file path."""
    job = GOLDEN_JOBS[name]
    out = GOLDEN_DIR / name
    render = render_surface if job.format == "obj" else render_map
    render(job.model_copy(update={"out": out}))
    return out


def main() -> None:
    logging.basicConfig(level=logging.INFO)
    for name in GOLDEN_JOBS:
        print(f"wrote {write_golden(name)}")


if __name__ == "__main__":
    main()
