"""Tests for the command-line front end."""

import csv
import io
from pathlib import Path

import pytest

from shearlab import cli
from shearlab.core.exceptions import NonConvergenceError
from shearlab.services import shear as shear_service
from shearlab.services.render import evaluate_curves

SMALL_GRID_ARGS = ["--grid-rays", "4", "--grid-circles", "2", "--samples", "17", "--r-max", "0.9"]


class TestParser:
    """Tests for argument parsing."""

    def test_render_defaults(self):
        args = cli.build_parser().parse_args(["render"])
        assert args.map == "slit"
        assert args.format == "svg"
        assert args.target == "shear"
        assert args.grid_rays == 16
        assert args.grid_circles == 12

    def test_gamma_flags_are_exclusive(self):
        with pytest.raises(SystemExit) as exc_info:
            cli.build_parser().parse_args(["render", "--c", "0", "--gamma", "1.0"])
        assert exc_info.value.code == cli.EXIT_USAGE

    def test_render_rejects_obj(self):
        with pytest.raises(SystemExit) as exc_info:
            cli.main(["render", "--format", "obj"])
        assert exc_info.value.code == cli.EXIT_USAGE

    def test_gamma_over_pi_is_exact(self):
        args = cli.build_parser().parse_args(["render", "--gamma-over-pi", "2/3"])
        params = cli.map_from_args(args).params
        assert str(params.gamma_over_pi) == "2/3"

    def test_job_from_args(self):
        args = cli.build_parser().parse_args(
            ["surface", "--map", "ngon", "--n", "5", "--omega-power", "10", "--tol", "1e-10"]
        )
        job = cli.job_from_args(args)
        assert job.format == "obj"
        assert job.dilatation.m == 10
        assert job.quadrature().rel_tol == 1e-10


class TestCommands:
    """Tests for subcommand exit codes and output."""

    def test_render_csv_to_stdout(self, capsys: pytest.CaptureFixture[str]):
        code = cli.main(
            ["render", "--map", "ngon", "--n", "3", "--omega-power", "6", "--format", "csv"]
            + SMALL_GRID_ARGS
        )
        assert code == cli.EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("curve_id,point_index,z_re,z_im,w_re,w_im\n")

    def test_render_svg_to_file(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]):
        out = tmp_path / "slit.svg"
        code = cli.main(
            ["render", "--c", "0", "--omega-power", "2", "--out", str(out)] + SMALL_GRID_ARGS
        )
        assert code == cli.EXIT_OK
        assert out.read_text(encoding="utf-8").lstrip().startswith("<?xml")
        assert capsys.readouterr().out == ""

    def test_surface_obj(self, capsys: pytest.CaptureFixture[str]):
        code = cli.main(
            ["surface", "--map", "ngon", "--n", "3", "--omega-power", "6"] + SMALL_GRID_ARGS
        )
        assert code == cli.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert sum(line.startswith("v ") for line in lines) == 9

    def test_surface_odd_power_is_usage_error(self):
        code = cli.main(["surface", "--map", "ngon", "--omega-power", "3"] + SMALL_GRID_ARGS)
        assert code == cli.EXIT_USAGE

    def test_out_of_range_c_is_usage_error(self):
        assert cli.main(["render", "--c", "3"] + SMALL_GRID_ARGS) == cli.EXIT_USAGE

    def test_numerical_failure_exit_code(self, monkeypatch: pytest.MonkeyPatch):
        def fail(*args: object, **kwargs: object) -> str:
            raise NonConvergenceError("budget exhausted")

        monkeypatch.setattr(cli, "render_map", fail)
        assert cli.main(["render"] + SMALL_GRID_ARGS) == cli.EXIT_NUMERICAL

    def test_endpoints(self, capsys: pytest.CaptureFixture[str]):
        assert cli.main(["endpoints", "--c", "-2"]) == cli.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        assert all("-> -inf" in line for line in lines)

    def test_csv_round_trips_every_double(self, capsys: pytest.CaptureFixture[str]):
        argv = ["render", "--map", "ngon", "--n", "4", "--omega-power", "2", "--format", "csv"]
        argv += SMALL_GRID_ARGS
        assert cli.main(argv) == cli.EXIT_OK
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))[1:]
        job = cli.job_from_args(cli.build_parser().parse_args(argv))
        expected = [
            (z, w)
            for curve, values in evaluate_curves(job)
            for z, w in zip(curve.points, values, strict=True)
        ]
        assert len(rows) == len(expected)
        for row, (z, w) in zip(rows, expected, strict=True):
            parsed = [float(x) for x in row[2:]]
            assert parsed == [z.real, z.imag, w.real, w.imag]

    def test_endpoints_float_right_angle(self, capsys: pytest.CaptureFixture[str]):
        assert cli.main(["endpoints", "--gamma", "1.5707963267948966"]) == cli.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4

    def test_render_float_right_angle_draws_slits(
        self, tmp_path: Path, capsys: pytest.CaptureFixture[str]
    ):
        out = tmp_path / "slit.svg"
        argv = ["render", "--gamma", "1.5707963267948966", "--target", "map", "--out", str(out)]
        argv += ["--grid-rays", "8", "--grid-circles", "4", "--samples", "32", "--r-max", "0.98"]
        assert cli.main(argv) == cli.EXIT_OK
        assert out.read_text(encoding="utf-8").count('class="slit"') == 4

    def test_endpoints_generic_c_unsupported(self):
        assert cli.main(["endpoints", "--c", "1"]) == cli.EXIT_USAGE

    def test_endpoints_need_slit_map(self):
        assert cli.main(["endpoints", "--map", "ngon"]) == cli.EXIT_USAGE

    def test_verify_surface(self, capsys: pytest.CaptureFixture[str]):
        assert cli.main(["verify", "surface", "--samples", "2"]) == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "surface: isothermal residual" in out
        assert "invariants hold" in out

    def test_verify_reports_violations(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setattr(shear_service, "SLIT_B_TERM_SIGN", 1)
        assert cli.main(["verify", "slit", "--samples", "1"]) == cli.EXIT_INVARIANT

    def test_verify_command_direct(self, capsys: pytest.CaptureFixture[str]):
        assert cli.verify_command("surface", samples=2, seed=7) == cli.EXIT_OK
        assert "surface: (u, v) = f" in capsys.readouterr().out
