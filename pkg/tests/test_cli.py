"""Tests for the command-line interface."""

import json
import tempfile
from pathlib import Path

import pytest

from spatchy import __version__
from spatchy.cli import run

SAMPLE = Path(__file__).parent.parent / "samples" / "pentagon_d5.json"


class TestConvertCommand:
    """Tests for spatchy convert."""

    def test_bundled_sample(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test converting the pentagon writes a degree 15 patch, mesh and report."""
        with tempfile.TemporaryDirectory() as tmpdir:
            out = Path(tmpdir) / "out.json"
            mesh = Path(tmpdir) / "out.obj"
            report = Path(tmpdir) / "report.json"
            code = run([
                "convert", str(SAMPLE), "-o", str(out),
                "--mesh", str(mesh), "--resolution", "8", "--report", str(report),
            ])

            assert code == 0
            assert json.loads(out.read_text())["degree"] == [15, 15]
            assert mesh.read_text().startswith("# spatchy mesh")
            data = json.loads(report.read_text())
            assert data["degree"] == [15, 15]
            assert data["grid_size"] == [16, 16]
        assert "degree [15, 15]" in capsys.readouterr().out

    def test_bad_label(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test an invalid file exits with status 1 and a message."""
        with tempfile.TemporaryDirectory() as tmpdir:
            bad = Path(tmpdir) / "bad.json"
            bad.write_text(
                '{"sides": 3, "depth": 3, "points": [{"label": [1, 1], "point": [0, 0, 0]}]}'
            )
            code = run(["convert", str(bad), "-o", str(Path(tmpdir) / "out.json")])
        assert code == 1
        assert "error: Label [1, 1] has norm 2, expected 3" in capsys.readouterr().err

    def test_missing_file(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a missing input exits with status 1."""
        with tempfile.TemporaryDirectory() as tmpdir:
            code = run(["convert", str(Path(tmpdir) / "none.json"), "-o", "out.json"])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestEvalCommand:
    """Tests for spatchy eval."""

    def test_centre_of_symmetric_patch(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the dome's centre lies on its symmetry axis."""
        assert run(["eval", str(SAMPLE), "--at", "0.5,0.5"]) == 0
        x, y, z = (float(part) for part in capsys.readouterr().out.split())
        assert abs(x) < 1e-9
        assert abs(y) < 1e-9
        assert z > 0.0

    def test_outside_domain(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a point outside the polygon is a validation error."""
        assert run(["eval", str(SAMPLE), "--at", "0,0"]) == 1
        assert "outside" in capsys.readouterr().err

    def test_singular_weight(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a vanishing rational weight exits with status 2."""
        trimmed = {
            "degree": [1, 0],
            "points": [[[0, 0, 0, 1]], [[1, 0, 0, -1]]],
            "trim": [[0, 0], [1, 0], [1, 1], [0, 0]],
        }
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "singular.json"
            path.write_text(json.dumps(trimmed))
            code = run(["eval", str(path), "--tensor", "--at", "0.5,0"])
        assert code == 2
        assert "vanishes" in capsys.readouterr().err

    def test_bad_point(self) -> None:
        """Test a malformed --at value is a usage error."""
        with pytest.raises(SystemExit) as excinfo:
            run(["eval", str(SAMPLE), "--at", "half"])
        assert excinfo.value.code == 1


class TestOtherCommands:
    """Tests for sample, mesh, bench and global flags."""

    def test_sample_then_mesh(self) -> None:
        """Test writing a sample net and meshing it."""
        with tempfile.TemporaryDirectory() as tmpdir:
            net = Path(tmpdir) / "hex.json"
            obj = Path(tmpdir) / "hex.obj"
            assert run(["sample", "--sides", "6", "--depth", "2", "-o", str(net)]) == 0
            assert json.loads(net.read_text())["sides"] == 6
            assert run(["mesh", str(net), "-o", str(obj), "--resolution", "2"]) == 0
            faces = [line for line in obj.read_text().splitlines() if line.startswith("f ")]
            assert len(faces) == 6 * 4

    def test_random_sample(self) -> None:
        """Test random nets can be written with a seed."""
        with tempfile.TemporaryDirectory() as tmpdir:
            net = Path(tmpdir) / "random.json"
            argv = ["sample", "--sides", "4", "--depth", "3", "--random", "--seed", "5"]
            assert run([*argv, "-o", str(net)]) == 0
            assert len(json.loads(net.read_text())["points"]) == 20

    def test_bench(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the benchmark prints its timing and the reference figure."""
        assert run(["bench", "--sides", "4", "--depth", "2", "--algo", "efficient"]) == 0
        out = capsys.readouterr().out
        assert "ms" in out
        assert "2.8 GHz" in out

    def test_bench_refused(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a refused naive benchmark is a validation error."""
        assert run(["bench", "--sides", "6", "--depth", "3", "--algo", "naive"]) == 1
        assert "refused" in capsys.readouterr().err

    def test_unknown_flag(self) -> None:
        """Test unknown flags print usage and exit with status 1."""
        with pytest.raises(SystemExit) as excinfo:
            run(["convert", "--frobnicate"])
        assert excinfo.value.code == 1

    def test_version(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test --version prints the package version."""
        with pytest.raises(SystemExit) as excinfo:
            run(["--version"])
        assert excinfo.value.code == 0
        assert __version__ in capsys.readouterr().out

    @pytest.mark.parametrize("flag", ["--samples", "--resolution"])
    def test_counts_must_be_positive(
        self, flag: str, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test zero sample or mesh counts are usage errors."""
        with pytest.raises(SystemExit) as excinfo:
            run(["convert", str(SAMPLE), "-o", "out.json", flag, "0"])
        assert excinfo.value.code == 1
        assert "must be at least 1" in capsys.readouterr().err
