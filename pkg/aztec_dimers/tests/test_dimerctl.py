# python stuff
import contextlib
import io
import json
import os
import tempfile
import unittest

# django stuff
from django.conf import settings
from django.core.cache import cache
from django.core.management import call_command
from django.core.management.base import CommandError


# our testing code starts here
# -----------------------------------------------------------------------------
from aztec_dimers import cli  # noqa: E402
from aztec_dimers.serializers import read_tiling_file  # noqa: E402

HERE = os.path.abspath(os.path.dirname(__file__))


def tiling_path(test_file):
    return os.path.join(HERE, "data", "tilings", test_file)


def dimerctl(*args):
    out = io.StringIO()
    call_command("dimerctl", *[str(arg) for arg in args], stdout=out)
    return out.getvalue()


class TestExact(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def setUp(self):
        cache.clear()

    def test_partition(self):
        output = dimerctl("exact", "partition", "--n", 2, "--a", 1)
        self.assertEqual(output, "# n=2 a=1 regime=exact\nn,a,partition_function\n2,1,8\n")

    def test_partition_numeric(self):
        lines = dimerctl("exact", "partition", "--n", 2, "--a", "0.5").splitlines()
        self.assertEqual(lines[0], "# n=2 a=0.5 regime=numeric")
        self.assertAlmostEqual(float(lines[2].split(",")[2]), 1.25**3, places=12)

    def test_inverse(self):
        lines = dimerctl("exact", "inverse", "--n", 1).splitlines()
        self.assertEqual(lines[1], "w1,w2,b1,b2,value")
        self.assertEqual(len(lines), 2 + 4)
        self.assertIn("1,0,0,1,-1/2*i", lines)
        self.assertIn("1,0,2,1,1/2", lines)

    def test_edge_probability(self):
        output = dimerctl("exact", "edge-prob", "--n", 1, "--a", 2, "--edge", "0,1,W")
        self.assertIn("bx,by,kind,probability\n0,1,W,4/5\n", output)

    def test_edge_field(self):
        lines = dimerctl("exact", "edge-prob", "--n", 1).splitlines()
        self.assertEqual(sorted(lines[2:]), ["0,1,N,1/2", "0,1,W,1/2", "2,1,E,1/2", "2,1,S,1/2"])

    def test_joint(self):
        output = dimerctl("exact", "edge-prob", "--n", 1, "--a", 2, "--edge", "0,1,W", "--edge", "2,1,E", "--joint")
        self.assertIn('"0,1,W;2,1,E",4/5\n', output)

    def test_bad_edge(self):
        with self.assertRaises(CommandError) as context:
            dimerctl("exact", "edge-prob", "--n", 2, "--edge", "0,1")
        self.assertEqual(context.exception.returncode, 2)

    def test_line_kernel(self):
        lines = dimerctl("exact", "line-kernel", "--n", 2, "--line", 1).splitlines()
        self.assertEqual(lines[0], "# n=2 a=1 regime=exact r=1")
        self.assertEqual(len(lines), 2 + 4)
        self.assertIn("1,1,1/4", lines)

    def test_line_kernel_needs_line(self):
        with self.assertRaises(CommandError) as context:
            dimerctl("exact", "line-kernel", "--n", 2)
        self.assertEqual(context.exception.returncode, 2)

    def test_invalid_line(self):
        with self.assertRaises(CommandError) as context:
            dimerctl("exact", "line-kernel", "--n", 2, "--line", 5)
        self.assertEqual(context.exception.returncode, 1)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "partition.csv")
            output = dimerctl("exact", "partition", "--n", 1, "--out", path)
            self.assertEqual(output, path + "\n")
            with io.open(path, "rt", encoding="utf8") as f:
                self.assertEqual(f.read().splitlines()[-1], "1,1,2")

    def test_bad_weight(self):
        with self.assertRaises(CommandError):
            dimerctl("exact", "partition", "--n", 1, "--a", 0)


class TestValidate(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def setUp(self):
        cache.clear()

    def test_default_suites(self):
        summary = json.loads(dimerctl("validate", "--n", 2, "--a", "1/2"))
        self.assertTrue(summary["passed"])
        self.assertEqual(summary["a"], "1/2")
        self.assertEqual([suite["suite"] for suite in summary["suites"]], ["inverse", "fiveterm", "partition"])

    def test_single_suite(self):
        summary = json.loads(dimerctl("validate", "--n", 3, "--suite", "partition"))
        self.assertEqual(summary["suites"][0]["details"]["partition_function"], "64")

    def test_failure(self):
        out = io.StringIO()
        with self.assertRaises(CommandError) as context:
            call_command("dimerctl", "validate", "--n", "4", "--suite", "sampler", "--samples", "10", stdout=out)
        self.assertEqual(context.exception.returncode, 1)
        self.assertFalse(json.loads(out.getvalue())["passed"])


class TestSampleAndRender(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_sample(self):
        with tempfile.TemporaryDirectory() as tmp:
            output = dimerctl(
                "sample", "--n", 3, "--seed", 7, "--count", 2, "--workers", 1, "--out-dir", tmp, "--prefix", "t"
            )
            paths = output.splitlines()
            self.assertEqual([os.path.basename(p) for p in paths], ["t-n3-s7-0000.txt", "t-n3-s7-0001.txt"])
            for index, path in enumerate(paths):
                tiling_file = read_tiling_file(path)
                self.assertEqual(tiling_file.seed, 7)
                self.assertEqual(tiling_file.sample, index)
                self.assertTrue(tiling_file.tiling.is_valid)

    def test_render(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "tiling.svg")
            dimerctl("render", "--in", tiling_path("n2-horizontal.txt"), "--out", path, "--height")
            with io.open(path, "rt", encoding="utf8") as f:
                svg = f.read()
        self.assertEqual(svg.count("<rect "), 6)
        self.assertIn("<text ", svg)

    def test_render_bad_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(CommandError) as context:
                dimerctl("render", "--in", tiling_path("bad-kind.txt"), "--out", os.path.join(tmp, "x.svg"))
        self.assertEqual(context.exception.returncode, 1)
        self.assertIn("line 6", str(context.exception))


class TestStatistics(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_edge_stats_north(self):
        lines = dimerctl("edge-stats", "--n", 16, "--k", 1, "--samples", 3, "--workers", 1).splitlines()
        self.assertIn("boundary=north", lines[0])
        self.assertIn("r=13", lines[0])
        self.assertEqual(lines[1], "xi,empirical_intensity,stderr,thinned_airy_intensity,poisson_intensity")
        self.assertEqual(len(lines), 2 + 32)

    def test_edge_stats_south(self):
        lines = dimerctl("edge-stats", "--n", 16, "--k=-1", "--samples", 3, "--workers", 1).splitlines()
        self.assertIn("boundary=south", lines[0])
        self.assertEqual(lines[1], "xi,empirical_intensity,stderr,thickened_intensity")

    def test_hole_clusters(self):
        lines = dimerctl("edge-stats", "--n", 16, "--k=-1", "--samples", 3, "--workers", 1, "--holes").splitlines()
        self.assertEqual(lines[1], "cluster_size,observed,expected")
        self.assertEqual([line.split(",")[0] for line in lines[2:]], ["1", "2", "3", "4+"])

    @unittest.skipUnless(settings.AZTEC_DIMERS_RUN_SLOW_TESTS, "set AZTEC_DIMERS_RUN_SLOW_TESTS to run")
    def test_hole_clusters_are_geometric(self):
        lines = dimerctl("edge-stats", "--n", 512, "--k=-1", "--samples", 200, "--holes").splitlines()
        metadata = dict(item.split("=", 1) for item in lines[0].lstrip("# ").split())
        self.assertEqual(metadata["boundary"], "south")
        self.assertGreater(float(metadata["clusters"]), 0)
        self.assertGreater(float(metadata["chi_square_p"]), 1e-3)

    def test_bulk_stats(self):
        lines = dimerctl("bulk-stats", "--n", 8, "--xi", "0.5,0.5", "--samples", 4, "--workers", 1).splitlines()
        self.assertIn("center=9;8", lines[0])
        self.assertEqual(lines[1], "kind,count,frequency,stderr,gibbs_prediction")
        rows = [line.split(",") for line in lines[2:]]
        self.assertEqual([row[0] for row in rows], ["N", "E", "S", "W"])
        self.assertEqual(sum(int(row[1]) for row in rows), 4 * 25)
        for row in rows:
            self.assertAlmostEqual(float(row[4]), 0.25, places=12)

    def test_bulk_stats_outside(self):
        with self.assertRaises(CommandError) as context:
            dimerctl("bulk-stats", "--n", 8, "--xi", "1.5,0.5", "--samples", 1, "--workers", 1)
        self.assertEqual(context.exception.returncode, 2)


class TestConsoleScript(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_success(self):
        buffer = io.StringIO()
        with contextlib.redirect_stdout(buffer):
            cli.main(["exact", "partition", "--n", "1"])
        self.assertEqual(buffer.getvalue(), "# n=1 a=1 regime=exact\nn,a,partition_function\n1,1,2\n")

    def test_usage_error(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as context:
                cli.main(["sample", "--n", "2", "--a", "0"])
        self.assertEqual(context.exception.code, 2)

    def test_validation_failure(self):
        with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as context:
                cli.main(["validate", "--n", "4", "--suite", "sampler", "--samples", "1"])
        self.assertEqual(context.exception.code, 1)
