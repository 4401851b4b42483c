# python stuff
import io
import os
import tempfile
import unittest


# our testing code starts here
# -----------------------------------------------------------------------------
from aztec_dimers.lattice import AztecDiamond, horizontal_tiling, make_dimer, tiling_from_dimers  # noqa: E402
from aztec_dimers.renderers import render_svg, write_svg  # noqa: E402


class TestRenderSvg(unittest.TestCase):
    def __init__(self, methodName: str = ...) -> None:
        super().__init__(methodName)

    def test_one_rect_per_domino(self):
        t = horizontal_tiling(AztecDiamond(3))
        svg = render_svg(t)
        self.assertTrue(svg.startswith("<?xml"))
        self.assertEqual(svg.count("<rect "), 12)
        self.assertEqual(svg.count('fill="red"'), t.kind_counts()["N"])
        self.assertEqual(svg.count('fill="green"'), t.kind_counts()["S"])
        self.assertNotIn('fill="blue"', svg)
        self.assertNotIn("<text", svg)

    def test_vertical_colors(self):
        t = tiling_from_dimers(AztecDiamond(1), [make_dimer((0, 1), (1, 0)), make_dimer((2, 1), (1, 2))])
        svg = render_svg(t, scale=20)
        self.assertIn('fill="blue" data-kind="W"', svg)
        self.assertIn('fill="yellow" data-kind="E"', svg)
        self.assertIn('width="120" height="120"', svg)

    def test_rect_geometry(self):
        # each domino covers two unit cells in the rotated frame
        svg = render_svg(horizontal_tiling(AztecDiamond(2)))
        self.assertEqual(svg.count('width="2" height="1"') + svg.count('width="1" height="2"'), 6)

    def test_height_labels(self):
        svg = render_svg(horizontal_tiling(AztecDiamond(1)), heights=True)
        self.assertEqual(svg.count("<text "), 9)

    def test_title(self):
        self.assertIn("<title>order one</title>", render_svg(horizontal_tiling(AztecDiamond(1)), title="order one"))
        self.assertIn("a=1/2", render_svg(horizontal_tiling(AztecDiamond(1, "1/2"))))

    def test_write_svg(self):
        t = horizontal_tiling(AztecDiamond(2))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "tiling.svg")
            write_svg(path, t)
            with io.open(path, "rt", encoding="utf8") as f:
                self.assertEqual(f.read(), render_svg(t))
