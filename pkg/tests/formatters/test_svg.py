"""Tests for the SVG line chart."""

from ksjko.formatters.svg import SvgLineChart


class TestSvgLineChart:
    """Test chart rendering."""

    def test_polyline_per_series(self):
        """Should draw one polyline and one legend entry per series."""
        chart = SvgLineChart("Entropy", "t", "H")
        chart.add_series([0.0, 1.0, 2.0], [3.0, 2.0, 1.5], "H")
        chart.add_series([0.0, 1.0], [1.0, 1.0], "H_inf")
        svg = chart.render()
        assert svg.startswith("<svg")
        assert svg.count("<polyline") == 2
        assert ">H_inf</text>" in svg

    def test_log_scale_drops_nonpositive(self):
        """Should skip nonpositive values on a log axis."""
        chart = SvgLineChart("L", "t", "L", log_y=True)
        chart.add_series([0.0, 1.0, 2.0, 3.0], [1.0, 0.1, 0.0, -1.0], "L")
        assert chart.series[0].y.tolist() == [1.0, 0.1]
        assert "1e-1" in chart.render()

    def test_empty_series(self):
        """Should render an empty chart without failing."""
        chart = SvgLineChart("L", "t", "L", log_y=True)
        chart.add_series([0.0, 1.0], [0.0, 0.0], "L_v")
        svg = chart.render()
        assert "<polyline" not in svg
        assert svg.endswith("</svg>\n")

    def test_escapes_labels(self):
        """Should escape markup in titles and labels."""
        chart = SvgLineChart("u < v & w", "x", "y")
        assert "u &lt; v &amp; w" in chart.render()
