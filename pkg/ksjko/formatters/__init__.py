"""Output formatters for run results.

This module provides formatters for transforming trajectories, reports and
summaries into CSV, JSON and SVG, plus a Rich terminal renderer.
"""

from ksjko.formatters.base import BaseFormatter
from ksjko.formatters.csv_formatter import (
    ComparisonFormatter,
    ProfileFormatter,
    TimeseriesFormatter,
)
from ksjko.formatters.json_formatter import JSONFormatter
from ksjko.formatters.rich_renderer import RichRenderer
from ksjko.formatters.svg import SvgLineChart

__all__ = [
    "BaseFormatter",
    "ComparisonFormatter",
    "JSONFormatter",
    "ProfileFormatter",
    "RichRenderer",
    "SvgLineChart",
    "TimeseriesFormatter",
]
