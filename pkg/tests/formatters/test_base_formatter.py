"""Tests for BaseFormatter."""

import numpy as np
import pytest

from ksjko.formatters.base import BaseFormatter


class ConcreteFormatter(BaseFormatter):
    """Concrete implementation for testing."""

    def format(self, data: object) -> str:
        return "test output"


class TestBaseFormatter:
    """Test shared number handling."""

    def test_cannot_instantiate_abstract(self):
        """Should require format() to be implemented."""
        with pytest.raises(TypeError):
            BaseFormatter()  # type: ignore[abstract]

    def test_concrete_format(self):
        """Should call the subclass implementation."""
        assert ConcreteFormatter().format(None) == "test output"

    @pytest.mark.parametrize(
        "value,expected",
        [(0.1, "0.10000000000000001"), (float("nan"), "nan"), (float("-inf"), "-inf"), (2, "2")],
    )
    def test_number(self, value, expected):
        """Should print fixed 17-digit decimals and spell out non-finite values."""
        assert ConcreteFormatter()._number(value) == expected

    def test_plain_converts_numpy(self):
        """Should turn numpy scalars into plain types and nan into None."""
        plain = ConcreteFormatter()._plain(
            {"a": np.float64(1.5), "b": np.int64(3), "c": np.bool_(True), "d": (np.nan, 1)}
        )
        assert plain == {"a": 1.5, "b": 3, "c": True, "d": [None, 1]}
        assert type(plain["b"]) is int

