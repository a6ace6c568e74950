"""Tests for JSONFormatter."""

import json

from ksjko.formatters.json_formatter import JSONFormatter


class TestJSONFormatter:
    """Test summary serialization."""

    def test_valid_json(self, sample_summary):
        """Should produce parseable JSON with nan mapped to null."""
        data = json.loads(JSONFormatter().format(sample_summary))
        assert data["steps"] == 3
        assert data["energy"]["H_final"] is None
        assert data["checks"]["entropy_monotone"] is True

    def test_sorted_keys(self, sample_summary):
        """Should sort keys at every level."""
        text = JSONFormatter().format(sample_summary)
        assert text.index('"checks"') < text.index('"command"') < text.index('"energy"')
        assert text.endswith("}\n")

    def test_deterministic(self, sample_summary):
        """Should give identical text for equal summaries."""
        reordered = dict(reversed(list(sample_summary.items())))
        assert JSONFormatter().format(sample_summary) == JSONFormatter().format(reordered)
