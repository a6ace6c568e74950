"""Tests for output formatters."""
