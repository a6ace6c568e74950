"""Base formatter class for output formatting."""

import math
from abc import ABC, abstractmethod
from typing import Any

import numpy as np


class BaseFormatter(ABC):
    """Abstract base class for all output formatters.

    Provides the shared number formatting. Subclasses must implement the
    format() method.
    """

    @abstractmethod
    def format(self, data: Any) -> str:
        """Transform a result object to the target format.

        Args:
            data: Result to serialize

        Returns:
            Formatted string in the target format
        """
        pass

    def _number(self, value: float) -> str:
        """Fixed 17-significant-digit decimal, stable across runs.

        Args:
            value: Number to format

        Returns:
            Decimal string, or nan/inf/-inf
        """
        x = float(value)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"

    def _plain(self, value: Any) -> Any:
        """Convert numpy scalars and non-finite floats to JSON-safe values.

        Args:
            value: Arbitrary nested structure

        Returns:
            Structure of plain Python types, with NaN and inf mapped to None
        """
        if isinstance(value, dict):
            return {str(k): self._plain(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [self._plain(v) for v in value]
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (int, np.integer)):
            return int(value)
        if isinstance(value, (float, np.floating)):
            x = float(value)
            return x if math.isfinite(x) else None
        return value
