"""JSON formatter for run summaries."""

import json
from typing import Any, Dict

from ksjko.formatters.base import BaseFormatter


class JSONFormatter(BaseFormatter):
    """Format run summaries as JSON.

    Keys are sorted and no timestamps are added, so identical runs produce
    byte-identical files.
    """

    def format(self, data: Dict[str, Any]) -> str:
        """Transform a summary dictionary to JSON.

        Args:
            data: Summary with nested dicts, lists and numbers

        Returns:
            Indented JSON text ending in a newline
        """
        return json.dumps(self._plain(data), indent=2, sort_keys=True, allow_nan=False) + "\n"
