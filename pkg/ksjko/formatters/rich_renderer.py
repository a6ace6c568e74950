"""Rich terminal renderer for run summaries."""

from typing import Any, Dict, Optional

from rich.console import Console
from rich.table import Table

from ksjko.utils.logger import console as default_console


class RichRenderer:
    """Render the key numbers of a summary as a table on standard error.

    Only scalar entries are shown; nested sections are flattened with dotted
    keys and the echoed run spec is skipped.
    """

    SKIPPED = {"run_spec", "metadata", "residual_history", "points"}

    def __init__(self, console: Optional[Console] = None):
        """Initialize renderer.

        Args:
            console: Optional Rich console instance (defaults to the stderr console)
        """
        self.console = console or default_console

    def render(self, summary: Dict[str, Any]) -> None:
        """Render a summary table, plus the per-point table of a sweep."""
        table = Table(
            title=f"ksjko {summary.get('command', '')}",
            show_header=True,
            header_style="bold magenta",
        )
        table.add_column("Metric", style="cyan")
        table.add_column("Value", style="green")
        for key, value in self._flatten(summary):
            table.add_row(key, self._format_value(value))
        self.console.print(table)

        if summary.get("points"):
            self._render_points(summary["points"])

    def _render_points(self, points: list[Dict[str, Any]]) -> None:
        table = Table(title="Sweep", show_header=True, header_style="bold magenta")
        for column in ("chi", "status", "half_rate", "reference_rate", "envelope_satisfied"):
            table.add_column(column)
        for row in points:
            table.add_row(
                *(
                    self._format_value(row.get(c))
                    for c in ("chi", "status", "half_rate", "reference_rate", "envelope_satisfied")
                )
            )
        self.console.print(table)

    def _flatten(self, data: Dict[str, Any], prefix: str = "") -> list[tuple[str, Any]]:
        rows: list[tuple[str, Any]] = []
        for key, value in data.items():
            if not prefix and key in self.SKIPPED:
                continue
            name = f"{prefix}{key}"
            if isinstance(value, dict):
                rows.extend(self._flatten(value, f"{name}."))
            elif not isinstance(value, list):
                rows.append((name, value))
        return rows

    def _format_value(self, value: Any) -> str:
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "[green]yes[/green]" if value else "[red]no[/red]"
        if isinstance(value, float):
            return f"{value:.6g}"
        return str(value)
