"""Unit tests for main CLI command group."""

import json
from unittest.mock import MagicMock, patch

import pytest
from click.testing import CliRunner

from ksjko.cli import cli, run_command


@pytest.fixture
def runner():
    """Provide Click test runner."""
    return CliRunner()


@pytest.fixture
def tiny_config(write_config, tiny_run_config):
    return write_config(tiny_run_config)


class TestMainCommand:
    """Test main CLI command group."""

    def test_main_help(self, runner):
        """Should list every subcommand and the exit codes."""
        result = runner.invoke(cli, ["--help"])
        assert result.exit_code == 0
        for name in ("evolve", "equilibrium", "compare", "decay-rate", "sweep", "check-invariants"):
            assert name in result.output
        assert "--debug" in result.output
        assert "2 configuration error" in result.output

    def test_version(self, runner):
        """Should print the tool name and version."""
        result = runner.invoke(cli, ["version"])
        assert result.exit_code == 0
        assert "ksjko" in result.output

    def test_debug_flag(self, runner):
        """Should switch the logger to debug mode."""
        with patch("ksjko.cli.setup_logger") as mock_setup:
            mock_setup.return_value = (MagicMock(), MagicMock())
            result = runner.invoke(cli, ["--debug", "version"])
            assert result.exit_code == 0
            mock_setup.assert_called_once_with(debug=True)


class TestRunSubcommands:
    """Test the run subcommands end to end on a tiny config."""

    def test_evolve_writes_outputs(self, runner, tiny_config, tmp_path):
        """Should exit 0 and write the time series, snapshots and summary."""
        out = tmp_path / "out"
        result = runner.invoke(cli, ["evolve", "--config", str(tiny_config), "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert str(out) in result.output
        summary = json.loads((out / "summary.json").read_text())
        assert summary["command"] == "evolve"
        assert summary["steps"] == 3
        assert (out / "timeseries.csv").is_file()
        assert (out / "u_3.csv").is_file()
        assert (out / "plots" / "lyapunov.svg").is_file()

    def test_stride_override(self, runner, tiny_config, tmp_path):
        """Should honor --stride over the config's output.stride."""
        out = tmp_path / "out"
        result = runner.invoke(
            cli, ["evolve", "-c", str(tiny_config), "-o", str(out), "--stride", "2", "-q"]
        )
        assert result.exit_code == 0, result.output
        snapshots = sorted(p.name for p in out.glob("u_*.csv"))
        assert snapshots == ["u_0.csv", "u_2.csv", "u_3.csv"]

    def test_equilibrium(self, runner, tiny_config, tmp_path):
        """Should write the stationary profiles."""
        out = tmp_path / "eq"
        result = runner.invoke(cli, ["equilibrium", "-c", str(tiny_config), "-o", str(out)])
        assert result.exit_code == 0, result.output
        assert (out / "u_inf.csv").read_text().startswith("x,u\n")
        assert (out / "v_inf.csv").is_file()

    def test_equilibrium_without_kappa(self, runner, write_config, tiny_run_config, tmp_path):
        """Should exit 1 when kappa = 0."""
        path = write_config({**tiny_run_config, "kappa": 0.0})
        result = runner.invoke(cli, ["equilibrium", "-c", str(path), "-o", str(tmp_path / "o")])
        assert result.exit_code == 1
        assert "kappa" in result.output

    def test_check_invariants(self, runner, tiny_config, tmp_path):
        """Should exit 0 when every property holds."""
        out = tmp_path / "inv"
        result = runner.invoke(cli, ["check-invariants", "-c", str(tiny_config), "-o", str(out)])
        assert result.exit_code == 0, result.output
        assert json.loads((out / "summary.json").read_text())["passed"] is True

    def test_decay_rate_too_short(self, runner, tiny_config, tmp_path):
        """Should exit 1 when the run is too short for a rate fit."""
        result = runner.invoke(cli, ["decay-rate", "-c", str(tiny_config), "-o", str(tmp_path)])
        assert result.exit_code == 1
        assert "InsufficientDataError" in result.output


class TestConfigErrors:
    """Test configuration error exit codes."""

    def test_missing_config(self, runner, tmp_path):
        """Should exit 2 and name the missing file."""
        missing = tmp_path / "missing.json"
        result = runner.invoke(cli, ["evolve", "--config", str(missing)])
        assert result.exit_code == 2
        assert "missing.json" in result.output

    def test_unknown_key(self, runner, write_config, tiny_run_config, tmp_path):
        """Should exit 2 and suggest the intended key."""
        path = write_config({**tiny_run_config, "khi": 0.1})
        result = runner.invoke(cli, ["evolve", "-c", str(path), "-o", str(tmp_path)])
        assert result.exit_code == 2
        assert "khi" in result.output

    def test_invalid_stride_option(self, runner, tiny_config):
        """Should reject --stride 0 as a usage error."""
        result = runner.invoke(cli, ["evolve", "-c", str(tiny_config), "--stride", "0"])
        assert result.exit_code == 2


class TestRunCommand:
    """Test the exit-code wrapper."""

    def test_success(self, capsys):
        """Should return 0 for a successful command."""
        assert run_command(["version"]) == 0

    def test_usage_error(self, capsys):
        """Should return 2 for an unknown subcommand."""
        assert run_command(["no-such-command"]) == 2

    def test_config_error(self, tmp_path, capsys):
        """Should return 2 for a missing config file."""
        assert run_command(["evolve", "-c", str(tmp_path / "none.json")]) == 2

    def test_unexpected_error(self, capsys):
        """Should return 1 for an unexpected exception."""
        with patch.object(cli, "main", side_effect=RuntimeError("boom")):
            assert run_command(["version"]) == 1
