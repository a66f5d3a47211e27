import json
import math

import pytest

from cli.command_manager import CommandManager
from cli.completer import CLICompleter
from core.errors import InvalidInputError, SolverFailureError
from main import main


def _run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    assert code == 0, out
    return json.loads(out)


class TestExitCodes:
    def test_unknown_command(self, capsys):
        assert main(["optimise"]) == InvalidInputError.exit_code
        assert "Unknown command" in capsys.readouterr().err

    def test_invalid_model(self, capsys):
        assert main(["solve", "--family", "selfdep", "--a", "1", "--n", "6", "--c", "2"]) == 2
        assert "Error" in capsys.readouterr().err

    def test_missing_family(self, capsys):
        assert main(["solve", "--a", "10"]) == 2

    def test_unknown_flag(self, capsys):
        assert main(["classify", "--family", "selfdep", "--colour", "red"]) == 2

    def test_help(self, capsys):
        assert main(["sweep", "--help"]) == 0
        assert "--preset" in capsys.readouterr().out

    def test_error_codes_differ(self):
        assert InvalidInputError.exit_code == 2
        assert SolverFailureError.exit_code == 3


class TestCommands:
    def test_solve(self, capsys):
        result = _run_json(capsys, "solve", "--family", "selfdep", "--a", "10", "--n", "6", "--c", "1")
        assert result["model"] == {"family": "selfdep", "a": 10.0, "n": 6, "c": 1.0}
        assert result["social_optimum"] == pytest.approx([0.180537] * 6, abs=1e-6)
        assert result["price_of_anarchy"] == pytest.approx(1.02550, abs=1e-5)
        assert [row["case_label"] for row in result["exit_equilibria"]["0"]] == ["beta"]

    def test_solve_single_outlier_with_oracle(self, capsys):
        result = _run_json(capsys, "solve", "--family", "selfdep", "--a", "10", "--n", "3", "--c", "1",
                           "--outlier", "1", "--oracle-steps", "60")
        assert list(result["exit_equilibria"]) == ["1"]
        assert result["oracle"]["social_cost"] >= result["social_cost"] - 1e-12

    def test_pivotal(self, capsys):
        result = _run_json(capsys, "mechanism", "--which", "pivotal", "--family", "dominant",
                           "--a", "5", "--n", "10", "--c", "0.45")
        assert result["mechanism"] == "pivotal"
        assert result["budget"] == pytest.approx(-1.7127375, abs=1e-6)
        assert result["bb_verdict"] is False

    def test_externality(self, capsys):
        result = _run_json(capsys, "mechanism", "--which", "externality", "--family", "dominant",
                           "--a", "5", "--n", "10", "--c", "0.45", "--selection", "most-beneficial")
        assert result["taxes"][0] == pytest.approx(-0.381553, abs=1e-6)
        assert abs(result["budget"]) <= 1e-9

    def test_mechanism_needs_which(self, capsys):
        assert main(["mechanism", "--family", "selfdep", "--a", "10", "--n", "6", "--c", "1"]) == 2

    def test_classify(self, capsys):
        result = _run_json(capsys, "classify", "--family", "selfdep", "--a", "0.5", "--n", "3", "--c", "0.01")
        assert [v["case_label"] for v in result] == ["gamma", "omega", "zeta"]
        assert result[1]["vp_externality"] == "Always"

    def test_classify_star_is_rejected(self, capsys):
        assert main(["classify", "--family", "star", "--n", "4", "--c", "1"]) == 2

    def test_cross_validate(self, capsys):
        result = _run_json(capsys, "classify", "--family", "dominant", "--cross-validate", "10", "--seed", "3")
        assert result == {"family": "dominant", "samples": 10, "seed": 3, "mismatches": []}

    def test_star_impossibility(self, capsys):
        result = _run_json(capsys, "impossibility", "--which", "star", "--n", "10", "--c", "1")
        assert result["cap_sum"] == pytest.approx(1 - math.log(10), abs=1e-9)
        assert result["impossible"] is True

    def test_weakest_link_impossibility(self, capsys):
        result = _run_json(capsys, "impossibility", "--which", "weakestlink",
                           "--n", "4", "--rho", "1", "--c", "1")
        assert result["cap_sum"] == pytest.approx(-1.545177, abs=1e-6)

    def test_star_needs_integer_users(self, capsys):
        assert main(["impossibility", "--which", "star", "--n", "2.5", "--c", "1"]) == 2

    def test_text_output(self, capsys):
        assert main(["classify", "--family", "selfdep", "--a", "10", "--n", "6", "--c", "1"]) == 0
        assert "case_label: beta" in capsys.readouterr().out


class TestConfigFile:
    def test_flags_override_file(self, tmp_path, capsys):
        config = tmp_path / "dominant.json"
        config.write_text(json.dumps({"family": "dominant", "a": 5, "n": 10, "c": 0.45}))
        result = _run_json(capsys, "classify", "--config", str(config), "--a", "12")
        assert result["case_label"] == "dominant-beta"
        assert result["parameters"]["a"] == 12.0

    def test_unreadable_file(self, tmp_path, capsys):
        config = tmp_path / "broken.json"
        config.write_text("{family: selfdep")
        assert main(["solve", "--config", str(config)]) == 2

    def test_file_must_hold_an_object(self, tmp_path, capsys):
        config = tmp_path / "list.json"
        config.write_text("[1, 2]")
        assert main(["solve", "--config", str(config)]) == 2


class TestSweep:
    def test_preset_with_plot(self, tmp_path, capsys):
        output = tmp_path / "fig4.csv"
        result = _run_json(capsys, "sweep", "--preset", "fig4", "--output", str(output), "--plot")
        assert result["rows"] == 18
        assert result["solver_failures"] == 0
        assert output.exists()
        assert result["plot_script"] == str(tmp_path / "fig4_plot.py")

    def test_configured_sweep(self, tmp_path, capsys):
        config = tmp_path / "sweep.json"
        config.write_text(json.dumps({"family": "selfdep", "parameter": "c", "start": 0.5,
                                      "stop": 2.0, "steps": 4, "a": 10, "n": 4,
                                      "output": str(tmp_path / "custom.csv")}))
        result = _run_json(capsys, "sweep", "--config", str(config))
        assert result["rows"] == 4
        assert (tmp_path / "custom.csv").exists()

    def test_needs_a_sweep(self, capsys):
        assert main(["sweep"]) == 2


class TestInteractive:
    def test_parse_command(self):
        manager = CommandManager()
        assert manager.parse_command("/sweep --preset fig4 --output 'my run.csv'") == (
            "sweep", ["--preset", "fig4", "--output", "my run.csv"])
        assert manager.parse_command("solve") is None

    def test_exit_stops_the_loop(self):
        manager = CommandManager()
        assert manager.execute_command("exit", []) is False
        assert not manager.is_running()

    def test_lab_commands_run_in_the_terminal(self, capsys):
        manager = CommandManager()
        assert manager.execute_command("classify", ["--family", "selfdep", "--a", "10", "--n", "6", "--c", "1"])
        assert "case_label: beta" in capsys.readouterr().out

    def test_completion(self):
        manager = CommandManager()
        completer = CLICompleter(manager.get_all_commands, manager.option_names)
        assert completer.get_matches("/so", "/so") == ["/solve"]
        assert completer.get_matches("/solve --fam", "--fam") == ["--family"]
        assert "--oracle-steps" in completer.get_matches("/solve --", "--")
        assert completer.get_matches("hello", "hello") == []
