from pathlib import Path

import pandas as pd
import pytest
from click.testing import CliRunner

from aptdefense.cli.cli import cli
from aptdefense.components.network.edgelist import load_edge_list
from aptdefense.components.network.interface import NetworkSpec
from aptdefense.defense_manager import DefenseManager

DATA = Path(__file__).parents[2] / "components" / "tests" / "data"


@pytest.fixture
def runner():
    return CliRunner()


def write_config(path: Path, **values) -> str:
    path.write_text("".join(f"{key} = {value}\n" for key, value in values.items()))
    return str(path)


@pytest.fixture
def isolated_config(tmp_path):
    return write_config(
        tmp_path / "isolated.cfg",
        network="edge-list",
        network_path=DATA / "isolated_nodes.txt",
        attack=0.0,
        initial_state=0.0,
        horizon=20.0,
        steps=400,
        output_dir=tmp_path / "out",
    )


@pytest.fixture
def small_config(tmp_path):
    return write_config(
        tmp_path / "small.cfg",
        network="small-world",
        n=12,
        k=2,
        p=0.2,
        seed=7,
        horizon=4.0,
        steps=200,
        max_iters=40,
        replicates=2,
        output_dir=tmp_path / "out",
    )


def test_config_command_writes_defaults(runner, tmp_path):
    path = tmp_path / "aptdefense.cfg"
    result = runner.invoke(cli, ["config", "--path", str(path)])
    assert result.exit_code == 0
    assert path.exists()
    assert "beta = 0.001" in result.output


def test_generate_small_world(runner, tmp_path):
    out = tmp_path / "net.txt"
    result = runner.invoke(
        cli,
        ["generate", "--model", "small-world", "--n", "100", "--k", "4", "--p", "0.2",
         "--seed", "7", "--out", str(out)],
    )
    assert result.exit_code == 0
    lines = [line for line in out.read_text().splitlines() if not line.startswith("#")]
    assert len(lines) == 400
    assert "100 nodes" in result.output


def test_generate_scale_free_round_trip(runner, tmp_path):
    out = tmp_path / "net.txt"
    result = runner.invoke(
        cli, ["generate", "--model", "scale-free", "--n", "100", "--m", "2",
              "--seed", "7", "--out", str(out)]
    )
    assert result.exit_code == 0
    expected = DefenseManager().generate(NetworkSpec(model="scale-free", n=100, m=2), 7)
    assert load_edge_list(out.read_text()) == expected


def test_generate_rejects_odd_degree(runner, tmp_path):
    result = runner.invoke(
        cli, ["generate", "--model", "small-world", "--k", "3", "--out",
              str(tmp_path / "net.txt")]
    )
    assert result.exit_code == 1
    assert not (tmp_path / "net.txt").exists()


def test_solve_without_threat(runner, isolated_config, tmp_path):
    result = runner.invoke(cli, ["solve", "--config", isolated_config])
    assert result.exit_code == 0

    summary = pd.read_csv(tmp_path / "out" / "summary.csv")
    assert list(summary.columns) == ["J", "Loss", "Cost", "iterations", "converged"]
    # T * N * (x_lo + y_lo)
    assert summary["J"][0] == pytest.approx(20.0 * 3 * 0.2)
    assert bool(summary["converged"][0])

    solution = pd.read_csv(tmp_path / "out" / "solution.csv")
    assert list(solution.columns[:5]) == ["t", "C_0", "x_0", "y_0", "lambda_0"]
    assert solution.shape == (401, 1 + 4 * 3)
    curves = pd.read_csv(tmp_path / "out" / "curves.csv")
    assert list(curves.columns) == ["t", "CE", "SC"]
    assert curves["CE"].iloc[-1] == pytest.approx(summary["J"][0], rel=1e-9)


def test_solve_reports_non_convergence(runner, isolated_config, tmp_path):
    config = Path(isolated_config)
    config.write_text(config.read_text() + "max_iters = 1\n")
    result = runner.invoke(cli, ["solve", "--config", str(config)])
    assert result.exit_code == 2
    assert (tmp_path / "out" / "summary.csv").exists()


def test_solve_truncated_network(runner, tmp_path):
    config = write_config(
        tmp_path / "broken.cfg",
        network="edge-list",
        network_path=DATA / "truncated_network.txt",
    )
    result = runner.invoke(cli, ["solve", "--config", config])
    assert result.exit_code == 1
    assert "Line 3" in result.output


def test_solve_missing_config(runner, tmp_path):
    result = runner.invoke(cli, ["solve", "--config", str(tmp_path / "none.cfg")])
    assert result.exit_code == 1


def test_compare_writes_four_rows(runner, small_config, tmp_path):
    result = runner.invoke(cli, ["compare", "--config", small_config])
    assert result.exit_code in (0, 2)
    table = pd.read_csv(tmp_path / "out" / "compare.csv")
    assert list(table.columns) == ["label", "J", "Loss", "Cost", "converged", "iterations"]
    assert len(table) == 4
    assert set(table["label"]) == {"optimal", "static-lower", "static-mid", "static-upper"}
    assert table["J"].is_monotonic_increasing
    assert (tmp_path / "out" / "compare_curves.csv").exists()


def test_sweep_is_byte_identical_on_rerun(runner, small_config, tmp_path):
    args = ["sweep", "--config", small_config, "--scenario", "small-world-p",
            "--points", "0.1,0.2,0.3,0.4,0.5", "--replicates", "1"]
    first = runner.invoke(cli, args)
    assert first.exit_code in (0, 2)
    table = pd.read_csv(tmp_path / "out" / "sweep.csv")
    assert len(table) == 5
    assert list(table.columns) == [
        "p", "OL", "OC", "OJ", "converged_fraction", "replicates", "seeds", "skipped"
    ]
    content = (tmp_path / "out" / "sweep.csv").read_bytes()

    second = runner.invoke(cli, args)
    assert second.exit_code == first.exit_code
    assert (tmp_path / "out" / "sweep.csv").read_bytes() == content


def test_sweep_bound_pairs(runner, small_config, tmp_path):
    output = tmp_path / "bounds"
    result = runner.invoke(
        cli,
        ["sweep", "--config", small_config, "--scenario", "bounds-y",
         "--points", "0.1:0.7,0.6:0.2", "--output", str(output)],
    )
    assert result.exit_code in (0, 2)
    table = pd.read_csv(output / "sweep.csv")
    assert list(table.columns[:2]) == ["y_lo", "y_hi"]
    assert table["skipped"].isna().tolist() == [True, False]


def test_sweep_rejects_unknown_scenario(runner, small_config):
    result = runner.invoke(
        cli, ["sweep", "--config", small_config, "--scenario", "bounds-z"]
    )
    assert result.exit_code == 1


def test_sweep_rejects_unreadable_points(runner, small_config):
    result = runner.invoke(
        cli,
        ["sweep", "--config", small_config, "--scenario", "small-world-p",
         "--points", "0.1,high"],
    )
    assert result.exit_code == 1


@pytest.mark.parametrize("remap, hosts", [("true", 3), ("false", 4)])
def test_solve_one_based_network(runner, tmp_path, remap, hosts):
    config = write_config(
        tmp_path / "konect.cfg",
        network="edge-list",
        network_path=DATA / "one_based_network.txt",
        network_remap=remap,
        horizon=2.0,
        steps=100,
        output_dir=tmp_path / "out",
    )
    result = runner.invoke(cli, ["solve", "--config", config])
    assert result.exit_code in (0, 2)
    solution = pd.read_csv(tmp_path / "out" / "solution.csv")
    states = [column for column in solution.columns if column.startswith("C_")]
    assert states == [f"C_{i}" for i in range(hosts)]
