"""End-to-end tests of the dmp-workbench subcommands."""

import csv
from pathlib import Path

import pytest

from src.utils.aggregation import load_report
from workbench import EXIT_INVALID, EXIT_OK, build_parser, main


PIPELINE = ["synth-data", "split", "train", "distill", "attack", "ref-risk", "adaptive"]
SMOKE_CONFIG = Path(__file__).resolve().parents[2] / "configs" / "smoke.cfg"


def run(subcommand, config, out, *extra):
    return main([subcommand, "--config", str(config), "--out", str(out), *extra])


def run_pipeline(config, out):
    for subcommand in PIPELINE:
        assert run(subcommand, config, out) == EXIT_OK, subcommand


def read_rows(path):
    with path.open(newline="") as f:
        return list(csv.reader(f))


@pytest.fixture(scope="module")
def workspace(shared_cli_config, tmp_path_factory):
    """Output directory after the core pipeline ran once."""
    out = tmp_path_factory.mktemp("run")
    run_pipeline(shared_cli_config, out)
    return out


@pytest.mark.integration
class TestPipeline:
    """Test cases for the core subcommand chain."""

    def test_artifacts(self, workspace):
        """Test every stage leaves its files behind."""
        expected = [
            "data/dataset.txt",
            "splits/d_tr.txt",
            "splits/x_ref_pool.txt",
            "splits/eval_nonmembers.txt",
            "splits/x_ref_selected.txt",
            "models/theta_up.txt",
            "models/theta_p.txt",
            "softlabels/x_ref.txt",
            "attacksets/no_defense_loss.txt",
            "attacksets/dmp_loss.txt",
            "reports/train.csv",
            "reports/distill.csv",
            "reports/attack.csv",
            "reports/ref_risk.csv",
            "reports/adaptive.csv",
            "tables/adaptive_trace.csv",
        ]
        for name in expected:
            assert (workspace / name).is_file(), name

    def test_attack_report(self, workspace):
        """Test both models get every attack accuracy."""
        report = load_report(workspace / "reports" / "attack.csv")
        for experiment in ("no_defense", "dmp"):
            for metric in ("a_bl", "a_nn", "a_bb", "a_wb"):
                assert 0.0 <= report.get(experiment, metric) <= 1.0

    def test_reference_risk(self, workspace):
        """Test the reference-set attack metrics are recorded for the distilled model and its control."""
        report = load_report(workspace / "reports" / "ref_risk.csv")
        assert {row.metric for row in report.rows} == {"a_ref_bl", "a_ref_bb", "a_ref_wb"}
        assert report.experiments() == ["dmp", "ref_control"]
        for experiment in report.experiments():
            for metric in ("a_ref_bl", "a_ref_bb", "a_ref_wb"):
                assert 0.0 <= report.get(experiment, metric) <= 1.0

    def test_report_table(self, workspace, shared_cli_config, capsys):
        """Test the summary file and the printed comparison table."""
        assert run("report", shared_cli_config, workspace) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "model,e_gen,a_test,a_wb,a_bb,a_bl,a_nn"
        assert [line.split(",")[0] for line in lines[1:]] == ["no_defense", "dmp"]
        assert (workspace / "reports" / "summary.csv").is_file()

    def test_rerun_is_byte_identical(self, workspace, shared_cli_config, tmp_path):
        """Test the same config and seed reproduce every file."""
        run_pipeline(shared_cli_config, tmp_path)
        produced = [p for p in tmp_path.rglob("*") if p.is_file()]
        assert produced
        for path in produced:
            relative = path.relative_to(tmp_path)
            assert path.read_bytes() == (workspace / relative).read_bytes(), str(relative)

    def test_seed_override(self, workspace, shared_cli_config, tmp_path):
        """Test --seed changes the generated data."""
        assert run("synth-data", shared_cli_config, tmp_path, "--seed", "12") == EXIT_OK
        assert (tmp_path / "data" / "dataset.txt").read_bytes() != (workspace / "data" / "dataset.txt").read_bytes()


@pytest.mark.integration
@pytest.mark.slow
class TestAnalysisSubcommands:
    """Test cases for the sweep and theory subcommands."""

    def test_sweeps(self, workspace, shared_cli_config):
        """Test each sweep writes one row per setting."""
        assert run("entropy-sweep", shared_cli_config, workspace) == EXIT_OK
        assert run("temp-sweep", shared_cli_config, workspace) == EXIT_OK
        assert run("refsize-sweep", shared_cli_config, workspace) == EXIT_OK

        entropy_rows = read_rows(workspace / "tables" / "entropy_sweep.csv")
        assert entropy_rows[0] == ["bucket", "mean_entropy", "a_test", "a_bl"]
        assert len(entropy_rows) == 3
        temp_rows = read_rows(workspace / "tables" / "temp_sweep.csv")
        assert [row[0] for row in temp_rows[1:]] == ["1", "3"]
        refsize_rows = read_rows(workspace / "tables" / "refsize_sweep.csv")
        assert [row[0] for row in refsize_rows[1:]] == ["40", "80"]

    def test_influence_check(self, shared_cli_config, tmp_path):
        """Test the influence table has one row per query."""
        assert run("influence-check", shared_cli_config, tmp_path) == EXIT_OK
        rows = read_rows(tmp_path / "tables" / "influence_check.csv")
        assert rows[0] == ["query", "predicted", "actual"]
        assert len(rows) == 11
        report = load_report(tmp_path / "reports" / "influence.csv")
        assert report.get("influence", "n_parameters") == 14

    def test_ratio_bound(self, shared_cli_config, tmp_path):
        """Test the trace, the per-temperature bounds and the report metrics."""
        assert run("ratio-bound", shared_cli_config, tmp_path) == EXIT_OK
        trace = read_rows(tmp_path / "tables" / "ratio_trace.csv")
        assert trace[0] == ["delta_kl", "signed_delta_kl", "delta_ce", "entropy", "approx_influence"]
        assert len(trace) == 11
        for row in trace[1:]:
            assert float(row[0]) == pytest.approx(abs(float(row[1])))

        rows = read_rows(tmp_path / "tables" / "ratio_bound.csv")
        assert rows[0] == ["temperature", "bound", "signed_value"]
        bounds = [float(row[1]) for row in rows[1:]]
        assert [row[0] for row in rows[1:]] == ["1", "3"]
        assert bounds[1] == pytest.approx(bounds[0] / 3)
        for row in rows[1:]:
            assert float(row[1]) >= float(row[2])

        report = load_report(tmp_path / "reports" / "ratio_bound.csv")
        assert report.get("ratio_bound", "ratio_bound") >= report.get("ratio_bound", "signed_ratio")

    def test_defenses(self, workspace, shared_cli_config):
        """Test every baseline and the pipeline defense get accuracies and attack results."""
        assert run("defenses", shared_cli_config, workspace) == EXIT_OK
        report = load_report(workspace / "reports" / "defenses.csv")
        assert report.experiments() == ["baseline", "wd_0.0005", "dr_0.5", "ls_0.1", "cp_0.1", "dmp_pipeline"]
        for experiment in report.experiments():
            assert report.get(experiment, "e_gen") == pytest.approx(
                report.get(experiment, "a_train") - report.get(experiment, "a_test")
            )
            for metric in ("a_bl", "a_nn", "a_bb", "a_wb"):
                assert 0.0 <= report.get(experiment, metric) <= 1.0

    def test_distributions(self, workspace, shared_cli_config):
        """Test histograms, per-class E_gen and median norms for both models."""
        assert run("distributions", shared_cli_config, workspace) == EXIT_OK
        for name in ("theta_up", "theta_p"):
            for table in ("grad_norms", "losses"):
                rows = read_rows(workspace / "tables" / f"{name}_{table}.csv")
                assert rows[0] == ["bin_left", "bin_right", "member_frac", "nonmember_frac"]
                assert sum(float(row[2]) for row in rows[1:]) == pytest.approx(1.0)
                assert sum(float(row[3]) for row in rows[1:]) == pytest.approx(1.0)
            e_gen_rows = read_rows(workspace / "tables" / f"{name}_e_gen.csv")
            assert e_gen_rows[0] == ["class", "e_gen", "cdf"]
            assert float(e_gen_rows[-1][2]) == pytest.approx(1.0)

        report = load_report(workspace / "reports" / "distributions.csv")
        assert report.experiments() == ["no_defense", "dmp"]
        for experiment in report.experiments():
            assert report.get(experiment, "median_norm_members") >= 0.0
            assert report.get(experiment, "median_norm_nonmembers") >= 0.0


@pytest.mark.integration
@pytest.mark.slow
class TestSmokeConfig:
    """Test cases running the analysis subcommands on configs/smoke.cfg."""

    @pytest.fixture(scope="class")
    def smoke_workspace(self, tmp_path_factory):
        out = tmp_path_factory.mktemp("smoke")
        for subcommand in ("synth-data", "split", "train", "distill"):
            assert run(subcommand, SMOKE_CONFIG, out) == EXIT_OK, subcommand
        return out

    def test_ratio_bound(self, smoke_workspace):
        """Test the smoke run writes one bound per sweep temperature."""
        assert run("ratio-bound", SMOKE_CONFIG, smoke_workspace) == EXIT_OK
        rows = read_rows(smoke_workspace / "tables" / "ratio_bound.csv")
        assert [row[0] for row in rows[1:]] == ["1", "2", "4"]
        assert len(read_rows(smoke_workspace / "tables" / "ratio_trace.csv")) == 16
        report = load_report(smoke_workspace / "reports" / "ratio_bound.csv")
        assert {"ratio_bound", "signed_ratio"} <= {row.metric for row in report.rows}

    def test_distributions(self, smoke_workspace):
        """Test the smoke run writes every histogram table."""
        assert run("distributions", SMOKE_CONFIG, smoke_workspace) == EXIT_OK
        for name in ("theta_up", "theta_p"):
            for table in ("grad_norms", "losses", "e_gen"):
                assert (smoke_workspace / "tables" / f"{name}_{table}.csv").is_file()
        e_gen_rows = read_rows(smoke_workspace / "tables" / "theta_up_e_gen.csv")
        assert len(e_gen_rows) == 11

    def test_defenses(self, smoke_workspace):
        """Test the smoke run reports every defense."""
        assert run("defenses", SMOKE_CONFIG, smoke_workspace) == EXIT_OK
        report = load_report(smoke_workspace / "reports" / "defenses.csv")
        assert report.experiments()[0] == "baseline"
        assert report.experiments()[-1] == "dmp_pipeline"
        assert len(report.experiments()) == 6


@pytest.mark.integration
class TestFailures:
    """Test cases for exit codes."""

    def test_missing_artifact(self, cli_config, tmp_path, capsys):
        """Test a stage without its inputs exits 1 and names the producer."""
        assert run("train", cli_config, tmp_path) == EXIT_INVALID
        assert "run 'split' first" in capsys.readouterr().err

    def test_bad_config(self, tmp_path):
        """Test an invalid config file exits 1."""
        config = tmp_path / "bad.cfg"
        config.write_text("seed=1\nseed=2\n", encoding="utf-8")
        assert run("synth-data", config, tmp_path) == EXIT_INVALID

    def test_negative_seed(self, cli_config, tmp_path):
        """Test --seed must be non-negative."""
        assert run("synth-data", cli_config, tmp_path, "--seed", "-1") == EXIT_INVALID

    def test_unknown_subcommand(self):
        """Test argparse errors map to exit code 1."""
        assert main(["deploy"]) == EXIT_INVALID

    def test_report_without_reports(self, cli_config, tmp_path):
        """Test report needs at least one metric file."""
        assert run("report", cli_config, tmp_path) == EXIT_INVALID

    def test_parser_lists_subcommands(self):
        """Test every subcommand is registered."""
        choices = build_parser()._subparsers._group_actions[0].choices
        assert set(choices) >= set(PIPELINE) | {"report", "defenses", "distributions", "influence-check"}
