"""CLI behavior: commands, exit codes, seed precedence, file outputs."""

import json

from rackplan.cli import main
from rackplan.scenario import corpus_dir

SALT_CEREAL = str(corpus_dir() / "occlusion_salt_cereal.scn")
HIDDEN = str(corpus_dir() / "hidden_stack.scn")

UNSOLVABLE = """
(scenario
  (rack (shelves 1) (columns 2) (depths 1)
        (station s0 (left 0 1) (right 0 1))
        (torso t0 (shelves 0 0)))
  (classes (class Thing (category "Stuff") (footprint 0.1 0.1 0.1)))
  (objects (object thing-1 Thing (cell 0 0 0)))
  (goal (generic (0 1 0 Thing) (0 0 0 Thing)))
)
"""


class TestPlanCommand:
    def test_plan_prints_actions(self, capsys):
        assert main(["plan", SALT_CEREAL]) == 0
        out = capsys.readouterr().out
        assert "plan 0: cost 6.8" in out
        assert "pick salt-1" in out

    def test_enumerate_lists_k_plans(self, capsys):
        corpus_1a = str(corpus_dir() / "corpus_1a.scn")
        assert main(["enumerate", corpus_1a, "--k", "3"]) == 0
        out = capsys.readouterr().out
        assert out.count("plan ") == 3

    def test_no_solution_exit_code(self, tmp_path, capsys):
        path = tmp_path / "stuck.scn"
        path.write_text(UNSOLVABLE, encoding="utf-8")
        assert main(["plan", str(path)]) == 1
        assert "no solution" in capsys.readouterr().err

    def test_missing_file_exit_code(self, capsys):
        assert main(["plan", "/nonexistent/path.scn"]) == 2

    def test_malformed_file_exit_code(self, tmp_path, capsys):
        path = tmp_path / "broken.scn"
        path.write_text("(scenario (rack", encoding="utf-8")
        assert main(["plan", str(path)]) == 2


class TestSimulateCommand:
    def test_runs_and_logs(self, tmp_path, capsys):
        logdir = tmp_path / "logs"
        assert main(["simulate", HIDDEN, "--runs", "2", "--format", "delimited",
                     "--log-dir", str(logdir)]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert lines[0].startswith("Name\t")
        assert len(lines) == 3
        files = sorted(p.name for p in logdir.iterdir())
        assert files == ["hidden-stack-run0.jsonl", "hidden-stack-run1.jsonl"]
        first = (logdir / files[0]).read_text().splitlines()
        assert json.loads(first[-1])["goal_reached"] is True

    def test_env_seed_override(self, tmp_path, capsys, monkeypatch):
        logdir = tmp_path / "logs"
        monkeypatch.setenv("RACKPLAN_SEED", "4242")
        assert main(["simulate", HIDDEN, "--log-dir", str(logdir)]) == 0
        text = (logdir / "hidden-stack.jsonl").read_text()
        assert json.loads(text.splitlines()[-1])["seed"] == 4242

    def test_seed_flag_beats_env(self, tmp_path, monkeypatch, capsys):
        logdir = tmp_path / "logs"
        monkeypatch.setenv("RACKPLAN_SEED", "4242")
        assert main(["simulate", HIDDEN, "--seed", "7", "--log-dir",
                     str(logdir)]) == 0
        text = (logdir / "hidden-stack.jsonl").read_text()
        assert json.loads(text.splitlines()[-1])["seed"] == 7


class TestResolveCommand:
    def test_resolves_task_designator(self, tmp_path, capsys):
        d = tmp_path / "task.des"
        d.write_text("""(fetch-and-place
          (an object (category "Cereals"))
          (a location (on rack) (shelf 1)))""", encoding="utf-8")
        assert main(["resolve", SALT_CEREAL, "--designator", str(d)]) == 0
        out = capsys.readouterr().out
        assert "lion-1" in out
        assert "(1 0 0)" in out

    def test_no_match_is_input_error(self, tmp_path, capsys):
        d = tmp_path / "task.des"
        d.write_text('(an object (color purple))', encoding="utf-8")
        assert main(["resolve", SALT_CEREAL, "--designator", str(d)]) == 2


class TestReportCommand:
    def test_report_writes_tsv_and_figures(self, tmp_path, capsys):
        logdir = tmp_path / "logs"
        main(["simulate", HIDDEN, "--runs", "2", "--log-dir", str(logdir)])
        capsys.readouterr()
        out_file = tmp_path / "out" / "report.tsv"
        episodes = sorted(str(p) for p in logdir.iterdir())
        assert main(["report", *episodes, "--out", str(out_file)]) == 0
        assert out_file.exists()
        body = out_file.read_text().splitlines()
        assert body[0].startswith("Name\t")
        assert len(body) == 3
        for figure in ("costs.png", "actions.png", "plan_times.png"):
            assert (out_file.parent / figure).stat().st_size > 0

    def test_report_stdout_without_out(self, tmp_path, capsys):
        logdir = tmp_path / "logs"
        main(["simulate", HIDDEN, "--log-dir", str(logdir)])
        capsys.readouterr()
        episodes = [str(p) for p in logdir.iterdir()]
        assert main(["report", *episodes]) == 0
        out = capsys.readouterr().out
        assert out.startswith("Name\t")
