import json

import pytest

from dendroscope.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_usage_error(capsys):
    assert run(["gamma", "analyze"]) == 2  # --group missing
    capsys.readouterr()


def test_gamma_analyze_table(tmp_path, capsys):
    group_file = tmp_path / "c3.grp"
    group_file.write_text("n=3\n(0 1 2)\n")
    code, out = invoke(capsys, "gamma", "analyze", "--group", str(group_file))
    assert code == 0
    assert "transitive     yes" in out
    assert "generous       no" in out
    assert "semi-generous  no" in out
    assert "primitive      yes" in out


def test_coh_rank_trivial_n5(capsys):
    code, out = invoke(capsys, "coh", "rank", "-n", "5", "--group", "trivial")
    assert code == 0
    assert "6" in out


def test_k_orbits_example(capsys):
    code, out = invoke(
        capsys,
        "k", "orbits", "-n", "3", "-d", "3", "--seed", "7", "--group", "trivial", "-k", "2",
    )
    assert code == 0
    assert "9" in out


def test_model_build_stats_round_trip(tmp_path, capsys):
    model_file = tmp_path / "m.txt"
    assert run(["model", "build", "-n", "4", "-d", "2", "-o", str(model_file)]) == 0
    capsys.readouterr()
    code, out = invoke(capsys, "model", "stats", str(model_file))
    assert code == 0
    assert "16" in out  # edges


def test_records_are_byte_stable(tmp_path, capsys):
    group_file = tmp_path / "g.grp"
    group_file.write_text("n=4\n(0 1 2 3)\n(1 3)\n")
    args = ["gamma", "analyze", "--group", str(group_file), "--format", "records"]
    _, first = invoke(capsys, *args)
    _, second = invoke(capsys, *args)
    assert first == second
    record = json.loads(first)
    assert record["schema"] == "dendroscope/1"
    assert record["result"]["generous"] is True
    assert record["result"]["primitive"] is False
    assert list(record["inputs"].values())[0].isalnum()


def test_domain_error_exit_and_name(tmp_path, capsys):
    code = run(
        ["k", "orbits", "-n", "3", "-d", "3", "--seed", "1", "--group", "trivial",
         "-k", "2", "--budget", "1", "--format", "records"]
    )
    captured = capsys.readouterr()
    assert code == 1
    assert json.loads(captured.out)["error"]["name"] == "BudgetExceeded"


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.coc"
    bad.write_text("n=3\n0 1 1 5\n")
    code = run(
        ["coh", "omega-verify", "-n", "3", "-d", "2", "--seed", "0", "--cochain", str(bad)]
    )
    capsys.readouterr()
    assert code == 2


def test_color_pipeline(tmp_path, capsys):
    model_file = tmp_path / "m.txt"
    coloring_file = tmp_path / "c.txt"
    assert run(["model", "build", "-n", "3", "-d", "2", "-o", str(model_file)]) == 0
    assert run(
        ["color", "random", "--model", str(model_file), "--seed", "7", "-o", str(coloring_file)]
    ) == 0
    capsys.readouterr()
    code, out = invoke(
        capsys,
        "color", "audit", "--model", str(model_file), "--coloring", str(coloring_file),
        "--min-sep", "2",
    )
    assert code == 0
    assert "defects         30" in out


def test_recolor_pipeline(tmp_path, capsys):
    out_file = tmp_path / "d.txt"
    code = run(
        ["color", "recolor", "-n", "3", "-d", "3", "--seed", "0", "--group", "sym",
         "-o", str(out_file)]
    )
    capsys.readouterr()
    assert code == 0
    assert out_file.read_text().startswith("2 ")


def test_split_member_pipeline(tmp_path, capsys):
    auto_file = tmp_path / "a.txt"
    assert run(
        ["k", "split", "-n", "3", "-d", "2", "--uniform", "--group", "sym",
         "--gamma", "(0 1)", "-o", str(auto_file)]
    ) == 0
    capsys.readouterr()
    code, out = invoke(
        capsys,
        "k", "member", "-n", "3", "-d", "2", "--uniform", "--group", "trivial",
        "--auto", str(auto_file), "--format", "records",
    )
    assert code == 0
    record = json.loads(out)
    assert record["result"]["member"] is False
    assert record["result"]["witness_vertex"] == 2


def test_omega_verify_pipeline(tmp_path, capsys):
    cochain = tmp_path / "ori.coc"
    cochain.write_text("n=3\n0 1 2 1\n")
    code, out = invoke(
        capsys,
        "coh", "omega-verify", "-n", "3", "-d", "2", "--seed", "4",
        "--cochain", str(cochain), "--format", "records",
    )
    assert code == 0
    assert json.loads(out)["result"]["ok"] is True
