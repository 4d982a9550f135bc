import json

import pytest

from stabcalc.cli import main
from stabcalc.serialize import poly_from_json
from stabcalc.schubert_limit import billey_restriction
from stabcalc.root_system import build_root_system


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_json_happy_path(capsys):
    code, out, err = run(capsys, "table", "--type", "A", "--rank", "2",
                         "--chamber", "minus", "--format", "json")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["chamber"] == "minus" and doc["method"] == "closed_form"


def test_table_output_is_byte_stable(capsys):
    argv = ("table", "--type", "B", "--rank", "2", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_table_both_chambers_text(capsys):
    code, out, _ = run(capsys, "table", "--type", "A", "--rank", "2")
    assert code == 0
    assert "chamber=minus" in out and "chamber=plus" in out


def test_csv_refuses_two_chambers(capsys):
    code, out, err = run(capsys, "table", "--type", "A", "--rank", "2",
                         "--format", "csv")
    assert code == 2 and out == ""
    assert "csv" in err


def test_out_file_keeps_stdout_clean(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, err = run(capsys, "table", "--type", "A", "--rank", "2",
                         "--chamber", "plus", "--format", "csv",
                         "--out", str(target))
    assert code == 0 and out == ""
    assert str(target) in err
    assert target.read_text().startswith("label,point,value")


def test_table_method_flag(capsys):
    base = ("table", "--type", "A", "--rank", "2", "--chamber", "minus",
            "--format", "json")
    _, closed, _ = run(capsys, *base)
    code, out, _ = run(capsys, *base, "--method", "rmatrix")
    assert code == 0
    doc = json.loads(out)
    assert doc["method"] == "rmatrix"
    assert doc["entries"] == json.loads(closed)["entries"]


def test_parabolic_subcommand(capsys):
    code, out, _ = run(capsys, "parabolic", "--type", "A", "--rank", "2",
                       "--subset", "2", "--chamber", "minus",
                       "--format", "json", "--method", "route_a2")
    assert code == 0
    doc = json.loads(out)
    assert doc["subset"] == [2]
    assert doc["labels"] == ["e", "1", "2.1"]


def test_parabolic_empty_subset(capsys):
    code, out, _ = run(capsys, "parabolic", "--type", "A", "--rank", "2",
                       "--subset", "none", "--chamber", "minus",
                       "--format", "json")
    assert code == 0
    assert len(json.loads(out)["labels"]) == 6


def test_billey_text_and_json_agree(capsys):
    code, out, _ = run(capsys, "billey", "--type", "A", "--rank", "2",
                       "--label", "1", "--point", "1.2.1")
    assert code == 0
    assert out == "1 at 1.2.1: a1 + a2\n"
    code, out, _ = run(capsys, "billey", "--type", "A", "--rank", "2",
                       "--label", "1", "--point", "1.2.1", "--format", "json")
    assert code == 0
    rs = build_root_system("A", 2)
    expect = billey_restriction(rs, rs.element_by_word((1,)), (1, 2, 1))
    assert poly_from_json(json.loads(out)["value"]) == expect


def test_billey_latex(capsys):
    code, out, _ = run(capsys, "billey", "--type", "A", "--rank", "2",
                       "--label", "1", "--point", "2.1", "--format", "latex")
    assert code == 0
    assert out == "\\alpha_{1} + \\alpha_{2}\n"


def test_billey_bad_label(capsys):
    code, _, err = run(capsys, "billey", "--type", "A", "--rank", "2",
                       "--label", "1..2", "--point", "e")
    assert code == 2 and "1..2" in err


def test_billey_missing_point(capsys):
    code, _, err = run(capsys, "billey", "--type", "A", "--rank", "2",
                       "--label", "1")
    assert code == 2 and "--point" in err


def suite_lines(out):
    return [line for line in out.splitlines() if line.startswith("PASS ")]


def test_verify_all_suites_pass(capsys):
    code, out, err = run(capsys, "verify", "--type", "A", "--rank", "2")
    assert code == 0 and err == ""
    assert "FAIL" not in out
    assert len(suite_lines(out)) == 13


def test_verify_json_stable_modulo_timing(capsys):
    argv = ("verify", "--type", "A", "--rank", "2", "--format", "json",
            "--suites", "diagonal,support,duality", "--seed", "3")

    def normalize(text):
        doc = json.loads(text)
        for suite in doc["suites"]:
            suite.pop("wall_time")
        return doc

    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    first, second = normalize(first), normalize(second)
    assert first == second
    assert first["passed"] is True
    assert first["config"] == {"jobs": 1, "rank": 2, "seed": 3, "type": "A"}


def test_verify_parallel_matches_serial(capsys):
    argv = ("verify", "--type", "A", "--rank", "2", "--suites",
            "diagonal,support,mod-h2,billey-limit")
    code1, out1, _ = run(capsys, *argv)
    code4, out4, _ = run(capsys, *argv, "--jobs", "4")
    assert code1 == code4 == 0
    assert len(suite_lines(out1)) == len(suite_lines(out4)) == 4


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--type", "A", "--rank", "2",
                       "--suites", "diagonal,nonsense")
    assert code == 2 and "nonsense" in err


def test_rank_bound_is_a_user_error(capsys):
    code, _, err = run(capsys, "table", "--type", "B", "--rank", "1")
    assert code == 2 and "rank" in err.lower()


def test_group_order_cap_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("STAB_MAX_GROUP_ORDER", "5")
    code, _, err = run(capsys, "table", "--type", "A", "--rank", "2",
                       "--chamber", "minus")
    assert code == 2 and "exceeds" in err
    code, _, _ = run(capsys, "table", "--type", "A", "--rank", "2",
                     "--chamber", "minus", "--max-group-order", "6")
    assert code == 0


def test_bad_env_value(capsys, monkeypatch):
    monkeypatch.setenv("STAB_MAX_GROUP_ORDER", "many")
    code, _, err = run(capsys, "table", "--type", "A", "--rank", "2",
                       "--chamber", "minus")
    assert code == 2 and "STAB_MAX_GROUP_ORDER" in err


def test_config_file_precedence(capsys, tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# defaults for the survey\ntype = A\nrank = 2\nseed = 11\n")
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--rank", "3",
                       "--suites", "diagonal", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["rank"] == 3      # flag beats file
    assert doc["config"]["seed"] == 11     # file beats default


def test_config_file_bad_key(capsys, tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("rank = 2\ncolour = green\n")
    code, _, err = run(capsys, "table", "--config", str(cfg))
    assert code == 2 and "colour" in err and ":2" in err


def test_config_file_bad_int(capsys, tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("rank = two\n")
    code, _, err = run(capsys, "table", "--config", str(cfg))
    assert code == 2 and "rank" in err


def test_bench_sampled_json(capsys):
    code, out, _ = run(capsys, "bench", "--type", "A", "--rank", "2",
                       "--samples", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True and doc["system"] == "A2"
    assert doc["phases"]


def test_bench_budget_exhaustion(capsys):
    code, _, err = run(capsys, "bench", "--type", "B", "--rank", "3",
                       "--budget", "1e-9")
    assert code == 1 and "budget" in err


def test_argparse_rejects_unknown_type(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["table", "--type", "Z", "--rank", "2"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_library_and_cli_tables_match(capsys):
    from stabcalc.serialize import dumps_json, table_to_json
    from stabcalc.stable_basis import stab_table

    rs = build_root_system("G", 2)
    expect = dumps_json(table_to_json(stab_table(rs, "plus")))
    code, out, _ = run(capsys, "table", "--type", "G", "--rank", "2",
                       "--chamber", "plus", "--format", "json")
    assert code == 0 and out == expect
