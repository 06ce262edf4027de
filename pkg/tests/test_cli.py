import io
import subprocess
import sys

import pytest

from datrtag.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_query():
    assert run("query", "extended", "Give", "<cat>") == (0, "v\n", "")


def test_query_with_set():
    assert run("query", "extended", "Will", "<parent cat>", "--set", "<form>=inv")[:2] == (0, "s\n")


def test_tree_dative():
    assert run("tree", "extended", "Give", "--rule", "dative")[:2] == (
        0, "(s np! (vp v@=give np! np!))\n"
    )


def test_tree_alt_and_sets():
    assert run("tree", "extended", "Give", "--alt", "dative")[1] == "(s np! (vp v@=give np! np!))\n"
    code, out, _ = run("tree", "extended", "Eat", "--set", "<right form>=null")
    assert out == "(s np! (vp v@=eat np{form=null}!))\n"
    code, out, _ = run("tree", "extended", "Eat", "--rule", "whq", "--set", "<right form>=null")
    assert out == "(s np{form=wh}! (s np! (vp v@=eat np{form=null}!)))\n"


def test_sai_and_passive():
    assert run("tree", "extended", "Will")[1] == "(vp v@=will vp*)\n"
    assert run("tree", "extended", "Will", "--rule", "sai")[1] == "(s v@=will s*)\n"
    assert run("tree", "extended", "Eat", "--rule", "passive")[1] == "(s np! (vp v@=eat))\n"


def test_whq_without_null_np():
    code, out, err = run("tree", "extended", "Eat", "--rule", "whq")
    assert code == 1 and out == "" and "RuleNotApplicable" in err


def test_syntax_error_has_position(tmp_path):
    f = tmp_path / "bad.datr"
    f.write_text("A:\n    <a b == c.\n")
    code, out, err = run("check", str(f))
    assert code == 2 and f"{f}:2:10:" in err


def test_check_and_entries():
    assert run("check", "figure1")[:2] == (0, "13 nodes, 35 sentences\n")
    assert run("entries", "extended")[1].split() == ["Die", "Eat", "Give", "Will", "Sleep"]


def test_validation_and_usage_errors(tmp_path):
    f = tmp_path / "dup.datr"
    f.write_text("A: <x> == y <x> == z.")
    assert run("check", str(f))[0] == 2
    assert run("check", str(tmp_path / "missing.datr"))[0] == 2
    (tmp_path / "bin.datr").write_bytes(b"\xff\xfe\x00")
    assert run("check", str(tmp_path / "bin.datr"))[0] == 2
    assert run("query", "extended", "Give", "<cat")[0] == 2
    assert run("tree", "extended", "Eat", "--set", "nonsense")[0] == 2
    assert run("tree", "extended", "Give", "--rule", "dative", "--alt", "x")[0] == 2
    assert run("query", "extended", "Give", "<cat>", "--max-depth", "0")[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        run("tree", "extended", "Eat", "--rule", "causative")
    assert e.value.code == 2


def test_evaluation_errors(tmp_path):
    f = tmp_path / "cyc.datr"
    f.write_text("N: <a> == N:<a>.")
    code, _, err = run("query", str(f), "N", "<a>")
    assert code == 1 and "DepthExceeded" in err
    assert run("query", "extended", "Walk", "<cat>")[0] == 1
    assert run("tree", "figure1", "Give", "--rule", "dative")[0] == 1


def test_golden_files():
    code, out, _ = run("test", "figure1", "figure1")
    assert code == 0 and out.endswith("18 cases, 18 passed, 0 failed\n")
    code, out, _ = run("test", "extended", "extended")
    assert code == 0 and " 0 failed" in out


def test_golden_mismatch(tmp_path):
    g = tmp_path / "g.golden"
    g.write_text("Q Give <cat> => v\nQ Give <cat> => n\nT Eat rule=whq => x\n")
    code, out, _ = run("test", "extended", str(g))
    assert code == 3
    assert out.splitlines()[0] == "PASS Q Give <cat>"
    assert out.splitlines()[-1] == "3 cases, 1 passed, 2 failed"
    g.write_text("garbage\n")
    assert run("test", "extended", str(g))[0] == 2


def test_output_is_byte_stable():
    first = run("tree", "extended", "Give")[1]
    assert all(run("tree", "extended", "Give")[1] == first for _ in range(5))
    assert first.count("\n") == 1


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "datrtag.cli", "query", "figure1", "Give", "<right right root>"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "to\n"
