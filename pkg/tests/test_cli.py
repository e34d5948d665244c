import json
from importlib import resources

import pytest

from revsynth.cli import main
from revsynth.gates import read_circ, realizes
from revsynth.spec import read_rspec

DATA = resources.files("revsynth") / "data"


def data(name):
    return str(DATA / name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def parse_text(out):
    return dict(line.split(": ", 1) for line in out.splitlines())


@pytest.mark.parametrize("extra", [[], ["--strategy", "lowest_value"], ["--direction", "input"],
                                   ["--strategy", "random", "--seed", "3", "--trials", "4"],
                                   ["--tie-break", "high"]])
def test_synth_writes_verified_circuit(tmp_path, capsys, extra):
    out = tmp_path / "f.circ"
    code, rep, _ = run_json(capsys, "synth", data("three_line.rspec"), "-o", str(out), *extra)
    assert code == 0
    circ, order = read_circ(out)
    assert order == rep["order"]
    assert realizes(circ, read_rspec(data("three_line.rspec")), order)
    assert rep["gates"] == len(circ) and rep["circuit"] == str(circ)
    code, _, _ = run(capsys, "verify", str(out), data("three_line.rspec"))
    assert code == 0


def test_synth_known_sequence(capsys):
    code, rep, _ = run_json(capsys, "synth", data("three_line.rspec"))
    want, _ = read_circ(data("three_line_ascending.circ"))
    assert code == 0 and rep["circuit"] == str(want)
    assert rep["order"] == "reversed" and rep["strategy"] == "ascending"


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "synth", data("fredkin.rspec"))
    _, rep, _ = run_json(capsys, "synth", data("fredkin.rspec"))
    fields = parse_text(text)
    for key in ("gates", "swaps", "reverse_ops", "complexity", "n"):
        assert int(fields[key]) == rep[key]
    assert fields["circuit"] == rep["circuit"]


def test_duplicate_value_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.rspec"
    bad.write_text("n 2\nperm 0 3 3 1\n")
    out = tmp_path / "x.circ"
    code, _, err = run(capsys, "synth", str(bad), "-o", str(out))
    assert code == 2
    assert "3" in err and "more than once" in err
    assert not out.exists()
    assert list(tmp_path.iterdir()) == [bad]


def test_missing_file_is_input_error(tmp_path, capsys):
    code, _, err = run(capsys, "stats", str(tmp_path / "none.rspec"))
    assert code == 2 and "error" in err


def test_verify_failure_reports_first_row(tmp_path, capsys):
    wrong = tmp_path / "w.circ"
    wrong.write_text("n 3\nT(:a)\n")
    code, rep, _ = run_json(capsys, "verify", str(wrong), data("fredkin.rspec"))
    assert code == 1
    assert rep["result"] == "fail" and rep["first_mismatch_row"] == 0
    assert rep["expected"] == 0 and rep["got"] == 1


def test_verify_order_flag(capsys):
    # the inverse listing only works in listed order
    circ = data("three_line_inverse_ascending.circ")
    assert run(capsys, "verify", circ, data("three_line.rspec"))[0] == 0
    code, _, _ = run(capsys, "verify", circ, data("three_line.rspec"), "--order", "listed")
    assert code == 0
    code, _, _ = run(capsys, "verify", circ, data("three_line.rspec"), "--order", "reversed")
    assert code == 1


def test_optimize_full_adder(tmp_path, capsys):
    out = tmp_path / "fa.circ"
    code, rep, _ = run_json(capsys, "optimize", data("full_adder_unreduced.circ"), "-o", str(out))
    assert code == 0
    assert rep["gates_before"] == 8 and rep["gates_after"] < 8
    assert rep["rewrites"] > 0
    small, order = read_circ(out)
    big, _ = read_circ(data("full_adder_unreduced.circ"))
    assert order == "reversed" and len(small) == rep["gates_after"]
    assert (small.table("listed") == big.table("listed")).all()


def test_optimize_minimal_reports_no_rewrites(capsys):
    code, text, _ = run(capsys, "optimize", data("full_adder_minimal.circ"))
    fields = parse_text(text)
    assert code == 0 and fields["rewrites"] == "0"
    assert fields["gates_before"] == fields["gates_after"] == "4"


def test_optimize_pass_selection(capsys):
    circ = data("useless_pair.circ")
    _, only_templates, _ = run_json(capsys, "optimize", circ, "--no-pairs")
    _, both, _ = run_json(capsys, "optimize", circ)
    assert both["circuit"] == "T(c:a)"
    assert only_templates["gates_after"] >= both["gates_after"]
    _, none, _ = run_json(capsys, "optimize", circ, "--no-pairs", "--no-templates")
    assert none["rewrites"] == 0 and none["gates_after"] == none["gates_before"]


def test_optimize_reduce_controls(capsys):
    code, rep, _ = run_json(capsys, "optimize", data("fredkin.circ"), "--reduce-controls",
                            "--spec", data("fredkin.rspec"))
    assert code == 0
    assert rep["controls_after"] <= rep["controls_before"]
    assert rep["gates_after"] <= rep["gates_before"]


def test_optimize_reduce_controls_needs_spec(capsys):
    code, _, err = run(capsys, "optimize", data("fredkin.circ"), "--reduce-controls")
    assert code == 2 and "--spec" in err


def test_embed_writes_spec_and_sidecar(tmp_path, capsys):
    out = tmp_path / "fa.rspec"
    code, rep, _ = run_json(capsys, "embed", data("full_adder.itable"), "-o", str(out))
    assert code == 0
    assert (rep["m"], rep["p"], rep["width"]) == (3, 2, 4)
    assert list(read_rspec(out).perm) == rep["perm"]
    side = json.loads((tmp_path / "fa.rspec.report.json").read_text())
    assert side == rep


def test_embed_then_synth_pipeline(tmp_path, capsys):
    spec = tmp_path / "and.rspec"
    assert run(capsys, "embed", data("and2.itable"), "-o", str(spec))[0] == 0
    code, rep, _ = run_json(capsys, "synth", str(spec))
    assert code == 0 and rep["circuit"] == "T(a,b:c)"


def test_bad_itable(tmp_path, capsys):
    bad = tmp_path / "bad.itable"
    bad.write_text("inputs 2\noutputs 1\n0\n1\n")
    code, _, err = run(capsys, "embed", str(bad))
    assert code == 2 and "rows" in err


def test_stats(capsys):
    code, rep, _ = run_json(capsys, "stats", data("three_line.rspec"))
    assert code == 0
    assert rep["complexity"] == 8 and rep["misplaced"] == 8
    assert rep["cycle_lengths"] == [4, 2, 2]


def test_corpus(capsys):
    code, text, _ = run(capsys, "corpus")
    assert code == 0
    assert "FAIL" not in text and "failed: -" in text


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "revsynth", "stats", data("fredkin.rspec")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "complexity:" in proc.stdout
