"""Command-line interface: exit codes, output formats, corpus resolution."""

import json

import pytest

from torsionlab.cli import main

CIRCLE_CW = """\
gens a ;
cells 0 1 ;
cells 1 1 ;
bd 1 0 -> (+, a, 0) (-, 1, 0) ;
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTalex:
    def test_figure_eight_xi_i(self, capsys):
        code, out, _ = run(capsys, "talex", "figure_eight", "--xi=0,1")
        assert code == 0
        assert "torsion_at_1 = 2.12132034356" in out
        assert "ruelle_at_0 = 4.5" in out
        assert "cuspidal = true" in out

    def test_trivial_character_withholds_values(self, capsys):
        # the trivial character fixes every vector, so the peripheral
        # condition fails and the special values stay withheld
        code, out, _ = run(capsys, "talex", "trefoil", "--xi=1,0")
        assert code == 2
        assert "withheld" in out
        assert "torsion_at_1" not in out

    def test_h1_obstruction_withholds_values(self, capsys):
        code, out, _ = run(capsys, "talex", "synthetic_h1", "--xi=1,0")
        assert code == 2
        assert "h1_vanishes = false" in out

    def test_json_lines(self, capsys):
        code, out, _ = run(capsys, "talex", "figure_eight", "--xi=0,1", "--format=json-lines")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 1
        obj = json.loads(lines[0])
        assert obj["report"] == "talex"
        assert obj["ruelle_at_0"] == "4.5"
        assert obj["pivot"] == 1

    def test_byte_identical_reruns(self, capsys):
        _, out1, _ = run(capsys, "talex", "knot_5_2", "--xi=0,1")
        _, out2, _ = run(capsys, "talex", "knot_5_2", "--xi=0,1")
        assert out1 == out2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "talex", "no_such_knot", "--xi=0,1")
        assert code == 1
        assert "no such file or corpus entry" in err

    def test_rep_file(self, capsys, tmp_path):
        rep = tmp_path / "rep.rep"
        rep.write_text("rank 1;\nchar a = 0,1;\nchar b = 0,1;\n")
        code, out, _ = run(capsys, "talex", "figure_eight", "--rep", str(rep))
        assert code == 0
        assert "ruelle_at_0 = 4.5" in out

    def test_nonunit_xi_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["talex", "trefoil", "--xi=2,0"])


class TestVerifyKnot:
    def test_figure_eight_xi_minus_one(self, capsys):
        code, out, _ = run(capsys, "verify-knot", "figure_eight", "--xi=-1,0")
        assert code == 0
        assert "fox_route = 6.25" in out
        assert "cw_route = 6.25" in out
        assert "closed_form = 6.25" in out
        assert "agree = true" in out

    @pytest.mark.parametrize("name", ["trefoil", "figure_eight", "knot_5_2"])
    def test_three_routes_agree(self, capsys, name):
        code, out, _ = run(capsys, "verify-knot", name, "--xi=0,1")
        assert code == 0
        assert "agree = true" in out

    def test_hypotheses_failure_exits_2(self, capsys):
        code, out, _ = run(capsys, "verify-knot", "trefoil", "--xi=1,0")
        assert code == 2
        assert "withheld" in out

    def test_deviation_breach_exits_3(self, capsys):
        # the trefoil routes differ by a few ulps, far above this tolerance
        code, out, _ = run(
            capsys, "verify-knot", "trefoil", "--xi=0,1", "--tol=1e-18"
        )
        assert code == 3
        assert "agree = false" in out


class TestTorsionCW:
    def test_circle_file(self, capsys, tmp_path):
        cw = tmp_path / "circle.cw"
        cw.write_text(CIRCLE_CW)
        code, out, _ = run(capsys, "torsion-cw", str(cw), "--xi=0,1")
        assert code == 0
        assert "torsion = 0.707106781187" in out
        assert "betti = 0 0" in out

    def test_parse_error_exits_1(self, capsys, tmp_path):
        cw = tmp_path / "bad.cw"
        cw.write_text("gens a; cells 0 1; cells 1 1; bd 1 0 -> (*, a, 0);")
        code, _, err = run(capsys, "torsion-cw", str(cw), "--xi=0,1")
        assert code == 1
        assert "error:" in err


class TestRuelleEval:
    def test_single_factor(self, capsys, tmp_path):
        sp = tmp_path / "one.spec"
        sp.write_text("rank 1;\ngeo 1 ; 1,0 ;\n")
        code, out, _ = run(capsys, "ruelle-eval", str(sp), "--z=3,0")
        assert code == 0
        # (1 - e^{-3})^{-1} = 1.05239569649...
        assert "value = 1.05239569649,0" in out
        assert "tail_bound = 0" in out

    def test_convergence_table(self, capsys, tmp_path):
        sp = tmp_path / "many.spec"
        lines = ["rank 1;"] + [f"geo {0.5 * k} ; 1,0 ;" for k in range(1, 9)]
        sp.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "ruelle-eval", str(sp), "--z=3,0", "--cutoffs=1,2,4")
        assert code == 0
        assert "used=2" in out and "used=4" in out and "used=8" in out

    def test_malformed_file_reports_line(self, capsys, tmp_path):
        sp = tmp_path / "bad.spec"
        sp.write_text("rank 1;\ngeo nonsense ;\n")
        code, _, err = run(capsys, "ruelle-eval", str(sp), "--z=3,0")
        assert code == 1
        assert "line 2" in err


class TestCorpusResolution:
    def test_env_override(self, capsys, tmp_path, monkeypatch):
        (tmp_path / "mini.pres").write_text("gens a; wirtinger; meridian a; longitude 1;\n")
        monkeypatch.setenv("TORSIONLAB_CORPUS", str(tmp_path))
        code, _, _ = run(capsys, "talex", "mini", "--xi=0,1")
        assert code in (0, 2)  # resolved via the override, not exit 1
        code, _, err = run(capsys, "talex", "figure_eight", "--xi=0,1")
        assert code == 1  # bundled corpus is shadowed
        assert "no such file" in err

    def test_explicit_path_beats_corpus(self, capsys, tmp_path):
        p = tmp_path / "local.pres"
        p.write_text("gens a b; wirtinger; rel a b a b^-1 a^-1 b^-1;\n")
        code, out, _ = run(capsys, "talex", str(p), "--xi=0,1")
        assert code in (0, 2)
        assert "delta1" in out
