import pytest

from skewbrace import braces as br
from skewbrace import cli
from skewbrace import constructions as con
from skewbrace import groups as grp
from skewbrace import io
from skewbrace import ybe

import oracles


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def c4(tmp_path):
    p = tmp_path / "c4.sbr"
    io.write_file(p, io.write_brace(con.trivial(grp.cyclic(4))))
    return p


class TestVerify:
    def test_trivial_c4(self, capsys, c4):
        code, out, _ = run(capsys, "verify", c4)
        assert code == 0
        assert "bi-skew: yes" in out and "γ-homomorphic: yes" in out and "right class: 1" in out

    def test_op_trivial_s3(self, capsys, tmp_path):
        p = tmp_path / "s3.sbr"
        io.write_file(p, io.write_brace(con.op_trivial(grp.symmetric(3)[0])))
        code, out, _ = run(capsys, "verify", p)
        assert code == 0
        assert "right class: none (not right nilpotent)" in out
        assert "soluble class: 2" in out

    def test_broken_row(self, capsys, c4):
        lines = c4.read_text().splitlines()
        k = next(i for i, ln in enumerate(lines) if ln.startswith("1 2 3"))
        lines[k] = "1 2 3"
        c4.write_text("\n".join(lines) + "\n")
        code, _, err = run(capsys, "verify", c4)
        assert code == 2 and f":{k + 1}:" in err

    def test_invalid_structure(self, capsys, tmp_path):
        add = grp.cyclic(4).table
        mul = next(t for t in oracles.group_tables(4) if not oracles.brace_equation_holds(add, t))
        rows = [" ".join(map(str, r)) for r in add] + [""] + [" ".join(map(str, r)) for r in mul]
        p = tmp_path / "bad.sbr"
        p.write_text("skewbrace 4\n" + "\n".join(rows) + "\n")
        code, _, err = run(capsys, "verify", p)
        assert code == 1 and "BraceEquationFails" in err

    def test_unknown_header(self, capsys, tmp_path):
        p = tmp_path / "x.txt"
        p.write_text("hello 3\n")
        assert run(capsys, "verify", p)[0] == 2

    def test_solution_and_block(self, capsys, tmp_path):
        s = tmp_path / "r.ybe"
        io.write_file(s, io.write_solution(ybe.solution_from_brace(con.ring_brace(2, 1))))
        code, out, _ = run(capsys, "verify", s)
        assert code == 0 and "multipermutation level: 2" in out
        b = tmp_path / "b.blk"
        io.write_file(b, io.write_block(con.ring_block(3, [0, 1, 2])))
        code, out, _ = run(capsys, "verify", b)
        assert code == 0 and "pairs checked: 3" in out


class TestConstruct:
    def test_trivial(self, capsys, tmp_path):
        out = tmp_path / "t.sbr"
        assert run(capsys, "construct", "trivial", "--group", "C4", "-o", out)[0] == 0
        assert io.read_brace(out) == con.trivial(grp.cyclic(4))

    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "construct", "optrivial", "--group", "S3")
        assert code == 0 and io.parse_brace(out) == con.op_trivial(grp.symmetric(3)[0])

    def test_ringblock(self, capsys, tmp_path):
        out = tmp_path / "r.blk"
        assert run(capsys, "construct", "ringblock", "--mod", 2, "--xs", "0,1", "-o", out)[0] == 0
        block = io.read_block(out)
        assert len(block.ops) == 2 and block == con.ring_block(2, [0, 1])

    @pytest.mark.parametrize("name, ctor", [("counterexampleA", con.counterexample_a), ("counterexampleB", con.counterexample_b)])
    def test_counterexamples(self, capsys, tmp_path, name, ctor):
        out = tmp_path / f"{name}.sbr"
        assert run(capsys, "construct", name, "-o", out)[0] == 0
        A = io.read_brace(out)
        assert A.order == 32 and A == ctor()

    @pytest.mark.parametrize(
        "argv",
        [
            ["semidirect", "--left", "S3", "--right", "C7", "--left-kind", "optrivial"],
            ["intermediate", "--auts", "unitriangular", "--mod", "3"],
            ["intermediate", "--group", "C2xC8"],
            ["semidirectblock", "--left", "C4", "--right", "C5"],
            ["innerblock", "--group", "D4", "--subgroup", "center"],
            ["innerblock", "--group", "Heis3", "--homs", "identity"],
            ["iterate", "--ring", "4,1", "--ns", "0,1,2,3"],
            ["psideform", "--ring", "4,1", "--power", "2"],
        ],
    )
    def test_other_constructions(self, capsys, argv):
        code, out, err = run(capsys, "construct", *argv)
        assert code == 0, err
        kind = io.detect_kind(out)
        parsed = io.parse_block(out) if kind == "block" else io.parse_brace(out)
        assert parsed is not None

    def test_semidirect_flags(self, capsys):
        _, out, _ = run(capsys, "construct", "semidirect", "--left", "S3", "--right", "C7", "--left-kind", "optrivial")
        A = io.parse_brace(out)
        assert br.is_bi_skew(A).verdict and not br.is_gamma_homomorphic(A).verdict

    def test_usage_errors(self, capsys):
        assert run(capsys, "construct", "trivial")[0] == 2
        assert run(capsys, "construct", "nosuch")[0] == 2
        assert run(capsys, "construct", "trivial", "--group", "X9")[0] == 2

    def test_bad_integer_list(self, capsys):
        assert run(capsys, "construct", "iterate", "--ring", "2,1", "--ns", "x")[0] == 2

    def test_construction_error_is_invalid(self, capsys):
        # [S3, S3] is not central in S3
        code, _, err = run(capsys, "construct", "innerblock", "--group", "S3")
        assert code == 1 and "HBNotAbelian" in err


class TestEnumerate:
    @pytest.mark.parametrize("order, count", [(2, 1), (3, 1), (4, 4)])
    def test_counts(self, capsys, order, count):
        code, out, _ = run(capsys, "enumerate", "--order", order)
        assert code == 0 and f"count: {count}" in out.splitlines()

    def test_bi_filter_matches_oracle(self, capsys):
        expected = 0
        for add in oracles.groups_up_to_iso(4):
            for mul in oracles.skew_brace_muls(add):
                if oracles.brace_equation_holds(mul, add):
                    expected += 1
        code, out, _ = run(capsys, "enumerate", "--order", 4, "--filter", "bi", "--labelled")
        assert code == 0 and f"count: {expected}" in out.splitlines()

    def test_out_dir(self, capsys, tmp_path):
        d = tmp_path / "enum"
        assert run(capsys, "enumerate", "--order", 6, "--out", d, "--jobs", 2)[0] == 0
        files = sorted(p.name for p in d.iterdir())
        assert "manifest.txt" in files and len(files) == 7
        assert "classes: 6" in (d / "manifest.txt").read_text()

    def test_group(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--group", "C2xC2", "--labelled")
        assert code == 0 and "count: 4" in out.splitlines()

    def test_bounds(self, capsys):
        assert run(capsys, "enumerate", "--order", 17)[0] == 3
        assert run(capsys, "enumerate", "--group", "C33")[0] == 3

    def test_bad_filter(self, capsys):
        assert run(capsys, "enumerate", "--order", 4, "--filter", "wat")[0] == 2


class TestYbe:
    def test_derive_trivial_c2(self, capsys, tmp_path):
        p = tmp_path / "c2.sbr"
        io.write_file(p, io.write_brace(con.trivial(grp.cyclic(2))))
        code, out, _ = run(capsys, "ybe", "derive", p)
        assert code == 0 and io.parse_solution(out).is_trivial()

    def test_counterexample_pipeline(self, capsys, tmp_path):
        a, b = tmp_path / "A.sbr", tmp_path / "B.sbr"
        run(capsys, "construct", "counterexampleA", "-o", a)
        run(capsys, "construct", "counterexampleB", "-o", b)
        ra, rb = tmp_path / "rA.ybe", tmp_path / "rB.ybe"
        sa, sb = tmp_path / "rAswap.ybe", tmp_path / "rBswap.ybe"
        for src, dst, extra in ((a, ra, []), (b, rb, []), (a, sa, ["--swap"]), (b, sb, ["--swap"])):
            assert run(capsys, "ybe", "derive", src, "-o", dst, *extra)[0] == 0
        code, out, _ = run(capsys, "ybe", "iso", ra, rb)
        f = [int(v) for v in out.split()]
        assert code == 0 and sorted(f) == list(range(32))
        assert ybe.is_solution_homomorphism(io.read_solution(ra), io.read_solution(rb), f)
        assert run(capsys, "ybe", "iso", sa, sb)[1].strip() == "none"
        assert run(capsys, "ybe", "taumultiset", sa)[1].split() == ["1:8", "2:8", "4:16"]
        assert run(capsys, "ybe", "taumultiset", sb)[1].split() == ["1:8", "2:24"]

    def test_other_subcommands(self, capsys, tmp_path):
        p = tmp_path / "r.ybe"
        S = ybe.solution_from_brace(con.op_trivial(grp.symmetric(3)[0]))
        io.write_file(p, io.write_solution(S))
        assert run(capsys, "ybe", "check", p)[1].splitlines()[-1] == "valid"
        code, out, _ = run(capsys, "ybe", "invert", p)
        assert io.parse_solution(out) == ybe.inverse_solution(S)
        assert run(capsys, "ybe", "level", p, "--cap", 3)[1].strip() == ">3"
        assert "permutation group order" in run(capsys, "ybe", "group", p)[1]
        assert run(capsys, "ybe", "group", p, "--bound", 2)[0] == 3
        code, out, _ = run(capsys, "ybe", "retract", p)
        assert code == 0 and "classes: 0 1 2 3 4 5" in out

    def test_iso_needs_two(self, capsys, tmp_path):
        p = tmp_path / "r.ybe"
        io.write_file(p, io.write_solution(ybe.trivial_solution(2)))
        assert run(capsys, "ybe", "iso", p)[0] == 2


class TestSample:
    def test_mult2(self, capsys):
        code, out, _ = run(capsys, "sample", "z", "--variant", "mult2", "--bound", 25, "--props", "brace,dihedral")
        assert code == 0 and out.splitlines()[-1] == "PASS"

    def test_z2_all_trivial(self, capsys):
        code, out, _ = run(capsys, "sample", "z2", "--x", 0, "--bound", 4, "--props", "all")
        assert code == 0 and out.splitlines()[-1] == "PASS"

    def test_z2_class2(self, capsys):
        code, out, _ = run(capsys, "sample", "z2", "--x", 7, "--bound", 10, "--props", "class2")
        assert code == 0 and "right_class_le_2: pass" in out

    def test_failing_property(self, capsys):
        code, out, _ = run(capsys, "sample", "z", "--variant", "mult3", "--bound", 3, "--props", "antihom")
        assert code == 1 and out.splitlines()[-1] == "FAIL"

    def test_usage(self, capsys):
        assert run(capsys, "sample", "z2", "--bound", 3)[0] == 2
        assert run(capsys, "sample", "z", "--props", "nope")[0] == 2


def test_argparse_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
