import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewbrace import braces as br
from skewbrace import constructions as con
from skewbrace import groups as grp
from skewbrace import io
from skewbrace import ybe
from skewbrace.errors import BraceEquationFails, ParseError, PairNotBiSkew

import oracles

C4_TRIV = """skewbrace 4
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2

0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
"""


class TestBrace:
    def test_parse(self):
        A = io.parse_brace(C4_TRIV)
        assert A == con.trivial(grp.cyclic(4))

    def test_comments_ignored(self):
        text = "# a comment\n" + C4_TRIV.replace("\n\n", "\n   # between tables\n\n")
        assert io.parse_brace(text) == con.trivial(grp.cyclic(4))

    def test_write_format(self):
        text = io.write_brace(con.trivial(grp.cyclic(2)), comment="C2")
        assert text.splitlines() == ["# C2", "skewbrace 2", "0 1", "1 0", "", "0 1", "1 0"]

    def test_round_trip(self, representatives):
        for A in representatives:
            assert io.parse_brace(io.write_brace(A)) == A

    def test_broken_row_line_number(self):
        text = C4_TRIV.replace("2 3 0 1\n3 0 1 2\n\n", "2 3 0\n3 0 1 2\n\n", 1)
        with pytest.raises(ParseError) as exc:
            io.parse_brace(text, path="broken.sbr")
        assert exc.value.line == 4 and exc.value.path == "broken.sbr"
        assert "broken.sbr:4" in str(exc.value)

    @pytest.mark.parametrize(
        "mutate, line",
        [
            (lambda t: t.replace("skewbrace 4", "skewbrace four"), 1),
            (lambda t: t.replace("skewbrace 4", "brace 4"), 1),
            (lambda t: t.replace("1 2 3 0\n2 3 0 1\n3", "1 2 3 0\n2 3 9 1\n3", 1), 4),
            (lambda t: t.replace("1 2 3 0", "1 2 x 0", 1), 3),
            (lambda t: t.replace("\n\n", "\n", 1), 6),
            (lambda t: t + "5\n", 11),
        ],
    )
    def test_parse_errors(self, mutate, line):
        with pytest.raises(ParseError) as exc:
            io.parse_brace(mutate(C4_TRIV))
        assert exc.value.line == line

    def test_missing_rows(self):
        with pytest.raises(ParseError):
            io.parse_brace("skewbrace 2\n0 1\n1 0\n\n0 1\n")

    def test_identity_not_at_zero(self):
        text = "skewbrace 2\n1 0\n0 1\n\n0 1\n1 0\n"
        with pytest.raises(ParseError) as exc:
            io.parse_brace(text)
        assert exc.value.line == 2


def _failing_c4_text():
    add = grp.cyclic(4).table
    mul = next(t for t in oracles.group_tables(4) if not oracles.brace_equation_holds(add, t))
    rows = [" ".join(map(str, r)) for r in add] + [""] + [" ".join(map(str, r)) for r in mul]
    return "skewbrace 4\n" + "\n".join(rows) + "\n"


def test_syntax_ok_but_not_a_brace():
    with pytest.raises(BraceEquationFails):
        io.parse_brace(_failing_c4_text())
    add, mul = io.parse_brace_tables(_failing_c4_text())
    assert len(add) == len(mul) == 4


class TestSolution:
    def test_round_trip(self, representatives):
        for A in representatives[::3]:
            S = ybe.solution_from_brace(A)
            assert io.parse_solution(io.write_solution(S)) == S

    def test_orientation(self):
        # tau rows are indexed by the second argument
        S = ybe.solution_from_brace(con.op_trivial(grp.symmetric(3)[0]))
        text = io.write_solution(S)
        lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
        assert lines[0] == "solution 6"
        assert [int(v) for v in lines[1 + 6 + 2].split()] == list(S.tau[2])

    def test_flip(self):
        text = "solution 2\n0 1\n0 1\n\n0 1\n0 1\n"
        assert io.parse_solution(text).is_trivial()


class TestBlock:
    def test_round_trip_with_labels(self):
        block = con.ring_block(3, [0, 2, 1])
        again = io.parse_block(io.write_block(block))
        assert again == block and again.labels == block.labels

    def test_header(self):
        text = io.write_block(con.ring_block(2, [0, 1]))
        assert "braceblock 4 2" in text.splitlines()

    def test_wrong_count(self):
        text = io.write_block(con.ring_block(2, [0, 1])).replace("braceblock 4 2", "braceblock 4 3")
        with pytest.raises(ParseError):
            io.parse_block(text)

    def test_invalid_block(self):
        A = con.semidirect(
            con.trivial(grp.symmetric(3)[0]),
            con.trivial(grp.abelian(2, 2)),
            _faithful(),
        )
        text = "braceblock 24 2\n" + "\n".join(_fmt(A.add.table)) + "\n\n" + "\n".join(_fmt(A.mul.table)) + "\n"
        with pytest.raises(PairNotBiSkew):
            io.parse_block(text)


def _fmt(t):
    return [" ".join(map(str, r)) for r in t]


def _faithful():
    S, V = grp.symmetric(3)[0], grp.abelian(2, 2)
    M, elems = con.perm_group(con.automorphism_perms(V), V.order)
    f = next(grp.homomorphisms(S, M, injective=True))
    return [elems[f.images[g]] for g in range(S.order)]


def test_detect_kind():
    assert io.detect_kind(C4_TRIV) == "brace"
    assert io.detect_kind("# c\nsolution 2\n") == "solution"
    assert io.detect_kind("braceblock 4 2\n") == "block"
    assert io.detect_kind("hello") is None


def test_files(tmp_path):
    p = tmp_path / "a.sbr"
    io.write_file(p, io.write_brace(con.ring_brace(2, 1)))
    assert io.read_brace(p) == con.ring_brace(2, 1)
    with pytest.raises(ParseError):
        io.read_brace(tmp_path / "missing.sbr")


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_relabelled_round_trip(data, representatives):
    A = data.draw(st.sampled_from(representatives))
    rest = data.draw(st.permutations(range(1, A.order)))
    B = br.relabel(A, (0, *rest))
    assert io.parse_brace(io.write_brace(B)) == B
