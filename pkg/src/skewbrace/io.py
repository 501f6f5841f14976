"""Plain-text formats for braces (.sbr), solutions (.ybe) and brace blocks (.blk).

All three share one layout: a header line, then square tables of
space-separated indices, consecutive tables separated by a blank line.
Lines whose first non-blank character is ``#`` are ignored.

    skewbrace <n>          additive table, blank, multiplicative table
    solution <n>           sigma table (row x = sigma_x), blank, tau table (row y = tau_y)
    braceblock <n> <k>     k operation tables; table 0 is the base operation

Element 0 must be the identity of every group table; files violating this
are rejected rather than relabelled.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import braces as br
from . import constructions as con
from . import ybe
from .braces import SkewBrace
from .constructions import BraceBlock
from .errors import ParseError
from .ybe import Solution

Table = list[list[int]]


@dataclass
class _Line:
    number: int
    text: str


def _lines(text: str) -> list[_Line]:
    out = []
    for k, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        out.append(_Line(k, raw.strip()))
    return out


def _labels(text: str) -> dict[int, str]:
    labels = {}
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("# op ") and ":" in s:
            head, _, lab = s[len("# op ") :].partition(":")
            if head.strip().isdigit():
                labels[int(head)] = lab.strip()
    return labels


class _Reader:
    def __init__(self, text: str, path: str | None):
        self.lines = _lines(text)
        self.pos = 0
        self.path = path

    def error(self, msg: str, line: int | None = None) -> ParseError:
        return ParseError(msg, line, self.path)

    def skip_blank(self) -> int:
        skipped = 0
        while self.pos < len(self.lines) and not self.lines[self.pos].text:
            self.pos += 1
            skipped += 1
        return skipped

    def header(self, keyword: str, arity: int) -> tuple[list[int], int]:
        self.skip_blank()
        if self.pos >= len(self.lines):
            raise self.error(f"missing '{keyword}' header")
        line = self.lines[self.pos]
        parts = line.text.split()
        if not parts or parts[0] != keyword:
            raise self.error(f"expected header '{keyword}', got {line.text!r}", line.number)
        if len(parts) != arity + 1:
            raise self.error(f"header '{keyword}' takes {arity} integer(s)", line.number)
        try:
            values = [int(p) for p in parts[1:]]
        except ValueError:
            raise self.error(f"non-integer in header {line.text!r}", line.number) from None
        if any(v < 1 for v in values):
            raise self.error("header values must be positive", line.number)
        self.pos += 1
        return values, line.number

    def table(self, n: int, what: str, first: bool) -> tuple[Table, int]:
        skipped = self.skip_blank()
        if not first and skipped == 0 and self.pos < len(self.lines):
            raise self.error(f"expected a blank line before the {what}", self.lines[self.pos].number)
        rows: Table = []
        start = None
        for r in range(n):
            if self.pos >= len(self.lines) or not self.lines[self.pos].text:
                where = self.lines[self.pos].number if self.pos < len(self.lines) else None
                raise self.error(f"{what}: expected {n} rows, found {r}", where)
            line = self.lines[self.pos]
            start = start or line.number
            try:
                row = [int(v) for v in line.text.split()]
            except ValueError:
                raise self.error(f"{what}: non-integer entry", line.number) from None
            if len(row) != n:
                raise self.error(f"{what}: row has {len(row)} entries, expected {n}", line.number)
            bad = next((v for v in row if not 0 <= v < n), None)
            if bad is not None:
                raise self.error(f"{what}: entry {bad} out of range 0..{n - 1}", line.number)
            rows.append(row)
            self.pos += 1
        return rows, start

    def end(self) -> None:
        self.skip_blank()
        if self.pos < len(self.lines):
            raise self.error("unexpected trailing content", self.lines[self.pos].number)


def _check_identity(rows: Table, start: int, what: str, reader: _Reader) -> None:
    n = len(rows)
    if rows[0] != list(range(n)):
        raise reader.error(f"{what}: row 0 is not the identity row (element 0 must be the identity)", start)
    for k, row in enumerate(rows):
        if row[0] != k:
            raise reader.error(f"{what}: column 0 is not the identity column", start + k)


def _format_table(rows: Sequence[Sequence[int]]) -> list[str]:
    return [" ".join(str(v) for v in row) for row in rows]


# --- braces --------------------------------------------------------------------


def parse_brace_tables(text: str, path: str | None = None) -> tuple[Table, Table]:
    """Syntax-level parse; no group or brace validation."""
    r = _Reader(text, path)
    (n,), _ = r.header("skewbrace", 1)
    add, s1 = r.table(n, "additive table", True)
    _check_identity(add, s1, "additive table", r)
    mul, s2 = r.table(n, "multiplicative table", False)
    _check_identity(mul, s2, "multiplicative table", r)
    r.end()
    return add, mul


def parse_brace(text: str, path: str | None = None) -> SkewBrace:
    add, mul = parse_brace_tables(text, path)
    return br.brace_from_tables(add, mul)


def write_brace(A: SkewBrace, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in (comment.splitlines() if comment else [])]
    lines.append(f"skewbrace {A.order}")
    lines += _format_table(A.add.table)
    lines.append("")
    lines += _format_table(A.mul.table)
    return "\n".join(lines) + "\n"


# --- solutions -----------------------------------------------------------------


def parse_solution_tables(text: str, path: str | None = None) -> tuple[Table, Table]:
    r = _Reader(text, path)
    (n,), _ = r.header("solution", 1)
    sigma, _ = r.table(n, "sigma table", True)
    tau, _ = r.table(n, "tau table", False)
    r.end()
    return sigma, tau


def parse_solution(text: str, path: str | None = None) -> Solution:
    sigma, tau = parse_solution_tables(text, path)
    return ybe.validate_solution(sigma, tau)


def write_solution(S: Solution, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in (comment.splitlines() if comment else [])]
    lines.append(f"solution {S.size}")
    lines += _format_table(S.sigma)
    lines.append("")
    lines += _format_table(S.tau)
    return "\n".join(lines) + "\n"


# --- blocks --------------------------------------------------------------------


def parse_block_tables(text: str, path: str | None = None) -> list[Table]:
    r = _Reader(text, path)
    (n, k), _ = r.header("braceblock", 2)
    tables = []
    for i in range(k):
        t, start = r.table(n, f"operation {i}", i == 0)
        _check_identity(t, start, f"operation {i}", r)
        tables.append(t)
    r.end()
    return tables


def parse_block(text: str, path: str | None = None) -> BraceBlock:
    tables = parse_block_tables(text, path)
    labels = _labels(text)
    return con.block_from_tables(tables, [labels.get(i, str(i)) for i in range(len(tables))])


def write_block(block: BraceBlock, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in (comment.splitlines() if comment else [])]
    lines.append(f"braceblock {block.order} {len(block.ops)}")
    for i, (lab, op) in enumerate(zip(block.labels, block.ops)):
        if i:
            lines.append("")
        lines.append(f"# op {i}: {lab}")
        lines += _format_table(op.table)
    return "\n".join(lines) + "\n"


# --- files ---------------------------------------------------------------------


def detect_kind(text: str) -> str | None:
    for line in _lines(text):
        if line.text:
            word = line.text.split()[0]
            return {"skewbrace": "brace", "solution": "solution", "braceblock": "block"}.get(word)
    return None


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, str(path)) from exc


def read_brace(path: str | Path) -> SkewBrace:
    return parse_brace(read_text(path), str(path))


def read_solution(path: str | Path) -> Solution:
    return parse_solution(read_text(path), str(path))


def read_block(path: str | Path) -> BraceBlock:
    return parse_block(read_text(path), str(path))


def write_file(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
