"""Plain-text graph format.

    BSG 1 <n_left> <n_right>
    <row 0 as '0'/'1' characters, length n_right>
    ...

Each line ends with one newline and there are no trailing blank lines.
"""

from __future__ import annotations

from pathlib import Path

from .bigraph import BipartiteGraph

MAGIC = "BSG"
FORMAT_VERSION = 1


class GraphFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def emit(g: BipartiteGraph) -> str:
    out = [f"{MAGIC} {FORMAT_VERSION} {g.n_left} {g.n_right}"]
    for row in g.left_adj:
        out.append("".join("1" if row >> j & 1 else "0" for j in range(g.n_right)))
    return "\n".join(out) + "\n"


def parse(text: str) -> BipartiteGraph:
    if not text.endswith("\n"):
        raise GraphFileError("file must end with a newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")
    header = lines[0].split(" ")
    if len(header) != 4 or header[0] != MAGIC:
        raise GraphFileError(f"expected header '{MAGIC} {FORMAT_VERSION} <n_left> <n_right>'", 1)
    if header[1] != str(FORMAT_VERSION):
        raise GraphFileError(f"unsupported format version {header[1]!r}", 1, len(MAGIC) + 2)
    try:
        n_left, n_right = int(header[2]), int(header[3])
    except ValueError:
        raise GraphFileError("side sizes must be integers", 1) from None
    if n_left < 0 or n_right < 0 or header[2] != str(n_left) or header[3] != str(n_right):
        raise GraphFileError("side sizes must be non-negative decimal integers", 1)
    body = lines[1:]
    if len(body) != n_left:
        line = min(len(body), n_left) + 2
        raise GraphFileError(f"expected {n_left} rows, found {len(body)}", line)
    rows = []
    for i, line in enumerate(body):
        lineno = i + 2
        if len(line) != n_right:
            raise GraphFileError(f"row has length {len(line)}, expected {n_right}", lineno)
        row = 0
        for j, ch in enumerate(line):
            if ch == "1":
                row |= 1 << j
            elif ch != "0":
                raise GraphFileError(f"unexpected character {ch!r}", lineno, j + 1)
        rows.append(row)
    return BipartiteGraph.from_rows(rows, n_right)


def read(path: str | Path) -> BipartiteGraph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise GraphFileError(f"cannot read {path}: {e.strerror}") from None
    return parse(text)


def write(g: BipartiteGraph, path: str | Path) -> None:
    Path(path).write_text(emit(g))
