"""Reading and writing formal contexts.

Burmeister interchange format, as written by this package::

    # optional comment lines (ignored; generators record their
    # parameters here)
    B
    <context name, may be empty>
    <number of objects>
    <number of attributes>
    <blank line>
    <one object name per line>
    <one attribute name per line>
    <one row per object: 'X' for incidence, '.' for none>

Lowercase 'x' is accepted when reading. A minimal CSV reader is also
provided: comma-separated 0/1 cells, one line per object, '#' comment
lines skipped.
"""

from __future__ import annotations

from typing import Iterable

from .context import FormalContext


class ContextParseError(ValueError):
    """Malformed context file; carries 1-based line (and column) position."""

    def __init__(self, line: int, message: str, column: int | None = None) -> None:
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


def write_burmeister(ctx: FormalContext, name: str = "",
                     header_comments: Iterable[str] = ()) -> str:
    """Serialise a context; byte-deterministic for equal inputs."""
    lines = [f"# {c}" if c else "#" for c in header_comments]
    lines.append("B")
    lines.append(name)
    lines.append(str(ctx.n_objects))
    lines.append(str(ctx.n_attributes))
    lines.append("")
    lines.extend(ctx.object_names)
    lines.extend(ctx.attribute_names)
    for o in range(ctx.n_objects):
        row = ctx.row_masks[o]
        lines.append("".join(
            "X" if row >> a & 1 else "." for a in range(ctx.n_attributes)))
    return "\n".join(lines) + "\n"


def read_burmeister(text: str) -> FormalContext:
    """Parse the format written by :func:`write_burmeister`.

    Raises ContextParseError with the offending position on malformed
    input.
    """
    lines = text.split("\n")
    # a single trailing newline leaves one empty tail element; drop it
    if lines and lines[-1] == "":
        lines.pop()
    pos = 0

    def current() -> str:
        if pos >= len(lines):
            raise ContextParseError(len(lines) + 1, "unexpected end of file")
        return lines[pos]

    while pos < len(lines) and lines[pos].startswith("#"):
        pos += 1
    if current().strip() != "B":
        raise ContextParseError(pos + 1, f"expected header 'B', got {current()!r}")
    pos += 1
    name = current()  # noqa: F841  (name line is positional, content unused)
    pos += 1

    def read_count(what: str) -> int:
        nonlocal pos
        raw = current().strip()
        try:
            value = int(raw)
        except ValueError:
            raise ContextParseError(pos + 1, f"expected {what} count, got {raw!r}") from None
        if value < 0:
            raise ContextParseError(pos + 1, f"{what} count must be >= 0, got {value}")
        pos += 1
        return value

    n_objects = read_count("object")
    n_attributes = read_count("attribute")
    if current().strip() != "":
        raise ContextParseError(pos + 1, "expected blank line after dimensions")
    pos += 1

    def read_names(count: int, what: str) -> list[str]:
        nonlocal pos
        names = []
        for _ in range(count):
            names.append(current())
            pos += 1
        if len(set(names)) != count:
            raise ContextParseError(pos, f"duplicate {what} name")
        return names

    object_names = read_names(n_objects, "object")
    attribute_names = read_names(n_attributes, "attribute")

    rows = []
    for o in range(n_objects):
        line = current()
        if len(line) != n_attributes:
            raise ContextParseError(
                pos + 1, f"row has {len(line)} cells, expected {n_attributes}")
        mask = 0
        for a, ch in enumerate(line):
            if ch in "Xx":
                mask |= 1 << a
            elif ch != ".":
                raise ContextParseError(
                    pos + 1, f"invalid cell character {ch!r}", column=a + 1)
        rows.append(mask)
        pos += 1
    if pos != len(lines) and any(l.strip() for l in lines[pos:]):
        raise ContextParseError(pos + 1, "trailing content after incidence rows")
    return FormalContext.from_row_masks(
        n_objects, n_attributes, rows, object_names, attribute_names)


def read_burmeister_file(path: str) -> FormalContext:
    with open(path, "r", encoding="utf-8") as fh:
        return read_burmeister(fh.read())


def read_csv_matrix(text: str) -> FormalContext:
    """Minimal 0/1 matrix reader; names are generated."""
    rows = []
    width = None
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cells = [c.strip() for c in stripped.split(",")]
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ContextParseError(
                lineno, f"row has {len(cells)} cells, expected {width}")
        mask = 0
        for a, cell in enumerate(cells):
            if cell == "1":
                mask |= 1 << a
            elif cell != "0":
                raise ContextParseError(
                    lineno, f"expected 0 or 1, got {cell!r}", column=a + 1)
        rows.append(mask)
    if width is None:
        raise ContextParseError(1, "empty CSV matrix")
    return FormalContext.from_row_masks(len(rows), width, rows)


def read_context_file(path: str) -> FormalContext:
    """Dispatch on extension: .csv goes to the CSV reader, anything else
    is treated as Burmeister."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if path.lower().endswith(".csv"):
        return read_csv_matrix(text)
    return read_burmeister(text)
