"""Matrix text and JSON formats.

Text: one row per line, entries separated by whitespace; a blank line ends a
matrix, so a file may hold several matrices. Lines containing ``:`` are
report annotations (``rank: 3``) and also end a matrix; ``#`` starts a
comment. JSON: ``{"n": 3, "entries": [[...], ...]}``, optionally with a
``"frame"`` object, or a list of such objects, or ``{"matrices": [...]}``.
"""

from __future__ import annotations

import json
from typing import Any

from .matrix import IntMatrix


class MatrixFormatError(ValueError):
    pass


def to_text(m: IntMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m.tolist())


def to_obj(m: IntMatrix) -> dict[str, Any]:
    return {"n": m.n, "entries": m.tolist()}


def from_obj(obj: Any) -> IntMatrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MatrixFormatError("expected an object with 'n' and 'entries'")
    entries = obj["entries"]
    n = obj.get("n", len(entries))
    if n != len(entries):
        raise MatrixFormatError(f"'n' is {n} but there are {len(entries)} rows")
    try:
        return IntMatrix(entries)
    except (ValueError, TypeError) as exc:
        raise MatrixFormatError(str(exc)) from exc


def parse_text_matrices(text: str) -> list[IntMatrix]:
    blocks: list[list[list[int]]] = []
    current: list[list[int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped or ":" in stripped:
            if current:
                blocks.append(current)
                current = []
            continue
        try:
            current.append([int(tok) for tok in stripped.split()])
        except ValueError as exc:
            raise MatrixFormatError(f"line {lineno}: {exc}") from exc
    if current:
        blocks.append(current)
    out = []
    for rows in blocks:
        try:
            out.append(IntMatrix(rows))
        except ValueError as exc:
            raise MatrixFormatError(f"{len(rows)} rows of lengths "
                                    f"{sorted({len(r) for r in rows})}: {exc}") from exc
    return out


def frame_to_obj(meta) -> dict[str, Any]:
    return {"outer_size": meta.outer_size, "block_start": meta.block_start,
            "block": list(meta.block.images), "x_col": meta.x_col}


def parse_matrices(text: str) -> list[IntMatrix]:
    """Parse every matrix in ``text``, detecting JSON by its first character."""
    stripped = text.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from exc
        if isinstance(data, dict) and "matrices" in data:
            data = data["matrices"]
        if isinstance(data, list):
            return [from_obj(o) for o in data]
        return [from_obj(data)]
    return parse_text_matrices(text)


def parse_matrix(text: str) -> IntMatrix:
    ms = parse_matrices(text)
    if len(ms) != 1:
        raise MatrixFormatError(f"expected exactly one matrix, found {len(ms)}")
    return ms[0]
