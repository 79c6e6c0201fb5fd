"""Alternating sign matrices: validation, reduced form, diagonal extension."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix import IntMatrix


class AsmError(ValueError):
    """A matrix fails the alternating-sign conditions."""


@dataclass(frozen=True)
class AsmViolation:
    """First failed condition. ``line`` is "row" or "column"; indices are 1-based."""

    line: str
    index: int
    position: int
    reason: str

    def __str__(self) -> str:
        other = "column" if self.line == "row" else "row"
        return f"{self.line} {self.index}, {other} {self.position}: {self.reason}"


def _scan(values, line: str, index: int) -> AsmViolation | None:
    s = 0
    for pos, v in enumerate(values, start=1):
        if v not in (-1, 0, 1):
            return AsmViolation(line, index, pos, f"entry {v} not in {{-1, 0, 1}}")
        s += v
        if s not in (0, 1):
            return AsmViolation(line, index, pos, f"prefix sum {s} not in {{0, 1}}")
    if s != 1:
        return AsmViolation(line, index, len(values), f"total {s} != 1")
    return None


def first_violation(m: IntMatrix) -> AsmViolation | None:
    """The first row (then column) whose prefix sums leave {0, 1} or do not end at 1."""
    rows = m.tolist()
    for i, row in enumerate(rows, start=1):
        v = _scan(row, "row", i)
        if v:
            return v
    for j, col in enumerate(zip(*rows), start=1):
        v = _scan(col, "column", j)
        if v:
            return v
    return None


def is_asm(m: IntMatrix) -> bool:
    return first_violation(m) is None


def check_asm(m: IntMatrix) -> IntMatrix:
    """Return ``m`` unchanged, raising AsmError naming the first violation."""
    v = first_violation(m)
    if v is not None:
        raise AsmError(f"not an ASM: {v}")
    return m


def negative_entry_count(a: IntMatrix) -> int:
    return int((a.array < 0).sum())


def _trivial_diagonal(arr: np.ndarray) -> list[int]:
    # 0-based i where the diagonal 1 is the only nonzero in row i and column i
    out = []
    for i in range(arr.shape[0]):
        if arr[i, i] == 1 and np.count_nonzero(arr[i]) == 1 and np.count_nonzero(arr[:, i]) == 1:
            out.append(i)
    return out


def is_reduced_form(a: IntMatrix) -> bool:
    """True iff every diagonal 1 has a -1 somewhere in its row or column."""
    arr = a.array
    for i in range(a.n):
        if arr[i, i] == 1 and not ((arr[i] < 0).any() or (arr[:, i] < 0).any()):
            return False
    return True


@dataclass(frozen=True)
class ReducedFormResult:
    reduced: IntMatrix
    deleted_indices: tuple[int, ...]  # 1-based, in the original matrix


def reduced_form(a: IntMatrix) -> ReducedFormResult:
    """Delete trivial diagonal rows/columns until none remain.

    For an ASM a diagonal 1 with no -1 in its row or column is the only nonzero
    there, so one pass finds every deletion and the result does not depend on
    the order of deletions.
    """
    arr = a.array
    drop = _trivial_diagonal(arr)
    keep = [i for i in range(a.n) if i not in set(drop)]
    sub = arr[np.ix_(keep, keep)] if keep else np.zeros((0, 0), dtype=np.int64)
    return ReducedFormResult(IntMatrix(np.ascontiguousarray(sub)), tuple(i + 1 for i in drop))


def diagonal_extension(a: IntMatrix, insert_positions) -> IntMatrix:
    """Insert trivial diagonal 1s so they land at ``insert_positions`` (1-based,
    indices in the extended matrix)."""
    pos = sorted(insert_positions)
    size = a.n + len(pos)
    if len(set(pos)) != len(pos):
        raise ValueError(f"duplicate insert positions: {list(insert_positions)}")
    if pos and (pos[0] < 1 or pos[-1] > size):
        raise ValueError(f"insert positions must lie in 1..{size}")
    ins = {p - 1 for p in pos}
    old = [i for i in range(size) if i not in ins]
    out = np.zeros((size, size), dtype=a.array.dtype)
    if old:
        out[np.ix_(old, old)] = a.array
    for i in ins:
        out[i, i] = 1
    return IntMatrix(out)


def batch_is_asm(stack: np.ndarray) -> np.ndarray:
    """Vectorised ASM test over a stack of shape (N, n, n)."""
    a = np.asarray(stack)
    if a.shape[1] == 0:
        return np.ones(a.shape[0], dtype=bool)
    ok = ((a >= -1) & (a <= 1)).all(axis=(1, 2))
    for axis in (2, 1):
        c = np.cumsum(a, axis=axis)
        ok &= ((c == 0) | (c == 1)).all(axis=(1, 2))
        last = c[:, :, -1] if axis == 2 else c[:, -1, :]
        ok &= (last == 1).all(axis=1)
    return ok
