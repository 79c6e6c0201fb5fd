"""Exact dense integer matrices and permutations.

Matrices are immutable. Entries live in an int64 numpy array while every
intermediate result provably fits; an operation whose worst-case magnitude
could leave the int64 range is computed on Python integers instead, so
results are always exact and nothing ever wraps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_INT64_LIMIT = 2**62  # headroom below 2**63 for sums of products


class DimensionError(ValueError):
    """Raised when operand shapes are incompatible."""


def _freeze(arr: np.ndarray) -> np.ndarray:
    """Return a read-only array, downcast to int64 when every entry fits."""
    if arr.dtype == object:
        if arr.size == 0 or max(abs(int(x)) for x in arr.flat) < _INT64_LIMIT:
            arr = arr.astype(np.int64)
    elif arr.dtype != np.int64:
        arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


class IntMatrix:
    """Square matrix of exact integers.

    Construct from nested sequences: ``IntMatrix([[1, 0], [0, 1]])``.
    The 0x0 matrix is allowed (``IntMatrix([])``).
    """

    __slots__ = ("_a", "_key", "_max_abs", "_hash")

    def __init__(self, rows: Iterable[Sequence[int]] | np.ndarray):
        if isinstance(rows, np.ndarray):
            arr = rows.copy()
        else:
            rows = [list(r) for r in rows]
            n = len(rows)
            if any(len(r) != n for r in rows):
                raise DimensionError("matrix must be square")
            for r in rows:
                for x in r:
                    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                        raise TypeError(f"entries must be integers, got {x!r}")
            arr = np.array([[int(x) for x in r] for r in rows], dtype=object).reshape(n, n)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"matrix must be square, got shape {arr.shape}")
        self._a = _freeze(arr)
        self._key = None
        self._max_abs = None
        self._hash = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "IntMatrix":
        # trusted internal constructor: arr is square and owned by the caller
        m = cls.__new__(cls)
        m._a = _freeze(arr)
        m._key = None
        m._max_abs = None
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._wrap(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, n: int) -> "IntMatrix":
        return cls._wrap(np.zeros((n, n), dtype=np.int64))

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries (int64, or object for huge values)."""
        return self._a

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """0-based entry access."""
        return int(self._a[ij])

    def key(self) -> bytes | tuple:
        """Canonical encoding (row-major entries), exact and hashable."""
        if self._key is None:
            if self._a.dtype == np.int64:
                self._key = self._a.tobytes()
            else:
                self._key = (self.n,) + tuple(int(x) for x in self._a.flat)
        return self._key

    def max_abs(self) -> int:
        if self._max_abs is None:
            self._max_abs = 0 if self._a.size == 0 else int(np.abs(self._a).max())
        return self._max_abs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.n == other.n and self.key() == other.key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.key()))
        return self._hash

    def __lt__(self, other: "IntMatrix") -> bool:
        return (self.n, self.tolist()) < (other.n, other.tolist())

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"

    def __str__(self) -> str:
        rows = self.tolist()
        if not rows:
            return ""
        width = max(len(str(x)) for r in rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return multiply(self, other)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        _check_same(self, other)
        return IntMatrix._wrap(_widen(self, other, 1) + _widen(other, self, 1))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        _check_same(self, other)
        return IntMatrix._wrap(_widen(self, other, 1) - _widen(other, self, 1))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix._wrap(-self._a.astype(object))

    @property
    def T(self) -> "IntMatrix":
        return transpose(self)

    def is_zero(self) -> bool:
        return not self._a.any()


def _check_same(a: IntMatrix, b: IntMatrix) -> None:
    if a.n != b.n:
        raise DimensionError(f"size mismatch: {a.n} vs {b.n}")


def _widen(a: IntMatrix, b: IntMatrix, terms: int) -> np.ndarray:
    # int64 is safe when |a|*|b|*terms (or |a|+|b| for sums) stays below the limit
    bound = max(a.max_abs(), 1) * max(b.max_abs(), 1) * max(terms, 1)
    if bound >= _INT64_LIMIT or a.array.dtype == object or b.array.dtype == object:
        return a.array.astype(object)
    return a.array


def multiply(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact matrix product."""
    _check_same(a, b)
    x = _widen(a, b, a.n)
    y = b.array.astype(object) if x.dtype == object else b.array
    return IntMatrix._wrap(x @ y)


def power(a: IntMatrix, k: int) -> IntMatrix:
    """``a**k`` by repeated multiplication, k >= 1."""
    if k < 1:
        raise ValueError("power requires k >= 1")
    out = a
    for _ in range(k - 1):
        out = multiply(out, a)
    return out


def transpose(a: IntMatrix) -> IntMatrix:
    return IntMatrix._wrap(a.array.T.copy())


def kronecker(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product: the (i, j) block is ``a[i, j] * b``."""
    bound = max(a.max_abs(), 1) * max(b.max_abs(), 1)
    if bound >= _INT64_LIMIT or a.array.dtype == object or b.array.dtype == object:
        return IntMatrix._wrap(np.kron(a.array.astype(object), b.array.astype(object)))
    return IntMatrix._wrap(np.kron(a.array, b.array))


def rank_of_rows(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a (possibly rectangular) integer matrix.

    Fraction-free Bareiss elimination; every division is exact.
    """
    m = [[int(x) for x in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = rank
        while piv < nrows and m[piv][col] == 0:
            piv += 1
        if piv == nrows:
            continue
        if piv != rank:
            m[piv], m[rank] = m[rank], m[piv]
        prow = m[rank]
        p = prow[col]
        for i in range(rank + 1, nrows):
            row = m[i]
            f = row[col]
            if f:
                for j in range(col + 1, ncols):
                    row[j] = (row[j] * p - prow[j] * f) // prev
            else:
                for j in range(col + 1, ncols):
                    row[j] = (row[j] * p) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def rank(a: IntMatrix) -> int:
    """Exact rank over the rationals."""
    return rank_of_rows(a.tolist())


def is_singular(a: IntMatrix) -> bool:
    return rank(a) < a.n


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n} in one-line notation: ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(5, (1, 2), (4, 5))``."""
        imgs = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if x in seen or not 1 <= x <= n:
                    raise ValueError(f"bad cycle entry {x}")
                seen.add(x)
                imgs[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(imgs))

    @classmethod
    def cycle(cls, n: int, length: int | None = None) -> "Permutation":
        """The cycle (1 2 ... length) on {1..n}; length defaults to n."""
        length = n if length is None else length
        return cls.from_cycles(n, tuple(range(1, length + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse one-line notation such as ``"2 3 1"`` or ``"2,3,1"``."""
        parts = text.replace(",", " ").split()
        return cls(tuple(int(p) for p in parts))

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        if other.n != self.n:
            raise DimensionError("permutation size mismatch")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def order(self) -> int:
        seen = [False] * self.n
        out = 1
        for start in range(self.n):
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.images[i] - 1
                length += 1
            if length:
                out = math.lcm(out, length)
        return out

    def fixes(self, i: int) -> bool:
        return self(i) == i

    def __str__(self) -> str:
        return " ".join(map(str, self.images))


def permutation_matrix(p: Permutation) -> IntMatrix:
    """Matrix with a 1 at (p(j), j); ``P @ M`` moves row j of M to row p(j)."""
    arr = np.zeros((p.n, p.n), dtype=np.int64)
    for j, i in enumerate(p.images):
        arr[i - 1, j] = 1
    return IntMatrix._wrap(arr)


def block_diagonal(*blocks: IntMatrix) -> IntMatrix:
    n = sum(b.n for b in blocks)
    arr = np.zeros((n, n), dtype=object)
    at = 0
    for b in blocks:
        arr[at:at + b.n, at:at + b.n] = b.array
        at += b.n
    return IntMatrix._wrap(arr)


def batch_determinant(stack: np.ndarray) -> np.ndarray:
    """Exact determinants of a stack of small integer matrices, shape (N, n, n).

    Bareiss elimination vectorised over the stack. Every intermediate value is
    a minor of the input, so int64 is exact while Hadamard's bound on those
    minors stays below 2**31 (checked up front).
    """
    a = np.array(stack, dtype=np.int64, copy=True)
    count, n, _ = a.shape
    if count == 0:
        return np.zeros(0, dtype=np.int64)
    if n == 0:
        return np.ones(count, dtype=np.int64)
    # Bareiss forms products of two minors, each bounded by Hadamard's bound
    norms = np.maximum(np.sqrt((a.astype(np.float64) ** 2).sum(axis=2)).max(axis=0), 1.0)
    if float(np.prod(norms)) >= 2.0**30:
        raise OverflowError("entries too large for the int64 batch determinant")
    sign = np.ones(count, dtype=np.int64)
    dead = np.zeros(count, dtype=bool)
    prev = np.ones(count, dtype=np.int64)
    idx = np.arange(count)
    for k in range(n):
        col = a[:, k:, k]
        nz = col != 0
        has = nz.any(axis=1)
        dead |= ~has
        piv = k + np.argmax(nz, axis=1)
        swap = (piv != k) & has
        if swap.any():
            rows_k = a[idx[swap], k].copy()
            a[idx[swap], k] = a[idx[swap], piv[swap]]
            a[idx[swap], piv[swap]] = rows_k
            sign[swap] = -sign[swap]
        p = a[:, k, k].copy()
        p[dead] = 1
        if k + 1 < n:
            sub = a[:, k + 1:, k + 1:]
            lead = a[:, k + 1:, k:k + 1]
            top = a[:, k:k + 1, k + 1:]
            a[:, k + 1:, k + 1:] = (sub * p[:, None, None] - lead * top) // prev[:, None, None]
            a[dead, k + 1:, k + 1:] = 0
        prev = p
    det = sign * a[:, n - 1, n - 1]
    det[dead] = 0
    return det
