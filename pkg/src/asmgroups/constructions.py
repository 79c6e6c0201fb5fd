"""Explicit families of singular ASMs of finite order.

Indices are 1-based throughout, matching how the matrices are usually
displayed. Two families:

* frames: a permutation block P bordered by two rows and columns on each side,
  with a +1/-1 column running through the block's last column; the corner
  pattern (variant "A" or "B") fixes how the order relates to the order of P.
* the (4k+1)x(4k+1) idempotents E_k and their left translates P·E_k by
  permutations fixing every odd index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .asm import check_asm
from .matrix import IntMatrix, Permutation, kronecker, multiply, permutation_matrix
from .order import SingularGroup, group_from_elements

Variant = Literal["A", "B"]


@dataclass(frozen=True)
class FrameMeta:
    """Where the central permutation block sits inside a framed ASM.

    Block rows and columns are ``block_start .. block_start + block.n - 1``.
    Outside the block rows, the only block column carrying nonzeros is
    ``x_col`` (1-based within the block); inside the block rows, everything
    outside the block is zero.
    """

    outer_size: int
    block_start: int
    block: Permutation
    x_col: int

    @property
    def block_range(self) -> range:
        return range(self.block_start, self.block_start + self.block.n)

    @property
    def frame_column(self) -> int:
        return self.block_start + self.x_col - 1


@dataclass(frozen=True)
class FramedAsm:
    asm: IntMatrix
    frame_meta: FrameMeta | None = None


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class TBlock:
    """+sign at (i1, j1), (i2, j2); -sign at (i1, j2), (i2, j1). 1-based."""

    i1: int
    j1: int
    i2: int
    j2: int
    sign: int = 1

    def __post_init__(self):
        if not (self.i1 < self.i2 and self.j1 < self.j2):
            raise ValueError("T-block needs i1 < i2 and j1 < j2")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def matrix(self, n: int) -> IntMatrix:
        arr = np.zeros((n, n), dtype=np.int64)
        s = self.sign
        arr[self.i1 - 1, self.j1 - 1] = s
        arr[self.i2 - 1, self.j2 - 1] = s
        arr[self.i1 - 1, self.j2 - 1] = -s
        arr[self.i2 - 1, self.j1 - 1] = -s
        return IntMatrix(arr)


def _assemble(outer: np.ndarray, meta: FrameMeta) -> IntMatrix:
    """Place ``meta.block`` into a frame given as a full-size array whose block
    region is ignored."""
    arr = outer.copy()
    rows = [i - 1 for i in meta.block_range]
    arr[rows, :] = 0
    for i in range(arr.shape[0]):
        if i not in rows:
            for c in meta.block_range:
                if c != meta.frame_column:
                    arr[i, c - 1] = 0
    p = permutation_matrix(meta.block).array
    s = meta.block_start - 1
    arr[s:s + meta.block.n, s:s + meta.block.n] = p
    return IntMatrix(arr)


def build_frame(p: Permutation, variant: Variant = "A") -> FramedAsm:
    """The (n+4)x(n+4) frame around the permutation matrix of ``p``.

    Variant A has order ord(p); variant B has order 2·ord(p) when ord(p) is odd
    and ord(p) when it is even.
    """
    if variant not in ("A", "B"):
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    n = p.n
    if n < 1:
        raise ValueError("permutation must be nonempty")
    size = n + 4
    c = n + 1  # 0-based index of the block's last column
    arr = np.zeros((size, size), dtype=np.int64)
    arr[0, c] = 1
    arr[size - 1, c] = 1
    arr[1, c] = -1
    arr[size - 2, c] = -1
    if variant == "A":
        arr[1, 1] = arr[1, size - 1] = 1
        arr[size - 2, 0] = arr[size - 2, size - 2] = 1
    else:
        arr[1, 0] = arr[1, size - 2] = 1
        arr[size - 2, 1] = arr[size - 2, size - 1] = 1
    arr[2:2 + n, 2:2 + n] = permutation_matrix(p).array
    meta = FrameMeta(size, 3, p, n)
    return FramedAsm(check_asm(IntMatrix(arr)), meta)


def frame_identity_column(meta: FrameMeta) -> int:
    """Block column carrying the frame column in the identity of <A>: the row
    holding the 1 of column ``x_col`` of the block."""
    return meta.block(meta.x_col)


def shares_identity(a: FramedAsm, b: FramedAsm) -> bool:
    """Whether <a> and <b> have the same identity, read off the permutations:
    column x_col of each block must have its 1 in the same row."""
    if a.frame_meta is None or b.frame_meta is None:
        raise FrameError("shares_identity needs frame metadata on both inputs")
    ma, mb = a.frame_meta, b.frame_meta
    if (ma.outer_size, ma.block_start, ma.block.n) != (mb.outer_size, mb.block_start, mb.block.n):
        return False
    return frame_identity_column(ma) == frame_identity_column(mb)


def build_symmetric_group_generators(n: int) -> tuple[FramedAsm, FramedAsm]:
    """Frames on the n-cycle (1 2 ... n) and the transposition (1 n), both with
    corner variant A, generating a copy of S_n inside SA_(n+4)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cyc = Permutation.cycle(n)
    swap = Permutation.from_cycles(n, (1, n)) if n > 1 else Permutation.identity(1)
    return build_frame(cyc, "A"), build_frame(swap, "A")


def build_E_k(k: int) -> IntMatrix:
    """The (4k+1)x(4k+1) idempotent ASM of rank 2k+1 in reduced form."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 4 * k + 1
    m = 2 * k + 1
    arr = np.zeros((n, n), dtype=np.int64)
    for i in range(1, 2 * k + 1):
        arr[i - 1, m - 1] = 1 if i % 2 else -1
        if i % 2 == 0:
            arr[i - 1, i - 1] = 1
            arr[i - 1, m + i - 1] = 1
    arr[m - 1, m - 1] = 1
    for j in range(1, 2 * k + 1):
        arr[m + j - 1, m - 1] = -1 if j % 2 else 1
        if j % 2:
            arr[m + j - 1, j - 1] = 1
            arr[m + j - 1, m + j - 1] = 1
    return IntMatrix(arr)


def t_block_decomposition(k: int) -> list[TBlock]:
    """The 2k T-blocks with E_k = I - (sum of blocks).

    Odd i <= 2k contributes T[i,i; m+i,m]; even i <= 2k contributes
    T[i,m; m+i,m+i], where m = 2k+1 is the central index.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    m = 2 * k + 1
    blocks = [TBlock(i, i, m + i, m) for i in range(1, 2 * k, 2)]
    blocks += [TBlock(i, m, m + i, m + i) for i in range(2, 2 * k + 1, 2)]
    return blocks


def even_index_permutation(q: Permutation, k: int) -> Permutation:
    """Lift a permutation of {1..2k} to {1..4k+1}, acting on the even indices 2, 4, ..., 4k."""
    if q.n > 2 * k:
        raise ValueError(f"permutation of size {q.n} does not fit 2k = {2 * k} even slots")
    imgs = list(range(1, 4 * k + 2))
    for i in range(1, q.n + 1):
        imgs[2 * i - 1] = 2 * q(i)
    return Permutation(tuple(imgs))


def check_theta(p: Permutation, k: int) -> None:
    if p.n != 4 * k + 1:
        raise ValueError(f"permutation must have size {4 * k + 1}, got {p.n}")
    moved = [i for i in range(1, p.n + 1, 2) if not p.fixes(i)]
    if moved:
        raise ValueError(f"permutation moves odd indices {moved}")


def theta_embed(p: Permutation, k: int) -> IntMatrix:
    """P·E_k for a permutation fixing every odd index."""
    check_theta(p, k)
    return multiply(permutation_matrix(p), build_E_k(k))


def theta_embed_framed(p: Permutation, k: int) -> FramedAsm:
    """P·E_k viewed as a frame around its 1x1 centre (the identity of size 1)."""
    m = 2 * k + 1
    return FramedAsm(theta_embed(p, k), FrameMeta(4 * k + 1, m, Permutation.identity(1), 1))


def build_symmetric_group_low_rank(n: int) -> tuple[IntMatrix, IntMatrix]:
    """Generators of S_n inside SA_(4k+1), k = ceil(n/2): cycle the first n even
    rows of E_k, and swap the first two (no swap when n == 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = math.ceil(n / 2)
    cyc = even_index_permutation(Permutation.cycle(n), k)
    swap = (even_index_permutation(Permutation.from_cycles(2, (1, 2)), k)
            if n > 1 else Permutation.identity(4 * k + 1))
    return theta_embed(cyc, k), theta_embed(swap, k)


def expand_center(a: FramedAsm, p: Permutation) -> FramedAsm:
    """Swap the central permutation block for ``p`` (any size).

    Frame rows and columns keep their entries; the frame column moves to the
    last column of the new block.
    """
    meta = a.frame_meta
    if meta is None:
        raise FrameError("expand_center needs frame metadata")
    old = a.asm.array
    q, q2 = meta.block.n, p.n
    s = meta.block_start - 1
    size = meta.outer_size - q + q2
    arr = np.zeros((size, size), dtype=np.int64)

    def new_index(i: int) -> int | None:
        # 0-based map for indices outside the old block
        if i < s:
            return i
        if i >= s + q:
            return i - q + q2
        return None

    fc_old = meta.frame_column - 1
    fc_new = s + q2 - 1
    for i in range(meta.outer_size):
        ni = new_index(i)
        if ni is None:
            continue
        for j in range(meta.outer_size):
            nj = new_index(j)
            if nj is not None:
                arr[ni, nj] = old[i, j]
        arr[ni, fc_new] = old[i, fc_old]
    arr[s:s + q2, s:s + q2] = permutation_matrix(p).array
    new_meta = FrameMeta(size, meta.block_start, p, q2)
    return FramedAsm(check_asm(IntMatrix(arr)), new_meta)


def reassemble(f: FramedAsm) -> IntMatrix:
    """Rebuild the matrix from its frame entries and central block."""
    if f.frame_meta is None:
        return f.asm
    return _assemble(f.asm.array, f.frame_meta)


def recognize_frame(a: IntMatrix) -> FramedAsm | None:
    """Recover frame metadata for matrices this module builds.

    Recognizes P·E_k (centre of size 1) and the bordered frames of
    ``build_frame``/``expand_center`` (block starting at index 3, frame column
    in the block's last column). Returns None otherwise.
    """
    n = a.n
    if n >= 5 and n % 4 == 1:
        k = (n - 1) // 4
        e = build_E_k(k).tolist()
        rows = a.tolist()
        if all(rows[i] == e[i] for i in range(0, n, 2)):
            where = {tuple(r): i + 1 for i, r in enumerate(e) if i % 2 == 1}
            imgs = list(range(1, n + 1))
            ok = True
            for i in range(1, n, 2):
                src = where.get(tuple(rows[i]))
                if src is None:
                    ok = False
                    break
                imgs[src - 1] = i + 1
            if ok:
                try:
                    return theta_embed_framed(Permutation(tuple(imgs)), k)
                except ValueError:
                    pass
    if n >= 5:
        arr = a.array
        block = arr[2:n - 2, 2:n - 2]
        if ((block == 0) | (block == 1)).all() and (block.sum(axis=0) == 1).all() \
                and (block.sum(axis=1) == 1).all():
            imgs = tuple(int(np.argmax(block[:, j])) + 1 for j in range(n - 4))
            for variant in ("A", "B"):
                cand = build_frame(Permutation(imgs), variant)
                if cand.asm == a:
                    return cand
    return None


def kronecker_group(g: SingularGroup, h: SingularGroup) -> SingularGroup:
    """{x ⊗ y : x in g, y in h}, a group isomorphic to g × h."""
    elems = [kronecker(x, y) for x in g.elements for y in h.elements]
    return group_from_elements(elems)
