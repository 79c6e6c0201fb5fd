"""Exhaustive enumeration and classification of n x n ASMs.

Rows are generated one at a time against the column state (the set of
columns whose running sum is currently 1). A row is valid for a state when
its +1s sit in columns at 0 and its -1s in columns at 1; the row's own
entries alternate +,-,...,+ by construction. Every ASM is produced exactly
once, in lexicographic order of row choices.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterator

import numpy as np

from .asm import ReducedFormResult, batch_is_asm, negative_entry_count, reduced_form
from .constructions import build_E_k
from .matrix import IntMatrix, batch_determinant, multiply, rank_of_rows, transpose
from .order import (
    CAP_EXCEEDED,
    DEFAULT_ORDER_CAP,
    SingularGroup,
    asm_cyclic_order,
    fingerprint,
    group_from_elements,
)

log = logging.getLogger(__name__)

MAX_N = 8


class ResourceGuardError(RuntimeError):
    """Requested size is beyond what the exhaustive search supports."""


def _guard(n: int, limit: int = MAX_N) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > limit:
        raise ResourceGuardError(f"n = {n} exceeds the supported maximum {limit}")


@lru_cache(maxsize=None)
def asm_rows(n: int) -> tuple[tuple[tuple[int, ...], int, int], ...]:
    """All candidate rows as (row, plus_mask, minus_mask); bit j is column j."""
    out = []
    for size in range(1, n + 1, 2):
        for cols in itertools.combinations(range(n), size):
            row = [0] * n
            plus = minus = 0
            for t, c in enumerate(cols):
                if t % 2 == 0:
                    row[c] = 1
                    plus |= 1 << c
                else:
                    row[c] = -1
                    minus |= 1 << c
            out.append((tuple(row), plus, minus))
    out.sort(key=lambda r: r[0], reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def _transitions(n: int) -> dict[int, tuple[tuple[tuple[int, ...], int], ...]]:
    """state -> ((row, next_state), ...) for every column state."""
    rows = asm_rows(n)
    table = {}
    for state in range(1 << n):
        table[state] = tuple((r, state ^ plus ^ minus) for r, plus, minus in rows
                             if not plus & state and minus & state == minus)
    return table


def _extend(n: int, prefix: tuple[tuple[int, ...], ...], state: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    trans = _transitions(n)
    full = (1 << n) - 1
    depth = len(prefix)
    if depth == n:
        if state == full:
            yield prefix
        return
    if depth == n - 1:
        for row, nxt in trans[state]:
            if nxt == full:
                yield prefix + (row,)
        return
    for row, nxt in trans[state]:
        yield from _extend(n, prefix + (row,), nxt)


def _state_of(prefix: tuple[tuple[int, ...], ...], n: int) -> int | None:
    state = 0
    trans = _transitions(n)
    for row in prefix:
        for r, nxt in trans[state]:
            if r == row:
                state = nxt
                break
        else:
            return None
    return state


def enumerate_rows(n: int, prefix: tuple[tuple[int, ...], ...] = ()) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every n x n ASM (as a tuple of row tuples) extending ``prefix``."""
    state = _state_of(prefix, n)
    if state is None:
        return iter(())
    return _extend(n, tuple(prefix), state)


def enumerate_asms(n: int) -> Iterator[IntMatrix]:
    """Stream every n x n ASM exactly once."""
    _guard(n)
    for rows in enumerate_rows(n):
        yield IntMatrix._wrap(np.array(rows, dtype=np.int64))


def asm_count_formula(n: int) -> int:
    """prod_{k=0}^{n-1} (3k+1)! / (n+k)!, computed independently of the search."""
    num = den = 1
    for k in range(n):
        num *= factorial(3 * k + 1)
        den *= factorial(n + k)
    assert num % den == 0
    return num // den


def shards(n: int, depth: int = 2) -> list[tuple[tuple[int, ...], ...]]:
    """Row prefixes of length ``depth`` (capped at n - 1) that partition the search."""
    depth = max(0, min(depth, n - 1))
    out: list[tuple[tuple[int, ...], ...]] = []
    trans = _transitions(n)

    def walk(prefix, state):
        if len(prefix) == depth:
            out.append(prefix)
            return
        for row, nxt in trans[state]:
            walk(prefix + (row,), nxt)

    walk((), 0)
    return out


@dataclass
class _ShardResult:
    total: int = 0
    singular: int = 0
    finite: list = field(default_factory=list)  # (rows, order, identity rows)
    bounded: Counter = field(default_factory=Counter)


_CHUNK = 8192


def _classify_chunk(rows_list: list, cap: int, res: _ShardResult) -> None:
    stack = np.array(rows_list, dtype=np.int64)
    res.total += len(rows_list)
    singular = batch_determinant(stack) == 0
    res.singular += int(singular.sum())
    # <A> inside SA_n forces A^2 to be an ASM; this filter removes almost everything
    cand = np.flatnonzero(singular)
    sq_ok = batch_is_asm(np.matmul(stack[cand], stack[cand]))
    for i in cand[sq_ok]:
        m = IntMatrix._wrap(stack[i].copy())
        v = asm_cyclic_order(m, cap)
        if v.finite:
            res.finite.append((rows_list[i], v.order, tuple(map(tuple, v.identity.tolist()))))
        elif v.reason == CAP_EXCEEDED:
            res.bounded[v.reason] += 1


def _classify_shard(args) -> _ShardResult:
    n, prefix, cap = args
    res = _ShardResult()
    chunk = []
    for rows in enumerate_rows(n, prefix):
        chunk.append(rows)
        if len(chunk) == _CHUNK:
            _classify_chunk(chunk, cap, res)
            chunk = []
    if chunk:
        _classify_chunk(chunk, cap, res)
    return res


@dataclass(frozen=True)
class FiniteOrderAsm:
    matrix: IntMatrix
    order: int
    identity: IntMatrix

    @property
    def negatives(self) -> int:
        return negative_entry_count(self.matrix)


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    total_asm_count: int
    singular_count: int
    order_counts: dict[int, int]
    idempotents: tuple[IntMatrix, ...]
    finite_order: tuple[FiniteOrderAsm, ...]
    negative_stats: dict[int, dict[int, int]]  # order -> {negatives: count}
    bounded_verdicts: dict[str, int]             # undecided within the order cap
    order_cap: int = DEFAULT_ORDER_CAP

    @property
    def idempotent_count(self) -> int:
        return len(self.idempotents)

    @property
    def warnings(self) -> list[str]:
        return [f"{count} singular ASMs given bounded verdict '{reason}' (cap={self.order_cap})"
                for reason, count in sorted(self.bounded_verdicts.items())]

    def of_order(self, k: int) -> list[FiniteOrderAsm]:
        return [f for f in self.finite_order if f.order == k]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "total_asm_count": self.total_asm_count,
            "singular_count": self.singular_count,
            "order_counts": {str(k): v for k, v in sorted(self.order_counts.items())},
            "idempotent_count": self.idempotent_count,
            "negative_entry_stats": {
                str(k): {str(neg): c for neg, c in sorted(d.items())}
                for k, d in sorted(self.negative_stats.items())
            },
            "bounded_verdicts": dict(sorted(self.bounded_verdicts.items())),
            "order_cap": self.order_cap,
            "warnings": self.warnings,
        }


def default_jobs() -> int:
    return os.cpu_count() or 1


def classify(n: int, jobs: int | None = None, order_cap: int = DEFAULT_ORDER_CAP) -> ClassificationReport:
    """Count singular n x n ASMs of each finite order.

    An ASM is counted with order k when A^(k+1) == A and every power of A is
    an ASM, i.e. the cyclic group <A> lies in SA_n. Products of ASMs stay in
    a finite set, so every verdict is exact; only a walk longer than
    ``order_cap`` is left undecided and reported in ``bounded_verdicts``.
    """
    _guard(n)
    return _classify_cached(n, order_cap, jobs or default_jobs())


@lru_cache(maxsize=16)
def _classify_cached(n: int, cap: int, jobs: int) -> ClassificationReport:
    tasks = [(n, p, cap) for p in shards(n)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_classify_shard, tasks))
    else:
        parts = [_classify_shard(t) for t in tasks]

    total = sum(p.total for p in parts)
    singular = sum(p.singular for p in parts)
    bounded: Counter = Counter()
    finite = []
    for p in parts:
        bounded.update(p.bounded)
        for rows, k, ident in p.finite:
            finite.append(FiniteOrderAsm(IntMatrix(rows), k, IntMatrix(ident)))
    finite.sort(key=lambda f: (f.order, f.matrix.tolist()))
    counts = Counter(f.order for f in finite)
    negs: dict[int, Counter] = defaultdict(Counter)
    for f in finite:
        negs[f.order][f.negatives] += 1
    if bounded:
        log.warning("n=%d: %s singular ASMs undecided within cap %d", n, sum(bounded.values()), cap)
    return ClassificationReport(
        n=n,
        total_asm_count=total,
        singular_count=singular,
        order_counts=dict(sorted(counts.items())),
        idempotents=tuple(f.matrix for f in finite if f.order == 1),
        finite_order=tuple(finite),
        negative_stats={k: dict(sorted(v.items())) for k, v in sorted(negs.items())},
        bounded_verdicts=dict(bounded),
        order_cap=cap,
    )


@dataclass(frozen=True)
class CensusEntry:
    matrix: IntMatrix
    reduced: ReducedFormResult
    nullity: int


@dataclass(frozen=True)
class IdempotentCensus:
    n: int
    entries: tuple[CensusEntry, ...]
    violations: tuple[str, ...]  # entries contradicting "reduced form is E_1 or E_1^t, nullity 2"


def idempotent_census(n: int, jobs: int | None = None) -> IdempotentCensus:
    """Every idempotent singular n x n ASM with its reduced form and nullity."""
    report = classify(n, jobs)
    e1 = build_E_k(1)
    allowed = {e1, transpose(e1)}
    entries = []
    violations = []
    for m in report.idempotents:
        red = reduced_form(m)
        null = n - rank_of_rows(m.tolist())
        entries.append(CensusEntry(m, red, null))
        if n <= 7 and (red.reduced not in allowed or null != 2):
            violations.append(f"reduced form {red.reduced.tolist()} with nullity {null}")
    return IdempotentCensus(n, tuple(entries), tuple(violations))


def square_root_census(n: int, jobs: int | None = None) -> dict[IntMatrix, list[IntMatrix]]:
    """For each idempotent, the order-2 singular ASMs whose square it is."""
    _guard(n, 7)
    report = classify(n, jobs)
    roots: dict[IntMatrix, list[IntMatrix]] = {e: [] for e in report.idempotents}
    for f in report.of_order(2):
        roots.setdefault(multiply(f.matrix, f.matrix), []).append(f.matrix)
    return roots


@dataclass(frozen=True)
class Atlas:
    n: int
    groups: tuple[SingularGroup, ...]  # every group of finite-order singular ASMs
    maximal: tuple[bool, ...]

    def maximal_groups(self) -> list[SingularGroup]:
        return [g for g, m in zip(self.groups, self.maximal) if m]

    @property
    def max_order(self) -> int:
        return max((g.order for g in self.groups), default=0)


def _class_subgroups(elems: list[IntMatrix], table: list[list[int]], ident: int,
                     max_group_size: int) -> list[frozenset[int]]:
    """All subsets containing ``ident`` closed under the partial product table
    (entries of -1 mean the product leaves the class)."""
    m = len(elems)

    def close(start: frozenset[int]) -> frozenset[int] | None:
        found = set(start)
        frontier = list(start)
        while frontier:
            new = []
            for x in frontier:
                for y in list(found):
                    for z in (table[x][y], table[y][x]):
                        if z < 0:
                            return None
                        if z not in found:
                            found.add(z)
                            new.append(z)
                            if len(found) > max_group_size:
                                return None
            frontier = new
        return frozenset(found)

    groups: set[frozenset[int]] = set()
    todo = []
    for x in range(m):
        g = close(frozenset({ident, x}))
        if g is not None and g not in groups:
            groups.add(g)
            todo.append(g)
    while todo:
        g = todo.pop()
        for x in range(m):
            if x in g:
                continue
            h = close(g | {x})
            if h is not None and h not in groups:
                groups.add(h)
                todo.append(h)
    return sorted(groups, key=lambda s: (len(s), sorted(s)))


def group_atlas(n: int, max_group_size: int = 256, jobs: int | None = None) -> Atlas:
    """All groups of finite-order singular n x n ASMs, flagged when maximal.

    Finite-order ASMs are split by identity; inside a class, the products that
    stay in the class form a partial Cayley table, and groups are exactly the
    subsets containing the identity that are closed under it.
    """
    _guard(n, 7)
    report = classify(n, jobs)
    classes: dict[IntMatrix, list[IntMatrix]] = defaultdict(list)
    for f in report.finite_order:
        classes[f.identity].append(f.matrix)
    groups: list[SingularGroup] = []
    maximal: list[bool] = []
    for ident in sorted(classes):
        elems = sorted(classes[ident])
        index = {x.key(): i for i, x in enumerate(elems)}
        table = [[index.get(multiply(x, y).key(), -1) for y in elems] for x in elems]
        subs = _class_subgroups(elems, table, index[ident.key()], max_group_size)
        for s in subs:
            groups.append(group_from_elements([elems[i] for i in sorted(s)]))
            maximal.append(not any(s < t for t in subs))
    return Atlas(n, tuple(groups), tuple(maximal))


def atlas_summary(atlas: Atlas) -> dict:
    by_order: dict[int, Counter] = defaultdict(Counter)
    for g in atlas.groups:
        fp = fingerprint(g)
        by_order[g.order]["abelian" if fp.abelian else "non-abelian"] += 1
    return {str(k): dict(v) for k, v in sorted(by_order.items())}
