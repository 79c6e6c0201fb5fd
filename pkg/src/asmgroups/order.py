"""Finite multiplicative order, singular groups and their invariants.

A square matrix A has finite order k when k is the least integer >= 1 with
A^(k+1) == A; then A^k is an idempotent acting as identity on <A>.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .asm import is_asm
from .matrix import (
    DimensionError,
    IntMatrix,
    Permutation,
    multiply,
    permutation_matrix,
    rank,
    rank_of_rows,
    transpose,
)

DEFAULT_ORDER_CAP = 64
DEFAULT_MAGNITUDE_BOUND = 10**9
DEFAULT_CLOSURE_MAX = 256

REPEAT_NOT_AT_A = "repeat-not-at-A"
MAGNITUDE_EXCEEDED = "magnitude-exceeded"
CAP_EXCEEDED = "cap-exceeded"
POWER_NOT_ASM = "power-not-asm"


@dataclass(frozen=True)
class FiniteOrderInfo:
    order: int
    identity: IntMatrix
    rank: int
    nullity: int
    powers: tuple[IntMatrix, ...]  # A, A^2, ..., A^order

    finite = True


@dataclass(frozen=True)
class NoFiniteOrder:
    """Why no finite order was found.

    ``repeat-not-at-A`` proves A has no finite order; ``power-not-asm`` proves
    <A> leaves the ASMs; the cap and magnitude verdicts are relative to bounds.
    """

    reason: str
    iterations: int

    finite = False

    @property
    def proven(self) -> bool:
        return self.reason == REPEAT_NOT_AT_A


OrderVerdict = FiniteOrderInfo | NoFiniteOrder


def detect_order(a: IntMatrix, cap: int = DEFAULT_ORDER_CAP,
                 magnitude_bound: int = DEFAULT_MAGNITUDE_BOUND) -> OrderVerdict:
    """Walk A, A^2, ... until the sequence returns to A, repeats elsewhere,
    grows past ``magnitude_bound`` or runs ``cap`` multiplications."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if a.max_abs() > magnitude_bound:
        return NoFiniteOrder(MAGNITUDE_EXCEEDED, 0)
    start = a.key()
    seen = {start}
    powers = [a]
    cur = a
    for i in range(1, cap + 1):
        cur = multiply(cur, a)  # A^(i+1)
        k = cur.key()
        if k == start:
            ident = powers[-1]
            r = rank(a)
            return FiniteOrderInfo(i, ident, r, a.n - r, tuple(powers))
        if k in seen:
            return NoFiniteOrder(REPEAT_NOT_AT_A, i)
        if cur.max_abs() > magnitude_bound:
            return NoFiniteOrder(MAGNITUDE_EXCEEDED, i)
        seen.add(k)
        powers.append(cur)
    return NoFiniteOrder(CAP_EXCEEDED, cap)


def asm_cyclic_order(a: IntMatrix, cap: int = DEFAULT_ORDER_CAP) -> OrderVerdict:
    """Order of ``a`` when every power of ``a`` is an ASM.

    This is the sense in which an ASM "has finite order in SA_n": the cyclic
    group it generates lies inside SA_n. Powers that stay ASMs range over a
    finite set, so without the cap the walk always ends in one of the exact
    outcomes (return to ``a``, a repeat elsewhere, or a power that is not an
    ASM).
    """
    if not is_asm(a):
        return NoFiniteOrder(POWER_NOT_ASM, 0)
    start = a.key()
    seen = {start}
    powers = [a]
    cur = a
    for i in range(1, cap + 1):
        cur = multiply(cur, a)
        k = cur.key()
        if k == start:
            r = rank(a)
            return FiniteOrderInfo(i, powers[-1], r, a.n - r, tuple(powers))
        if k in seen:
            return NoFiniteOrder(REPEAT_NOT_AT_A, i)
        if not is_asm(cur):
            return NoFiniteOrder(POWER_NOT_ASM, i)
        seen.add(k)
        powers.append(cur)
    return NoFiniteOrder(CAP_EXCEEDED, cap)


def is_idempotent(a: IntMatrix) -> bool:
    return multiply(a, a) == a


def nullity(a: IntMatrix) -> int:
    return a.n - rank(a)


def same_rowspace(a: IntMatrix, b: IntMatrix) -> bool:
    """Exact comparison of rational row spaces: equal iff stacking adds no rank."""
    if a.n != b.n:
        raise DimensionError(f"size mismatch: {a.n} vs {b.n}")
    ra, rb = rank(a), rank(b)
    if ra != rb:
        return False
    return rank_of_rows(a.tolist() + b.tolist()) == ra


def same_columnspace(a: IntMatrix, b: IntMatrix) -> bool:
    return same_rowspace(transpose(a), transpose(b))


class GroupError(ValueError):
    """Closure did not produce a group."""


class ClosureTooLarge(GroupError):
    pass


@dataclass(frozen=True)
class SingularGroup:
    """A finite multiplicative group of matrices with its Cayley table.

    ``elements[0]`` is the identity; the rest are in ascending entry order.
    ``cayley[i][j]`` is the index of ``elements[i] @ elements[j]``.
    """

    elements: tuple[IntMatrix, ...]
    cayley: tuple[tuple[int, ...], ...]
    generator_indices: tuple[int, ...] = ()
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity_matrix(self) -> IntMatrix:
        return self.elements[self.identity]

    def index(self, m: IntMatrix) -> int:
        return self.elements.index(m)

    def __contains__(self, m: IntMatrix) -> bool:
        return m in self.elements

    def element_order(self, i: int) -> int:
        """Order of element i inside the group, read from the Cayley table."""
        k, x = 1, i
        while x != self.identity:
            x = self.cayley[x][i]
            k += 1
        return k

    def inverse(self, i: int) -> int:
        row = self.cayley[i]
        return row.index(self.identity)

    def all_asm(self) -> bool:
        return all(is_asm(x) for x in self.elements)

    def keys(self) -> frozenset:
        return frozenset(x.key() for x in self.elements)


def group_from_elements(elements: Iterable[IntMatrix],
                        generators: Sequence[IntMatrix] = ()) -> SingularGroup:
    """Build a SingularGroup from a multiplicatively closed finite set.

    Raises GroupError when the set is not closed, lacks a two-sided identity
    or has an element without an inverse.
    """
    elems = list(dict.fromkeys(elements))
    index = {x.key(): i for i, x in enumerate(elems)}
    m = len(elems)
    table = [[0] * m for _ in range(m)]
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            p = multiply(x, y).key()
            if p not in index:
                raise GroupError("set is not closed under multiplication")
            table[i][j] = index[p]
    idents = [e for e in range(m)
              if all(table[e][j] == j and table[j][e] == j for j in range(m))]
    if not idents:
        raise GroupError("no two-sided identity")
    e = idents[0]
    for i in range(m):
        if e not in table[i]:
            raise GroupError(f"element {i} has no inverse")
    order = [e] + sorted((i for i in range(m) if i != e), key=lambda i: elems[i].tolist())
    pos = {old: new for new, old in enumerate(order)}
    cayley = tuple(tuple(pos[table[old_i][old_j]] for old_j in order) for old_i in order)
    new_elems = tuple(elems[i] for i in order)
    gens = tuple(sorted({pos[index[g.key()]] for g in generators}))
    return SingularGroup(new_elems, cayley, gens, 0)


def closure(generators: Sequence[IntMatrix], max_size: int = DEFAULT_CLOSURE_MAX) -> SingularGroup:
    """Breadth-first product closure of ``generators``, checked to be a group."""
    if not generators:
        raise ValueError("closure needs at least one generator")
    n = generators[0].n
    if any(g.n != n for g in generators):
        raise DimensionError("generators differ in size")
    found: dict = {}
    queue: deque[IntMatrix] = deque()
    for g in generators:
        if g.key() not in found:
            found[g.key()] = g
            queue.append(g)
    while queue:
        x = queue.popleft()
        for g in generators:
            y = multiply(x, g)
            k = y.key()
            if k not in found:
                if len(found) >= max_size:
                    raise ClosureTooLarge(f"closure exceeds {max_size} elements")
                found[k] = y
                queue.append(y)
    return group_from_elements(found.values(), generators)


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    element_order_histogram: dict[int, int] = field(hash=False)
    center_size: int

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "element_order_histogram": {str(k): v for k, v in sorted(self.element_order_histogram.items())},
            "center_size": self.center_size,
        }


def fingerprint_table(cayley: Sequence[Sequence[int]], identity: int = 0) -> GroupFingerprint:
    m = len(cayley)
    hist: Counter[int] = Counter()
    for i in range(m):
        k, x = 1, i
        while x != identity:
            x = cayley[x][i]
            k += 1
        hist[k] += 1
    center = [i for i in range(m) if all(cayley[i][j] == cayley[j][i] for j in range(m))]
    return GroupFingerprint(m, len(center) == m, dict(sorted(hist.items())), len(center))


def fingerprint(g: SingularGroup) -> GroupFingerprint:
    return fingerprint_table(g.cayley, g.identity)


def lift_to_linear_group(g: SingularGroup) -> tuple[IntMatrix, ...]:
    """{X + (I - E)}: nonsingular matrices multiplying exactly like g."""
    t = IntMatrix.identity(g.identity_matrix.n) - g.identity_matrix
    return tuple(x + t for x in g.elements)


def induced_table(elements: Sequence[IntMatrix]) -> tuple[tuple[int, ...], ...] | None:
    """Cayley table of a list of matrices, or None when it is not closed."""
    index = {x.key(): i for i, x in enumerate(elements)}
    rows = []
    for x in elements:
        row = []
        for y in elements:
            k = multiply(x, y).key()
            if k not in index:
                return None
            row.append(index[k])
        rows.append(tuple(row))
    return tuple(rows)


def permutation_closure(gens: Sequence[Permutation]) -> list[Permutation]:
    n = gens[0].n
    ident = Permutation.identity(n)
    seen = {ident: None}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = p.compose(g)
            if q not in seen:
                seen[q] = None
                queue.append(q)
    return list(seen)


@dataclass(frozen=True)
class OrbitElement:
    permutation: Permutation
    product: IntMatrix
    is_asm: bool
    same_rowspace_as_e: bool


@dataclass(frozen=True)
class IdempotentOrbit:
    elements: tuple[OrbitElement, ...]  # one per permutation in <phi>
    products: tuple[IntMatrix, ...]     # distinct products E·H

    @property
    def all_asm(self) -> bool:
        return all(e.is_asm for e in self.elements)

    @property
    def all_rowspace_preserving(self) -> bool:
        return all(e.same_rowspace_as_e for e in self.elements)


def idempotent_orbit(e: IntMatrix, phi: Sequence[Permutation]) -> IdempotentOrbit:
    """E·H for every H in the permutation group generated by ``phi``."""
    if any(p.n != e.n for p in phi):
        raise DimensionError("permutation size differs from the idempotent")
    perms = permutation_closure(list(phi) or [Permutation.identity(e.n)])
    out = []
    for p in perms:
        prod = multiply(e, permutation_matrix(p))
        out.append(OrbitElement(p, prod, is_asm(prod), same_rowspace(prod, e)))
    products = tuple(dict.fromkeys(o.product for o in out))
    return IdempotentOrbit(tuple(out), products)
