"""Finite groups as multiplication tables.

Only used as carriers for the conjugation and core quandle constructors, so the
representation is deliberately plain: elements are ``0..n-1`` and
``mult[a][b]`` is the product ``a*b``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class InvalidGroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupTable:
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int
    name: str = ""

    @property
    def size(self) -> int:
        return len(self.mult)

    def __post_init__(self):
        n = len(self.mult)
        if n == 0:
            raise InvalidGroupError("empty group table")
        m = np.asarray(self.mult)
        if m.shape != (n, n) or m.min() < 0 or m.max() >= n:
            raise InvalidGroupError("multiplication table must be n x n with entries in 0..n-1")
        e = self.identity
        if not (0 <= e < n) or any(m[e, a] != a or m[a, e] != a for a in range(n)):
            raise InvalidGroupError(f"{e} is not a two-sided identity")
        if len(self.inv) != n:
            raise InvalidGroupError("inverse table has wrong length")
        for a in range(n):
            if m[a, self.inv[a]] != e or m[self.inv[a], a] != e:
                raise InvalidGroupError(f"inv[{a}] = {self.inv[a]} is not an inverse")
        # (ab)c == a(bc) over all triples
        lhs = m[m[:, :, None], np.arange(n)[None, None, :]]
        rhs = m[np.arange(n)[:, None, None], m[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b, c = (int(v) for v in bad[0])
            raise InvalidGroupError(f"not associative at ({a}, {b}, {c})")

    @classmethod
    def from_table(cls, mult: Sequence[Sequence[int]], name: str = "") -> "GroupTable":
        """Build from a bare multiplication table, deriving identity and inverses."""
        rows = tuple(tuple(int(v) for v in row) for row in mult)
        n = len(rows)
        ident = next((e for e in range(n) if all(rows[e][a] == a for a in range(n))), None)
        if ident is None:
            raise InvalidGroupError("no left identity")
        inv = []
        for a in range(n):
            b = next((b for b in range(n) if rows[a][b] == ident), None)
            if b is None:
                raise InvalidGroupError(f"{a} has no inverse")
            inv.append(b)
        return cls(rows, tuple(inv), ident, name)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.mult, dtype=np.int64)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # apply p first, then q
    return tuple(q[i] for i in p)


def group_from_permutations(gens: Sequence[Sequence[int]], name: str = "") -> GroupTable:
    """Close a set of permutations under composition and tabulate the result."""
    gens = [tuple(g) for g in gens]
    if not gens:
        raise InvalidGroupError("need at least one generator")
    degree = len(gens[0])
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = _compose(p, g)
            if q not in index:
                index[q] = len(elements)
                elements.append(q)
                queue.append(q)
    mult = [[index[_compose(p, q)] for q in elements] for p in elements]
    return GroupTable.from_table(mult, name)


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise InvalidGroupError("cyclic group order must be positive")
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    return GroupTable(tuple(map(tuple, mult)), tuple((-a) % n for a in range(n)), 0, f"Z{n}")


def symmetric_group(k: int) -> GroupTable:
    if k < 1:
        raise InvalidGroupError("degree must be positive")
    elements = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(elements)}
    mult = [[index[_compose(p, q)] for q in elements] for p in elements]
    return GroupTable.from_table(mult, f"S{k}")


def alternating_group(k: int) -> GroupTable:
    if k < 3:
        return GroupTable.from_table([[0]], f"A{k}")
    # 3-cycles (0 1 i) generate A_k
    gens = []
    for i in range(2, k):
        p = list(range(k))
        p[0], p[1], p[i] = 1, i, 0
        gens.append(tuple(p))
    return group_from_permutations(gens, f"A{k}")


def dihedral_group(n: int) -> GroupTable:
    """Symmetries of the regular n-gon, order 2n."""
    if n < 1:
        raise InvalidGroupError("n must be positive")
    if n == 1:
        return GroupTable.from_table(cyclic_group(2).mult, "D1")
    if n == 2:
        return GroupTable.from_table(direct_product(cyclic_group(2), cyclic_group(2)).mult, "D2")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_permutations([rot, ref], f"D{n}")


def quaternion_group() -> GroupTable:
    # left-regular action of Q8 on {1,i,j,k,-1,-i,-j,-k}; only the two generators are needed
    i_gen = (1, 4, 3, 6, 5, 0, 7, 2)
    j_gen = (2, 7, 4, 1, 6, 3, 0, 5)
    return group_from_permutations([i_gen, j_gen], "Q8")


def dicyclic12() -> GroupTable:
    # Z3 x| Z4: a = (0 1 2), b = (1 2)(3 4 5 6); b inverts a
    a = (1, 2, 0, 3, 4, 5, 6)
    b = (0, 2, 1, 4, 5, 6, 3)
    return group_from_permutations([a, b], "Dic3")


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    ng, nh = g.size, h.size
    mult = [
        [g.mult[a // nh][b // nh] * nh + h.mult[a % nh][b % nh] for b in range(ng * nh)]
        for a in range(ng * nh)
    ]
    return GroupTable.from_table(mult, f"{g.name}x{h.name}")


def small_groups(max_order: int = 12) -> list[GroupTable]:
    """One representative of every isomorphism class of groups of order <= 12."""
    out = [cyclic_group(n) for n in range(1, min(max_order, 12) + 1)]
    extra = [
        lambda: direct_product(cyclic_group(2), cyclic_group(2)),
        lambda: symmetric_group(3),
        lambda: direct_product(cyclic_group(4), cyclic_group(2)),
        lambda: direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2)),
        lambda: dihedral_group(4),
        quaternion_group,
        lambda: direct_product(cyclic_group(3), cyclic_group(3)),
        lambda: dihedral_group(5),
        lambda: direct_product(cyclic_group(2), cyclic_group(6)),
        lambda: alternating_group(4),
        lambda: dihedral_group(6),
        dicyclic12,
    ]
    for make in extra:
        grp = make()
        if grp.size <= max_order:
            out.append(grp)
    return out


_NAMED = {
    "S": symmetric_group,
    "A": alternating_group,
    "D": dihedral_group,
}


def group_by_name(name: str) -> GroupTable:
    """Parse names like ``Z6``, ``S3``, ``D4``, ``A4``, ``Q8``, ``Dic3``, ``Z2xZ2``."""
    name = name.strip()
    if "x" in name:
        parts = [group_by_name(p) for p in name.split("x")]
        grp = parts[0]
        for p in parts[1:]:
            grp = direct_product(grp, p)
        return grp
    if name == "Q8":
        return quaternion_group()
    if name == "Dic3":
        return dicyclic12()
    head, digits = name[:1], name[1:]
    if not digits.isdigit():
        raise InvalidGroupError(f"unknown group {name!r}")
    if head == "Z":
        return cyclic_group(int(digits))
    if head in _NAMED:
        return _NAMED[head](int(digits))
    raise InvalidGroupError(f"unknown group {name!r}")
