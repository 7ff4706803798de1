"""Finite racks and quandles stored as operation tables.

``table[a][b]`` is ``a ▷ b``, so the right multiplication ``R_b: a -> a ▷ b``
is column ``b`` of the table.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .groups import GroupTable
from .report import FiniteReport, VerificationReport

DEFAULT_ISO_BOUND = 16


class BoundExceededError(RuntimeError):
    """A search was refused because its input is larger than the configured bound."""


@dataclass(frozen=True)
class FiniteQuandle:
    table: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise ValueError("a quandle needs at least one element")
        for a, row in enumerate(self.table):
            if len(row) != n:
                raise ValueError(f"row {a} has length {len(row)}, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"entry {v} in row {a} is outside 0..{n - 1}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], label: str = "") -> "FiniteQuandle":
        return cls(tuple(tuple(int(v) for v in row) for row in rows), label)

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    def right_mul(self, b: int) -> tuple[int, ...]:
        """The column permutation ``a -> a ▷ b``."""
        return tuple(row[b] for row in self.table)

    def to_json(self) -> dict:
        return {"n": self.size, "table": [list(r) for r in self.table], "label": self.label}

    @classmethod
    def from_json(cls, data: dict | str) -> "FiniteQuandle":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n, table = int(data["n"]), data["table"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed quandle JSON: {exc}") from None
        if len(table) != n:
            raise ValueError(f"declared n={n} but table has {len(table)} rows")
        return cls.from_rows(table, data.get("label", ""))


@dataclass(frozen=True)
class PermGroupSummary:
    generators: tuple[tuple[int, ...], ...]
    order: int
    orbits: tuple[tuple[int, ...], ...]

    @property
    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(o) for o in self.orbits))


# -- constructors -----------------------------------------------------------


def make_trivial(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be at least 1")
    return FiniteQuandle(tuple(tuple(a for _ in range(n)) for a in range(n)), f"trivial({n})")


def make_dihedral(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = tuple(tuple((2 * j - i) % n for j in range(n)) for i in range(n))
    return FiniteQuandle(rows, f"dihedral({n})")


def make_alexander(n: int, t: int) -> FiniteQuandle:
    """Alexander quandle on Z_n with ``a ▷ b = t*a + (1-t)*b``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if math.gcd(t, n) != 1:
        raise ValueError(
            f"gcd({t}, {n}) != 1: multiplication by t is not invertible mod n, "
            "so right multiplications are not bijections"
        )
    rows = tuple(tuple((t * a + (1 - t) * b) % n for b in range(n)) for a in range(n))
    return FiniteQuandle(rows, f"alexander({n},{t})")


def make_conj(g: GroupTable) -> FiniteQuandle:
    m, inv = g.mult, g.inv
    rows = tuple(tuple(m[m[inv[b]][a]][b] for b in range(g.size)) for a in range(g.size))
    return FiniteQuandle(rows, f"conj({g.name})")


def make_core(g: GroupTable) -> FiniteQuandle:
    m, inv = g.mult, g.inv
    rows = tuple(tuple(m[m[b][inv[a]]][b] for b in range(g.size)) for a in range(g.size))
    return FiniteQuandle(rows, f"core({g.name})")


# -- axiom checks -----------------------------------------------------------


def _check_invertibility(t: np.ndarray) -> VerificationReport:
    n = len(t)
    bad_columns = 0
    witness = None
    for b in range(n):
        col = t[:, b]
        if len(np.unique(col)) != n:
            bad_columns += 1
            if witness is None:
                seen: dict[int, int] = {}
                for a, v in enumerate(col.tolist()):
                    if v in seen:
                        witness = (seen[v], a, b)
                        break
                    seen[v] = a
    return VerificationReport(
        axiom="right_invertibility",
        grid=f"exhaustive columns n={n}",
        max_residual=float(bad_columns),
        witness=witness,
        passed=bad_columns == 0,
    )


def _check_distributivity(t: np.ndarray) -> VerificationReport:
    n = len(t)
    cols = np.arange(n)
    lhs = t[t[:, :, None], cols[None, None, :]]  # (a▷b)▷c
    rhs = t[t[:, None, :], t[None, :, :]]  # (a▷c)▷(b▷c)
    bad = np.argwhere(lhs != rhs)
    witness = tuple(int(v) for v in bad[0]) if len(bad) else None
    return VerificationReport(
        axiom="self_distributivity",
        grid=f"exhaustive triples n={n}",
        max_residual=float(len(bad)),
        witness=witness,
        passed=not len(bad),
    )


def _check_idempotency(t: np.ndarray) -> VerificationReport:
    n = len(t)
    bad = np.flatnonzero(t[np.arange(n), np.arange(n)] != np.arange(n))
    return VerificationReport(
        axiom="idempotency",
        grid=f"exhaustive diagonal n={n}",
        max_residual=float(len(bad)),
        witness=(int(bad[0]),) if len(bad) else None,
        passed=not len(bad),
    )


def check_rack(q: FiniteQuandle) -> FiniteReport:
    t = q.as_array()
    return FiniteReport(q.label, q.size, (_check_invertibility(t), _check_distributivity(t)))


def check_quandle(q: FiniteQuandle) -> FiniteReport:
    t = q.as_array()
    return FiniteReport(
        q.label,
        q.size,
        (_check_idempotency(t), _check_invertibility(t), _check_distributivity(t)),
    )


# -- inner automorphism group -----------------------------------------------


def _orbits(n: int, gens: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gens:
        for a, b in enumerate(g):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    return tuple(tuple(v) for _, v in sorted(groups.items()))


def inner_group(q: FiniteQuandle, max_order: int = 1_000_000) -> PermGroupSummary:
    """Inn(q), generated by the right multiplications, with its orbits.

    The order is found by breadth-first closure, which is refused once more
    than ``max_order`` elements have been produced.
    """
    n = q.size
    gens = tuple(q.right_mul(b) for b in range(n))
    for b, g in enumerate(gens):
        if len(set(g)) != n:
            raise ValueError(f"right multiplication by {b} is not a bijection")
    distinct = sorted(set(gens))
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in distinct:
            r = tuple(g[i] for i in p)
            if r not in seen:
                seen.add(r)
                if len(seen) > max_order:
                    raise BoundExceededError(f"inner group has more than {max_order} elements")
                queue.append(r)
    return PermGroupSummary(gens, len(seen), _orbits(n, gens))


def is_connected(q: FiniteQuandle) -> bool:
    n = q.size
    gens = [q.right_mul(b) for b in range(n)]
    for b, g in enumerate(gens):
        if len(set(g)) != n:
            raise ValueError(f"right multiplication by {b} is not a bijection")
    return len(_orbits(n, gens)) == 1


# -- isomorphism ------------------------------------------------------------


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, a = 0, start
        while not seen[a]:
            seen[a] = True
            a = perm[a]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def _profiles(q: FiniteQuandle) -> list[tuple]:
    n = q.size
    t = q.table
    orbit_size = {}
    gens = [q.right_mul(b) for b in range(n)]
    if all(len(set(g)) == n for g in gens):
        for orb in _orbits(n, gens):
            for a in orb:
                orbit_size[a] = len(orb)
    out = []
    for a in range(n):
        col = gens[a]
        out.append(
            (
                orbit_size.get(a, 0),
                t[a][a] == a,
                sum(1 for b in range(n) if t[a][b] == a),
                sum(1 for b in range(n) if t[b][a] == b),
                len(set(t[a])),
                _cycle_type(col) if len(set(col)) == n else (),
            )
        )
    # second pass: fold in the profiles of row images so non-isomorphic
    # elements with equal local statistics still tend to separate
    return [(p, tuple(sorted(out[v] for v in t[a]))) for a, p in enumerate(out)]


def are_isomorphic(
    q1: FiniteQuandle, q2: FiniteQuandle, bound: int = DEFAULT_ISO_BOUND
) -> tuple[int, ...] | None:
    """Find ``phi`` with ``phi[a ▷ b] == phi[a] ▷ phi[b]``, or return ``None``.

    Raises :class:`BoundExceededError` if either quandle is larger than ``bound``.
    """
    if max(q1.size, q2.size) > bound:
        raise BoundExceededError(
            f"isomorphism search bound exceeded: sizes {q1.size}, {q2.size} > {bound}"
        )
    if q1.size != q2.size:
        return None
    n = q1.size
    p1, p2 = _profiles(q1), _profiles(q2)
    if sorted(p1) != sorted(p2):
        return None
    t1, t2 = q1.table, q2.table
    candidates = [[b for b in range(n) if p2[b] == p1[a]] for a in range(n)]

    def extend(phi: list[int], used: set[int], a: int, b: int) -> bool:
        # assign a -> b and everything it forces
        pending = deque([(a, b)])
        while pending:
            a, b = pending.popleft()
            if phi[a] != -1:
                if phi[a] != b:
                    return False
                continue
            if b in used or p1[a] != p2[b]:
                return False
            phi[a] = b
            used.add(b)
            for c in range(n):
                if phi[c] == -1:
                    continue
                for x, y in ((a, c), (c, a)):
                    target = t2[phi[x]][phi[y]]
                    src = t1[x][y]
                    if phi[src] == -1:
                        pending.append((src, target))
                    elif phi[src] != target:
                        return False
        return True

    def search(phi: list[int], used: set[int]) -> list[int] | None:
        free = [a for a in range(n) if phi[a] == -1]
        if not free:
            return phi
        a = min(free, key=lambda v: len(candidates[v]))
        for b in candidates[a]:
            if b in used:
                continue
            trial, trial_used = phi[:], set(used)
            if extend(trial, trial_used, a, b):
                found = search(trial, trial_used)
                if found is not None:
                    return found
        return None

    phi = search([-1] * n, set())
    if phi is None:
        return None
    for a in range(n):
        for b in range(n):
            if phi[t1[a][b]] != t2[phi[a]][phi[b]]:
                raise AssertionError("isomorphism search returned an invalid map")
    return tuple(phi)
