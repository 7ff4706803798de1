"""Braid words acting on tuples of quandle elements, and their fixed points.

The generator ``s_i`` sends ``(.., x_i, x_{i+1}, ..)`` to
``(.., x_{i+1}, x_i ▷ x_{i+1}, ..)``; ``-i`` is its inverse. Letters are applied
left to right. Self-distributivity is exactly what makes this respect the
braid relations, and invertibility of every ``R_b`` makes it a bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .finite import BoundExceededError, FiniteQuandle

DEFAULT_ENUMERATION_BOUND = 10**7
DEFAULT_TUPLE_DISPLAY_LIMIT = 1000
_CHUNK = 1 << 18


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid needs at least 2 strands")
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise ValueError(f"letter {letter} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        """Parse ``"1,-2,1"``; an empty string is the identity braid."""
        text = text.strip()
        try:
            letters = tuple(int(t) for t in text.split(",")) if text else ()
        except ValueError:
            raise ValueError(f"braid word must be comma-separated integers, got {text!r}") from None
        return cls(strands, letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-l for l in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError("cannot concatenate braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def conjugate(self, alpha: "BraidWord") -> "BraidWord":
        """alpha · self · alpha⁻¹"""
        return alpha * self * alpha.inverse()

    def stabilize(self, sign: int = 1) -> "BraidWord":
        """Add a strand and append the generator joining it, with the given sign."""
        return BraidWord(self.strands + 1, self.letters + (sign * self.strands,))

    def __str__(self) -> str:
        return ",".join(str(l) for l in self.letters)


@dataclass(frozen=True)
class FixedPointSet:
    count: int
    tuples: tuple[tuple[int, ...], ...] | None

    def to_json(self, limit: int = DEFAULT_TUPLE_DISPLAY_LIMIT) -> dict:
        out: dict = {"count": self.count}
        if self.tuples is not None and self.count <= limit:
            out["tuples"] = [list(t) for t in self.tuples]
        return out


def _inverse_table(table: np.ndarray) -> np.ndarray:
    # inv[c, b] = the unique a with a ▷ b = c
    n = len(table)
    inv = np.empty_like(table)
    for b in range(n):
        col = table[:, b]
        if len(np.unique(col)) != n:
            raise ValueError(f"right multiplication by {b} is not a bijection; no braid action")
        inv[col, b] = np.arange(n)
    return inv


def _act_arrays(table: np.ndarray, inv: np.ndarray, letters: Iterable[int], xs: np.ndarray) -> np.ndarray:
    xs = xs.copy()
    for letter in letters:
        i = abs(letter) - 1
        left, right = xs[:, i].copy(), xs[:, i + 1].copy()
        if letter > 0:
            xs[:, i] = right
            xs[:, i + 1] = table[left, right]
        else:
            # undo (a, b) -> (b, a ▷ b): from (u, v) recover a = R_u^{-1}(v), b = u
            xs[:, i] = inv[right, left]
            xs[:, i + 1] = left
    return xs


def act(q, w: BraidWord, x: Sequence):
    """Apply the braid word to one tuple.

    ``q`` is a :class:`FiniteQuandle` or any continuum spec exposing
    ``op`` and ``rmul_inv``.
    """
    if len(x) != w.strands:
        raise ValueError(f"tuple has {len(x)} entries, braid has {w.strands} strands")
    if isinstance(q, FiniteQuandle):
        for v in x:
            if not (isinstance(v, (int, np.integer)) and 0 <= v < q.size):
                raise ValueError(f"entry {v!r} is not an element of the quandle")
        table = q.as_array()
        out = _act_arrays(table, _inverse_table(table), w.letters, np.asarray([x], dtype=np.int64))
        return tuple(int(v) for v in out[0])
    xs = list(x)
    for letter in w.letters:
        i = abs(letter) - 1
        a, b = xs[i], xs[i + 1]
        if letter > 0:
            xs[i], xs[i + 1] = b, q.op(a, b)
        else:
            xs[i], xs[i + 1] = q.rmul_inv(b, a), a
    return tuple(xs)


def fixed_points(
    q: FiniteQuandle,
    w: BraidWord,
    bound: int = DEFAULT_ENUMERATION_BOUND,
    keep_tuples: bool = True,
) -> FixedPointSet:
    """All tuples fixed by ``w``, in lexicographic order.

    The whole carrier^strands space is enumerated; anything larger than
    ``bound`` is refused rather than truncated.
    """
    if not isinstance(q, FiniteQuandle):
        raise TypeError("fixed points can only be enumerated over a finite quandle")
    n, k = q.size, w.strands
    total = n**k
    if total > bound:
        raise BoundExceededError(f"{n}^{k} = {total} tuples exceeds the enumeration bound {bound}")
    table = q.as_array()
    inv = _inverse_table(table)
    powers = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
    count = 0
    found = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        xs = (idx[:, None] // powers[None, :]) % n
        ys = _act_arrays(table, inv, w.letters, xs)
        fixed = np.all(xs == ys, axis=1)
        count += int(fixed.sum())
        if keep_tuples:
            found.extend(tuple(int(v) for v in row) for row in xs[fixed])
    return FixedPointSet(count, tuple(found) if keep_tuples else None)

