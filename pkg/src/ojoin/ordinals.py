"""Natural-number arithmetic on sets of Grundy values: mex, the rho-th excluded
value, and nimber addition.

Only short games are handled, so every "ordinal" here is a natural number.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Iterator

# Fixed-width natural type: values must fit an unsigned 64-bit word.
MAX_VALUE = 2**64 - 1


class GrundySet:
    """An immutable finite set of naturals, stored sorted and deduplicated."""

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Iterable[int] = ()):
        vals = sorted(set(values))
        for v in vals:
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"Grundy values must be ints, got {v!r}")
        if vals and (vals[0] < 0 or vals[-1] > MAX_VALUE):
            raise ValueError(f"Grundy values must lie in [0, 2**64), got {vals[0]}..{vals[-1]}")
        self._values = tuple(vals)
        self._hash = hash(self._values)

    @classmethod
    def range(cls, n: int) -> "GrundySet":
        return cls(range(n))

    @property
    def values(self) -> tuple[int, ...]:
        return self._values

    def __iter__(self) -> Iterator[int]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, v: object) -> bool:
        if not isinstance(v, int):
            return False
        k = bisect_left(self._values, v)
        return k < len(self._values) and self._values[k] == v

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GrundySet):
            return self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __or__(self, other: "GrundySet") -> "GrundySet":
        return GrundySet(self._values + tuple(other))

    def __repr__(self) -> str:
        return "GrundySet({" + ", ".join(map(str, self._values)) + "})"

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self._values)) + "}"

    def max(self) -> int:
        return self._values[-1] if self._values else -1


def _as_sorted(s: Iterable[int]) -> tuple[int, ...]:
    if isinstance(s, GrundySet):
        return s.values
    return tuple(sorted(set(s)))


def mex(s: Iterable[int]) -> int:
    """Least natural number not in ``s``."""
    m = 0
    for v in _as_sorted(s):
        if v == m:
            m += 1
        elif v > m:
            break
    return m


def excluded(s: Iterable[int]) -> Iterator[int]:
    """Yield the naturals missing from ``s`` in increasing order (infinite)."""
    cand = 0
    for v in _as_sorted(s):
        while cand < v:
            yield cand
            cand += 1
        cand = v + 1
    while True:
        yield cand
        cand += 1


def ex(rho: int, s: Iterable[int]) -> int:
    """The ``rho``-th excluded value of ``s`` (counting from 0); ``ex(0, s) == mex(s)``.

    Walks the gaps of ``s`` instead of repeatedly taking mex of growing unions.
    """
    if rho < 0:
        raise ValueError("rho must be a natural number")
    cand = 0
    left = rho
    for v in _as_sorted(s):
        gap = v - cand
        if gap > left:
            return cand + left
        if gap > 0:
            left -= gap
        cand = max(cand, v + 1)
    return cand + left


def ex_table(s: Iterable[int], count: int) -> list[int]:
    """The first ``count`` excluded values of ``s``: ``[ex(0, s), ..., ex(count - 1, s)]``."""
    out: list[int] = []
    if count <= 0:
        return out
    for v in excluded(s):
        out.append(v)
        if len(out) == count:
            return out
    return out  # pragma: no cover - excluded() is infinite


def nim_add(a: int, b: int) -> int:
    """Nimber sum of two naturals (bitwise xor)."""
    return a ^ b
