"""Grundy numbers, Grundy sets, the k-fold hierarchy, and outcome classes.

Option ids are always smaller than the id of the game that has them, so every
table here is filled by a forward sweep over ids: no recursion, no stack.
"""

from __future__ import annotations

import enum
from typing import Iterable

from .games import EMPTY, GameId, GameStore
from .ordinals import GrundySet, ex, mex


class Outcome(enum.Enum):
    P = "P"  # previous player wins
    N = "N"  # next player wins

    def __str__(self) -> str:
        return self.value


def _g0_table(store: GameStore, upto: GameId) -> list[int]:
    table = store.memo.setdefault("g0", [])
    opts = store.options
    for g in range(len(table), upto + 1):
        seen = {table[o] for o in opts[g]}
        m = 0
        while m in seen:
            m += 1
        table.append(m)
    return table


def grundy_number(store: GameStore, g: GameId) -> int:
    store.check(g)
    return _g0_table(store, g)[g]


def grundy_numbers(store: GameStore, games: Iterable[GameId]) -> list[int]:
    games = list(games)
    if not games:
        return []
    table = _g0_table(store, max(games))
    return [table[g] for g in games]


def grundy_set(store: GameStore, g: GameId) -> GrundySet:
    """Set of Grundy numbers of the options of ``g``."""
    store.check(g)
    table = _g0_table(store, g)
    return GrundySet(table[o] for o in store.options[g])


def outcome(store: GameStore, g: GameId) -> Outcome:
    return Outcome.P if grundy_number(store, g) == 0 else Outcome.N


def equivalent(store: GameStore, g: GameId, h: GameId, k: int) -> bool:
    """``g`` and ``h`` are k-equivalent."""
    if k == 0:
        return grundy_number(store, g) == grundy_number(store, h)
    if k == 1:
        return grundy_set(store, g) == grundy_set(store, h)
    return grundy_k(store, g, k) == grundy_k(store, h, k)


class GrundyValue:
    """A hash-consed depth-k Grundy value.

    Depth 0 holds a natural; depth k >= 1 holds a frozenset of depth k-1 values.
    """

    __slots__ = ("depth", "payload", "_hash")

    def __init__(self, depth: int, payload):
        self.depth = depth
        self.payload = payload
        self._hash = hash((depth, payload))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, GrundyValue):
            return NotImplemented
        return self._hash == other._hash and self.depth == other.depth and self.payload == other.payload

    def project(self, depth: int = 0) -> "GrundyValue | int":
        """The depth-``depth`` value of the same game (an int for depth 0)."""
        v = self._project(depth)
        return v.payload if depth == 0 else v

    def _project(self, depth: int) -> "GrundyValue":
        if depth > self.depth:
            raise ValueError("cannot project to a greater depth")
        if depth == self.depth:
            return self
        if depth == 0:
            return GrundyValue(0, mex(m._project(0).payload for m in self.payload))
        return GrundyValue(depth, frozenset(m._project(depth - 1) for m in self.payload))

    def sort_key(self):
        if self.depth == 0:
            return self.payload
        return tuple(sorted(m.sort_key() for m in self.payload))

    def to_json(self):
        """Nested sorted lists (an int at depth 0)."""
        if self.depth == 0:
            return self.payload
        return [m.to_json() for m in sorted(self.payload, key=GrundyValue.sort_key)]

    def __repr__(self) -> str:
        if self.depth == 0:
            return str(self.payload)
        inner = ", ".join(repr(m) for m in sorted(self.payload, key=GrundyValue.sort_key))
        return "{" + inner + "}"


def grundy_k(store: GameStore, g: GameId, k: int) -> GrundyValue:
    """Depth-k Grundy value: depth 0 is the Grundy number, depth k is the set
    of depth k-1 values of the options."""
    if k < 0:
        raise ValueError("k must be a natural number")
    store.check(g)
    tables = store.memo.setdefault("gk", {})
    intern = store.memo.setdefault("gk_intern", {})

    def make(depth, payload):
        v = GrundyValue(depth, payload)
        return intern.setdefault(v, v)

    g0 = _g0_table(store, g)
    t0 = tables.setdefault(0, [])
    for x in range(len(t0), g + 1):
        t0.append(make(0, g0[x]))
    opts = store.options
    for depth in range(1, k + 1):
        prev = tables[depth - 1]
        cur = tables.setdefault(depth, [])
        for x in range(len(cur), g + 1):
            cur.append(make(depth, frozenset(prev[o] for o in opts[x])))
    return tables[k][g]


def context_grundy(store: GameStore, g: GameId, lam: int, rho: int) -> int:
    """Grundy number of heap(lam) + (g : heap(rho)) by the closed formula."""
    return lam ^ ex(rho, grundy_set(store, g))


def context_game(store: GameStore, g: GameId, lam: int, rho: int) -> GameId:
    """The game heap(lam) + (g : heap(rho)), built explicitly."""
    return store.dsum(store.nim_heap(lam), store.osum(g, store.nim_heap(rho)))


def distinguish_by_context(store: GameStore, g: GameId, h: GameId, bound: int) -> tuple[int, int] | None:
    """Find (lam, rho) <= bound whose context heap(lam) + (x : heap(rho)) has
    different outcomes for x = g and x = h.

    Scans pairs by increasing lam + rho. Returns None when the Grundy sets
    agree or no witness exists within ``bound``.
    """
    a = grundy_set(store, g)
    b = grundy_set(store, h)
    if a == b:
        return None
    for total in range(2 * bound + 1):
        for lam in range(max(0, total - bound), min(total, bound) + 1):
            rho = total - lam
            if (lam == ex(rho, a)) != (lam == ex(rho, b)):
                return lam, rho
    return None


def oracle_grundy(store: GameStore, g: GameId) -> int:
    """Grundy number by a separate depth-first expansion with its own memo.

    Shares nothing with :func:`grundy_number` except the option table and mex.
    """
    store.check(g)
    opts = store.options
    memo: dict[GameId, int] = {EMPTY: 0}
    stack = [g]
    while stack:
        x = stack[-1]
        if x in memo:
            stack.pop()
            continue
        missing = [o for o in opts[x] if o not in memo]
        if missing:
            stack.extend(missing)
            continue
        stack.pop()
        memo[x] = mex(memo[o] for o in opts[x])
    return memo[g]
