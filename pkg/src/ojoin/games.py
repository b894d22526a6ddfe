"""Hash-consed storage of short impartial games.

A game is identified by the set of its options. Every game lives in a
:class:`GameStore` as an integer id; options are always interned before the
game that has them, so ids form a topological order of the option DAG and
the store can never contain a cycle.
"""

from __future__ import annotations

import threading
from typing import Callable, Hashable, Iterable, Sequence

GameId = int

EMPTY: GameId = 0


class UnknownGameError(KeyError):
    pass


class GameStore:
    """Append-only table of games, each a sorted tuple of option ids.

    Writes (interning) take a lock; reads are plain list lookups.
    """

    def __init__(self) -> None:
        self.options: list[tuple[GameId, ...]] = [()]
        self._index: dict[tuple[GameId, ...], GameId] = {(): EMPTY}
        self._heaps: list[GameId] = [EMPTY]
        self._dsum: dict[tuple[GameId, GameId], GameId] = {}
        self._osum: dict[tuple[GameId, GameId], GameId] = {}
        self._lock = threading.Lock()
        # per-store caches owned by other modules (grundy tables etc.)
        self.memo: dict[str, object] = {}

    def __len__(self) -> int:
        return len(self.options)

    def __contains__(self, g: object) -> bool:
        return isinstance(g, int) and 0 <= g < len(self.options)

    def check(self, g: GameId) -> GameId:
        if not (isinstance(g, int) and 0 <= g < len(self.options)):
            raise UnknownGameError(f"game id {g!r} is not in this store")
        return g

    def intern(self, options: Iterable[GameId]) -> GameId:
        """Id of the game with exactly these options (duplicates dropped)."""
        key = tuple(sorted(set(options)))
        found = self._index.get(key)
        if found is not None:
            return found
        n = len(self.options)
        for o in key:
            if not (isinstance(o, int) and 0 <= o < n):
                raise UnknownGameError(f"option id {o!r} is not in this store")
        with self._lock:
            found = self._index.get(key)
            if found is None:
                found = len(self.options)
                self.options.append(key)
                self._index[key] = found
        return found

    def _intern_sorted(self, key: tuple[GameId, ...]) -> GameId:
        # fast path for callers that already built a valid canonical key
        found = self._index.get(key)
        if found is None:
            with self._lock:
                found = self._index.get(key)
                if found is None:
                    found = len(self.options)
                    self.options.append(key)
                    self._index[key] = found
        return found

    def nim_heap(self, n: int) -> GameId:
        """The nim heap of size ``n``: options are heaps 0..n-1."""
        if n < 0:
            raise ValueError("heap size must be a natural number")
        heaps = self._heaps
        while len(heaps) <= n:
            heaps.append(self._intern_sorted(tuple(heaps)))
        return heaps[n]

    def heap_size(self, g: GameId) -> int | None:
        """``n`` if ``g`` is an already-built nim heap of size ``n``, else None."""
        opts = self.options[self.check(g)]
        n = len(opts)
        if n < len(self._heaps) and self._heaps[n] == g:
            return n
        return None

    def dsum(self, g: GameId, h: GameId) -> GameId:
        """Disjunctive sum: options g' + h and g + h'."""
        self.check(g)
        self.check(h)
        opts = self.options

        def children(key):
            a, b = key
            return [_pair(x, b) for x in opts[a]] + [_pair(a, y) for y in opts[b]]

        def leaf(key):
            a, b = key
            if a == EMPTY:
                return b
            if b == EMPTY:
                return a
            return None

        return _memo_build(self, self._dsum, _pair(g, h), children, leaf)

    def osum(self, g: GameId, h: GameId) -> GameId:
        """Ordinal sum g:h: options g:h' and g' (moving in g discards h)."""
        self.check(g)
        self.check(h)
        opts = self.options

        def children(key):
            a, b = key
            return [(a, y) for y in opts[b]]

        def leaf(key):
            return key[0] if key[1] == EMPTY else None

        def extra(key):
            return opts[key[0]]

        return _memo_build(self, self._osum, (g, h), children, leaf, extra)

    def size(self, g: GameId) -> int:
        """Number of distinct positions reachable from ``g`` (including ``g``)."""
        seen = {self.check(g)}
        stack = [g]
        opts = self.options
        while stack:
            for o in opts[stack.pop()]:
                if o not in seen:
                    seen.add(o)
                    stack.append(o)
        return len(seen)

    def reachable(self, g: GameId) -> list[GameId]:
        """Positions reachable from ``g`` in increasing id order."""
        seen = {self.check(g)}
        stack = [g]
        opts = self.options
        while stack:
            for o in opts[stack.pop()]:
                if o not in seen:
                    seen.add(o)
                    stack.append(o)
        return sorted(seen)


def _pair(a: GameId, b: GameId) -> tuple[GameId, GameId]:
    return (a, b) if a <= b else (b, a)


def _memo_build(
    store: GameStore,
    memo: dict,
    root: Hashable,
    children: Callable[[Hashable], Sequence[Hashable]],
    leaf: Callable[[Hashable], GameId | None],
    extra: Callable[[Hashable], Sequence[GameId]] | None = None,
) -> GameId:
    """Iterative memoised construction of a game defined by a recursion on keys.

    The game for ``key`` has options ``memo[c]`` for ``c in children(key)``
    plus the ready-made ids in ``extra(key)``.
    """
    r = leaf(root)
    if r is not None:
        return r
    if root in memo:
        return memo[root]
    stack = [root]
    pending: dict[Hashable, Sequence[Hashable]] = {}
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        kids = pending.get(key)
        if kids is None:
            kids = children(key)
            pending[key] = kids
        todo = False
        for c in kids:
            if c not in memo:
                v = leaf(c)
                if v is not None:
                    memo[c] = v
                else:
                    stack.append(c)
                    todo = True
        if todo:
            continue
        stack.pop()
        del pending[key]
        ids = [memo[c] for c in kids]
        if extra is not None:
            ids.extend(extra(key))
        memo[key] = store.intern(ids)
    return memo[root]
