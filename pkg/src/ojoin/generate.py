"""Random and exhaustive generators for games, posets and joins."""

from __future__ import annotations

import random
from typing import Iterator

from .games import EMPTY, GameId, GameStore
from .grundy import grundy_number, grundy_set
from .join import JoinPosition
from .ordinals import GrundySet
from .poset import Involution, Poset, bits, disjoint_sum, from_relations, ordinal_sum, weakly_op_involutions


def random_game(store: GameStore, rng: random.Random, max_positions: int = 8) -> GameId:
    """A random game with at most ``max_positions`` positions."""
    n = rng.randint(1, max_positions)
    nodes = [EMPTY]
    for _ in range(n - 1):
        k = rng.randint(1, min(3, len(nodes)))
        g = store.intern(rng.sample(nodes, k))
        if g not in nodes:
            nodes.append(g)
    return nodes[-1]


def random_pool(store: GameStore, rng: random.Random, size: int, max_positions: int = 8) -> list[GameId]:
    return [random_game(store, rng, max_positions) for _ in range(size)]


def random_grundy_set(rng: random.Random, max_value: int = 8, max_size: int = 4) -> GrundySet:
    k = rng.randint(0, min(max_size, max_value))
    return GrundySet(rng.sample(range(max_value), k))


def game_with_grundy_set(store: GameStore, rng: random.Random, target: GrundySet, pool: list[GameId] | None = None) -> GameId:
    """A random game whose Grundy set is ``target``.

    Each target value is realised by one or two options, drawn from ``pool``
    when it has a game of that Grundy number and a nim heap otherwise.
    """
    by_value: dict[int, list[GameId]] = {}
    for g in pool or ():
        by_value.setdefault(grundy_number(store, g), []).append(g)
    opts = []
    for v in target:
        for _ in range(rng.randint(1, 2)):
            cands = by_value.get(v)
            if cands and rng.random() < 0.8:
                opts.append(rng.choice(cands))
            elif rng.random() < 0.5 and v > 0:
                # v = a xor b realised as a sum of two heaps
                a = rng.randint(0, v)
                opts.append(store.dsum(store.nim_heap(a), store.nim_heap(a ^ v)))
            else:
                opts.append(store.nim_heap(v))
    g = store.intern(opts)
    assert grundy_set(store, g) == target
    return g


def game_with_grundy_number(store: GameStore, rng: random.Random, value: int, pool: list[GameId] | None = None) -> GameId:
    """A random game with Grundy number ``value``."""
    cands = [g for g in pool or () if grundy_number(store, g) == value]
    if cands and rng.random() < 0.7:
        return rng.choice(cands)
    extra = [v for v in range(value + 1, value + 4) if rng.random() < 0.4]
    return game_with_grundy_set(store, rng, GrundySet(list(range(value)) + extra), pool)


def random_poset(rng: random.Random, n: int, density: float | None = None) -> Poset:
    """Random poset on labels "1".."n" (closure of a random DAG, labels shuffled)."""
    density = rng.uniform(0.1, 0.6) if density is None else density
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(str(perm[i] + 1), str(perm[j] + 1)) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return from_relations([str(i + 1) for i in range(n)], pairs)


def random_series_parallel(rng: random.Random, n: int, labels: bool = True) -> Poset:
    """Random series-parallel poset on ``n`` elements built by random binary splits."""
    if n < 1:
        raise ValueError("need at least one element")
    counter = iter(range(n))

    def build(m: int) -> Poset:
        if m == 1:
            return Poset([next(counter)], [0], check=False)
        k = rng.randint(1, m - 1)
        a = build(k)
        b = build(m - k)
        return disjoint_sum(a, b) if rng.random() < 0.5 else ordinal_sum(a, b)

    p = build(n)
    return p.relabel(lambda i: str(i + 1)) if labels else p


def all_posets(n: int) -> Iterator[Poset]:
    """Every naturally labelled poset on n elements (i < j in the order implies
    i < j as integers). Each isomorphism class appears at least once."""
    def downsets(up: list[int], k: int) -> Iterator[int]:
        for m in range(1 << k):
            ok = True
            for i in bits(m):
                # every element below i must be in m
                for j in range(k):
                    if up[j] >> i & 1 and not m >> j & 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield m

    def rec(up: list[int], k: int) -> Iterator[list[int]]:
        if k == n:
            yield up
            return
        for d in downsets(up, k):
            nxt = [m | (1 << k) if d >> j & 1 else m for j, m in enumerate(up)] + [0]
            yield from rec(nxt, k + 1)

    labels = [str(i + 1) for i in range(n)]
    for up in rec([], 0):
        yield Poset(labels, up, check=False)


def random_join(
    store: GameStore,
    rng: random.Random,
    max_shape: int = 5,
    max_positions: int = 8,
    zero_bias: float = 0.0,
    shape: Poset | None = None,
) -> JoinPosition:
    """Random join; with probability ``zero_bias`` a component gets Grundy number 0."""
    if shape is None:
        shape = random_poset(rng, rng.randint(1, max_shape))
    comps = []
    for _ in shape.elements:
        if rng.random() < zero_bias:
            g = random_game(store, rng, max_positions)
            while grundy_number(store, g) != 0:
                g = random_game(store, rng, max_positions)
            comps.append(g)
        else:
            comps.append(random_game(store, rng, max_positions))
    return JoinPosition(shape, tuple(comps), store)


def random_symmetric_join(
    store: GameStore, rng: random.Random, max_shape: int = 6, max_positions: int = 7
) -> tuple[JoinPosition, Involution]:
    """A random join together with a symmetry the reduction accepts.

    The involution is weakly order-preserving, not the identity, and fixes a
    lower set; swapped elements carry games with equal Grundy sets.
    """
    while True:
        s = random_poset(rng, rng.randint(2, max_shape))
        usable = []
        for sig in weakly_op_involutions(s):
            fm = sig.fixed_mask()
            if not sig.is_identity() and s.lower_closure(fm) == fm:
                usable.append(sig)
        if usable:
            break
    sig = rng.choice(usable)
    comps: list[GameId | None] = [None] * len(s)
    for i, j in enumerate(sig.perm):
        if comps[i] is None:
            g = random_game(store, rng, max_positions)
            comps[i] = g
            if j != i:
                comps[j] = game_with_grundy_set(store, rng, grundy_set(store, g))
    return JoinPosition(s, tuple(comps), store), sig
