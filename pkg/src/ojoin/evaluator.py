"""Grundy-set algebra, substitution and reduction, and the decomposition-driven
evaluator for ordered joins.

The Grundy set of a join depends only on its shape and the Grundy sets of its
components, so :func:`evaluate` works on sets alone: antichain and chain nodes
of the modular decomposition fold closed-form sum rules, and indecomposable
quotients are expanded with canonical components.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .games import EMPTY, GameId, GameStore
from .grundy import grundy_number, grundy_set
from .join import DEFAULT_BUDGET, BudgetExceeded, JoinPosition, restrict_to_support, to_game
from .ordinals import GrundySet, ex_table, mex
from .poset import (
    ANTICHAIN,
    CHAIN,
    LEAF,
    PRIME,
    Involution,
    Label,
    MDTree,
    Poset,
    UnknownLabelError,
    bits,
    is_weakly_order_preserving,
    max_upper_set_within,
    modular_decompose,
)


class PreconditionError(ValueError):
    pass


def canonical_game(store: GameStore, gs: Iterable[int]) -> GameId:
    """The game whose options are the nim heaps named by ``gs``."""
    return store.intern(store.nim_heap(v) for v in GrundySet(gs))


def dsum_grundy_set(a: GrundySet, b: GrundySet) -> GrundySet:
    """Grundy set of G + H from the Grundy sets of G and H."""
    ma, mb = mex(a), mex(b)
    return GrundySet([x ^ mb for x in a] + [ma ^ y for y in b])


def osum_grundy_set(a: GrundySet, b: GrundySet) -> GrundySet:
    """Grundy set of G : H from the Grundy sets of G and H."""
    if not len(b):
        return a
    table = ex_table(a, b.max() + 1)
    return GrundySet(list(a) + [table[m] for m in b])


def replace_component(p: JoinPosition, label: Label, h: GameId) -> JoinPosition:
    i = p.shape.index(label)
    p.store.check(h)
    comps = list(p.components)
    comps[i] = h
    return JoinPosition(p.shape, tuple(comps), p.store)


def zero_upper_set(p: JoinPosition) -> frozenset:
    """Largest upper set of the shape whose components all have Grundy number 0."""
    zeros = {e for e, g in zip(p.shape.elements, p.components) if grundy_number(p.store, g) == 0}
    return max_upper_set_within(p.shape, zeros.__contains__)


def reduce_zero_upper(p: JoinPosition) -> JoinPosition:
    """Drop the largest upper set of Grundy-zero components (Grundy number kept)."""
    z = zero_upper_set(p)
    if not z:
        return p
    keep = [e for e in p.shape.elements if e not in z]
    return p.restrict(keep)


def check_symmetry(p: JoinPosition, sigma: Involution) -> None:
    """Raise :class:`PreconditionError` naming the first failed condition."""
    s = p.shape
    if len(sigma) != len(s):
        raise PreconditionError(f"involution acts on {len(sigma)} points but the shape has {len(s)} elements")
    if not is_weakly_order_preserving(s, sigma):
        raise PreconditionError(f"involution {sigma.describe(s)} is not weakly order-preserving on the shape")
    for i, j in enumerate(sigma.perm):
        if i < j:
            a = grundy_set(p.store, p.components[i])
            b = grundy_set(p.store, p.components[j])
            if a != b:
                raise PreconditionError(
                    f"components at {s.elements[i]!r} and {s.elements[j]!r} have different Grundy sets {a} and {b}"
                )
    fixed = sigma.fixed_mask()
    if s.lower_closure(fixed) != fixed:
        raise PreconditionError(f"fixed points {s.labels(fixed)} of {sigma.describe(s)} do not form a lower set")


def reduce_symmetry(p: JoinPosition, sigma: Involution) -> JoinPosition:
    """Restrict ``p`` to the fixed points of a symmetry (Grundy number kept).

    A fixed-point-free symmetry gives the empty join, i.e. a P-position.
    """
    check_symmetry(p, sigma)
    return p.restrict(sigma.fixed_points(p.shape))


@dataclass
class EvaluationStats:
    fast_path_nodes: int = 0
    indecomposable_nodes: int = 0
    quotient_sizes: list[int] = field(default_factory=list)
    positions_expanded: int = 0
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "fast_path_nodes": self.fast_path_nodes,
            "indecomposable_nodes": self.indecomposable_nodes,
            "quotient_sizes": list(self.quotient_sizes),
            "positions_expanded": self.positions_expanded,
            "seconds": self.seconds,
        }


@dataclass
class ShapeEvaluation:
    shape: Poset
    decomposition: MDTree
    leaf_inputs: dict[Label, GrundySet]
    result: GrundySet
    stats: EvaluationStats

    @property
    def grundy_number(self) -> int:
        return mex(self.result)


def evaluate(
    shape: Poset,
    leaf_sets: Mapping[Label, Iterable[int]],
    budget: int = DEFAULT_BUDGET,
    store: GameStore | None = None,
    decomposition: MDTree | None = None,
) -> ShapeEvaluation:
    """Grundy set of the join of canonical components with the given Grundy sets.

    Elements missing from ``leaf_sets`` get the empty set (the empty game).
    """
    if len(shape) == 0:
        raise ValueError("evaluate needs a nonempty shape")
    t0 = time.perf_counter()
    for e in leaf_sets:
        if e not in shape:
            raise UnknownLabelError(f"leaf set given for unknown element {e!r}")
    inputs = {e: GrundySet(leaf_sets.get(e, ())) for e in shape.elements}
    tree = decomposition if decomposition is not None else modular_decompose(shape)
    store = store if store is not None else GameStore()
    stats = EvaluationStats()
    results: dict[int, GrundySet] = {}
    order = list(tree.nodes())
    for t in reversed(order):
        if t.kind == LEAF:
            results[id(t)] = inputs[t.element]
            continue
        kids = [results.pop(id(c)) for c in t.children]
        if t.kind == ANTICHAIN:
            stats.fast_path_nodes += 1
            acc = kids[0]
            for k in kids[1:]:
                acc = dsum_grundy_set(acc, k)
        elif t.kind == CHAIN:
            stats.fast_path_nodes += 1
            acc = kids[0]
            for k in kids[1:]:
                acc = osum_grundy_set(acc, k)
        else:
            stats.indecomposable_nodes += 1
            q = t.quotient
            stats.quotient_sizes.append(len(q))
            comps = tuple(canonical_game(store, k) for k in kids)
            before = len(store)
            try:
                g = to_game(JoinPosition(q, comps, store), budget)
            except BudgetExceeded as exc:
                raise BudgetExceeded(
                    exc.budget, exc.positions, f"indecomposable quotient of size {len(q)}"
                ) from None
            stats.positions_expanded += len(store) - before
            acc = grundy_set(store, g)
        results[id(t)] = acc
    stats.seconds = time.perf_counter() - t0
    return ShapeEvaluation(shape, tree, inputs, results[id(tree)], stats)


def join_grundy_sets(p: JoinPosition) -> dict[Label, GrundySet]:
    return {e: grundy_set(p.store, g) for e, g in zip(p.shape.elements, p.components)}


def grundy_set_of_join(p: JoinPosition, budget: int = DEFAULT_BUDGET) -> GrundySet:
    """Grundy set of a join through the evaluator (no reduction applied)."""
    sub = restrict_to_support(p)
    if len(sub.shape) == 0:
        return GrundySet()
    return evaluate(sub.shape, join_grundy_sets(sub), budget).result


def grundy_of_join(p: JoinPosition, budget: int = DEFAULT_BUDGET) -> int:
    """Grundy number of a join: zero-upper-set reduction, then evaluation."""
    sub = restrict_to_support(reduce_zero_upper(p))
    if len(sub.shape) == 0:
        return 0
    return evaluate(sub.shape, join_grundy_sets(sub), budget).grundy_number


def naive_grundy_set(p: JoinPosition, budget: int = DEFAULT_BUDGET) -> GrundySet:
    """Grundy set by full expansion of the join."""
    return grundy_set(p.store, to_game(p, budget))
