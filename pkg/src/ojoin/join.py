"""Ordered joins: a poset shape with one component game per element.

A move picks an element i and an option of its component; every component
strictly above i is replaced by the empty game. The shape never changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .games import EMPTY, GameId, GameStore
from .poset import Label, Poset, bits, modular_compose

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """Raised when expanding a join would intern more positions than allowed."""

    def __init__(self, budget: int, positions: int, detail: str = ""):
        self.budget = budget
        self.positions = positions
        msg = f"position budget of {budget} exceeded (at least {positions} positions)"
        if detail:
            msg += f"; {detail}"
        super().__init__(msg)


@dataclass(frozen=True)
class JoinPosition:
    """The join ``shape`` with ``components[i]`` at element index ``i``."""

    shape: Poset
    components: tuple[GameId, ...]
    store: GameStore

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != len(self.shape):
            raise ValueError(f"{len(comps)} components for a shape of {len(self.shape)} elements")
        for g in comps:
            self.store.check(g)

    @classmethod
    def from_mapping(cls, shape: Poset, components: Mapping[Label, GameId], store: GameStore) -> "JoinPosition":
        """Elements missing from ``components`` get the empty game."""
        for e in components:
            shape.index(e)
        return cls(shape, tuple(components.get(e, EMPTY) for e in shape.elements), store)

    def component(self, label: Label) -> GameId:
        return self.components[self.shape.index(label)]

    def as_dict(self) -> dict[Label, GameId]:
        return dict(zip(self.shape.elements, self.components))

    def restrict(self, labels: Iterable[Label]) -> "JoinPosition":
        mask = self.shape.mask(labels)
        return JoinPosition(
            self.shape.restrict_mask(mask),
            tuple(self.components[i] for i in bits(mask)),
            self.store,
        )

    def support_mask(self) -> int:
        return sum(1 << i for i, g in enumerate(self.components) if g != EMPTY)


def _iter_children(comps: tuple[GameId, ...], up: tuple[int, ...], opts: list) -> Iterator[tuple[GameId, ...]]:
    base = list(comps)
    for i, g in enumerate(comps):
        if g == EMPTY:
            continue
        cleared = base
        above = up[i]
        if above and any(comps[j] != EMPTY for j in bits(above)):
            cleared = base.copy()
            for j in bits(above):
                cleared[j] = EMPTY
        for o in opts[g]:
            v = cleared.copy()
            v[i] = o
            yield tuple(v)


def moves(p: JoinPosition) -> list[JoinPosition]:
    return [JoinPosition(p.shape, v, p.store) for v in _iter_children(p.components, p.shape.up, p.store.options)]


def support(p: JoinPosition) -> frozenset:
    return frozenset(e for e, g in zip(p.shape.elements, p.components) if g != EMPTY)


def restrict_to_support(p: JoinPosition) -> JoinPosition:
    mask = p.support_mask()
    return JoinPosition(p.shape.restrict_mask(mask), tuple(p.components[i] for i in bits(mask)), p.store)


def position_lower_bound(p: JoinPosition, cap: int | None = None) -> int:
    """A lower bound on the number of positions reachable from ``p``.

    Moves at the elements of an antichain never clear one another, so every
    combination of positions of those components is reachable. The bound is
    the larger product over the maximal and the minimal elements of the
    support. With ``cap`` the products stop growing once they pass it.
    """
    sup = p.support_mask()
    if not sup:
        return 1
    shape = p.shape
    best = 1
    for mask in (shape.up, shape.down):
        prod = 1
        for i in bits(sup):
            if not mask[i] & sup:
                prod *= p.store.size(p.components[i])
                if cap is not None and prod > cap:
                    break
        best = max(best, prod)
    return best


def to_game(p: JoinPosition, budget: int = DEFAULT_BUDGET) -> GameId:
    """Intern the whole game of ``p`` into its store.

    Positions are memoised on the component vector. Interning more than
    ``budget`` positions raises :class:`BudgetExceeded`; so does a join whose
    antichain lower bound already exceeds the budget, before any expansion.
    """
    store = p.store
    up = p.shape.up
    opts = store.options
    zero = (EMPTY,) * len(p.components)
    root = p.components
    if root == zero:
        return EMPTY
    lower = position_lower_bound(p, budget)
    if lower > budget:
        raise BudgetExceeded(
            budget, lower, f"an antichain of the shape alone yields more than {budget} positions"
        )
    memo: dict[tuple, GameId] = {zero: EMPTY}
    # frames: [position, lazy child iterator, ids of children done so far]
    stack = [(root, _iter_children(root, up, opts), [])]
    while stack:
        key, it, ids = stack[-1]
        pushed = False
        for c in it:
            g = memo.get(c)
            if g is None:
                stack.append((c, _iter_children(c, up, opts), []))
                pushed = True
                break
            ids.append(g)
        if pushed:
            continue
        stack.pop()
        g = memo[key] = store.intern(ids)
        if len(memo) > budget:
            raise BudgetExceeded(budget, len(memo), f"shape has {len(up)} elements")
        if stack:
            stack[-1][2].append(g)
    return memo[root]


def poset_game(s: Poset, store: GameStore) -> JoinPosition:
    """The join with a one-move game at every element (the poset game on ``s``)."""
    one = store.nim_heap(1)
    return JoinPosition(s, (one,) * len(s), store)


def flatten(r: Poset, inner: Mapping[Label, JoinPosition]) -> JoinPosition:
    """Collapse a join of joins into a single join on the composed shape.

    Element labels of the result are ``(outer, inner)`` pairs.
    """
    stores = {id(inner[e].store) for e in r.elements}
    if len(stores) != 1:
        raise ValueError("inner joins must share one store")
    shape = modular_compose(r, {e: inner[e].shape for e in r.elements})
    comps: list[GameId] = []
    for e in r.elements:
        comps.extend(inner[e].components)
    return JoinPosition(shape, tuple(comps), inner[r.elements[0]].store)
