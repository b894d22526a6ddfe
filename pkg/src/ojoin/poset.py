"""Finite posets, involutions, modular composition and modular decomposition.

A :class:`Poset` stores, for each element index ``i``, a bitmask ``up[i]`` of
the indices strictly above ``i`` (and ``down[i]`` for those strictly below).
Labels are usually strings; any hashable works for library use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Label = Hashable


class PosetError(ValueError):
    pass


class CycleError(PosetError):
    pass


class DuplicateLabelError(PosetError):
    pass


class UnknownLabelError(PosetError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class EmptyChildError(PosetError):
    pass


class NotAnInvolutionError(PosetError):
    pass


class SizeLimitError(PosetError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """Finite strict partial order on labelled elements."""

    __slots__ = ("elements", "up", "down", "_index")

    def __init__(
        self,
        elements: Sequence[Label],
        up: Sequence[int],
        check: bool = True,
        down: Sequence[int] | None = None,
    ):
        self.elements = tuple(elements)
        self.up = tuple(up)
        n = len(self.elements)
        if len(self.up) != n:
            raise PosetError("one up-mask per element required")
        self._index = {}
        for i, e in enumerate(self.elements):
            if e in self._index:
                raise DuplicateLabelError(f"duplicate element label {e!r}")
            self._index[e] = i
        if down is None:
            down = [0] * n
            for i, m in enumerate(self.up):
                for j in bits(m):
                    down[j] |= 1 << i
        self.down = tuple(down)
        if check:
            self.validate()

    def validate(self) -> None:
        n = len(self.elements)
        full = (1 << n) - 1
        for i, m in enumerate(self.up):
            if m & ~full:
                raise PosetError(f"relation of {self.elements[i]!r} refers outside the poset")
            if m >> i & 1:
                raise CycleError(f"{self.elements[i]!r} < {self.elements[i]!r}: order is not irreflexive")
            if m & self.down[i]:
                j = next(bits(m & self.down[i]))
                raise CycleError(f"{self.elements[i]!r} and {self.elements[j]!r} are mutually below each other")
            for j in bits(m):
                if self.up[j] & ~m:
                    raise PosetError(f"order is not transitive above {self.elements[i]!r}")

    # construction helpers

    @classmethod
    def antichain(cls, n: int, labels: Sequence[Label] | None = None) -> "Poset":
        labels = labels if labels is not None else [str(i + 1) for i in range(n)]
        return cls(labels, [0] * n, check=False)

    @classmethod
    def chain(cls, n: int, labels: Sequence[Label] | None = None) -> "Poset":
        labels = labels if labels is not None else [str(i + 1) for i in range(n)]
        full = (1 << n) - 1
        return cls(labels, [full & ~((1 << (i + 1)) - 1) for i in range(n)], check=False)

    # queries

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[Label]) -> int:
        m = 0
        for e in labels:
            m |= 1 << self.index(e)
        return m

    def labels(self, mask: int) -> list[Label]:
        return [self.elements[i] for i in bits(mask)]

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def lt(self, a: Label, b: Label) -> bool:
        return bool(self.up[self.index(a)] >> self.index(b) & 1)

    def comparable(self, a: Label, b: Label) -> bool:
        return self.lt(a, b) or self.lt(b, a)

    def relations(self) -> list[tuple[Label, Label]]:
        """All pairs (a, b) with a < b."""
        return [(self.elements[i], self.elements[j]) for i, m in enumerate(self.up) for j in bits(m)]

    def covers(self) -> list[tuple[Label, Label]]:
        """Covering pairs (a, b): a < b with nothing strictly between."""
        out = []
        for i, m in enumerate(self.up):
            between = 0
            for j in bits(m):
                between |= self.up[j]
            for j in bits(m & ~between):
                out.append((self.elements[i], self.elements[j]))
        return out

    def matrix(self) -> list[list[bool]]:
        n = len(self.elements)
        return [[bool(self.up[i] >> j & 1) for j in range(n)] for i in range(n)]

    def upper_closure(self, mask: int) -> int:
        out = mask
        for i in bits(mask):
            out |= self.up[i]
        return out

    def lower_closure(self, mask: int) -> int:
        out = mask
        for i in bits(mask):
            out |= self.down[i]
        return out

    def is_upper_set(self, labels: Iterable[Label]) -> bool:
        m = self.mask(labels)
        return self.upper_closure(m) == m

    def is_lower_set(self, labels: Iterable[Label]) -> bool:
        m = self.mask(labels)
        return self.lower_closure(m) == m

    def maximal(self, mask: int | None = None) -> list[Label]:
        mask = self.full if mask is None else mask
        return [self.elements[i] for i in bits(mask) if not self.up[i] & mask]

    def restrict_mask(self, mask: int) -> "Poset":
        idx = list(bits(mask))
        pos = {i: k for k, i in enumerate(idx)}
        up = []
        for i in idx:
            m = 0
            for j in bits(self.up[i] & mask):
                m |= 1 << pos[j]
            up.append(m)
        return Poset([self.elements[i] for i in idx], up, check=False)

    def restrict(self, labels: Iterable[Label]) -> "Poset":
        """Induced subposet on ``labels``, keeping this poset's element order."""
        return self.restrict_mask(self.mask(labels))

    def relabel(self, mapping: Mapping[Label, Label] | Callable[[Label], Label]) -> "Poset":
        f = mapping if callable(mapping) else mapping.__getitem__
        return Poset([f(e) for e in self.elements], self.up, check=False, down=self.down)

    def reorder(self, labels: Sequence[Label]) -> "Poset":
        """Same order with elements listed in the order ``labels``."""
        if len(labels) != len(self.elements) or set(labels) != set(self.elements):
            raise PosetError("reorder needs a permutation of the elements")
        pos = [self.index(e) for e in labels]
        inv = {old: new for new, old in enumerate(pos)}
        up = []
        for old in pos:
            m = 0
            for j in bits(self.up[old]):
                m |= 1 << inv[j]
            up.append(m)
        return Poset(labels, up, check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        if self.elements == other.elements:
            return self.up == other.up
        if len(self.elements) != len(other.elements) or set(self.elements) != set(other.elements):
            return False
        return self.reorder(other.elements).up == other.up

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), sum(popcount(m) for m in self.up)))

    def __repr__(self) -> str:
        rel = ", ".join(f"{a}<{b}" for a, b in self.covers())
        return f"Poset([{', '.join(map(str, self.elements))}]; {rel})"

    def to_json(self) -> dict:
        """Poset JSON with covering relations (closure recovers the order)."""
        return {"elements": list(self.elements), "relations": [list(p) for p in self.covers()]}


def from_relations(elements: Sequence[Label], pairs: Iterable[tuple[Label, Label]]) -> Poset:
    """Poset generated by ``pairs`` (a, b) meaning a < b; takes the transitive closure."""
    elements = list(elements)
    index: dict[Label, int] = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateLabelError(f"duplicate element label {e!r}")
        index[e] = i
    n = len(elements)
    succ: list[set[int]] = [set() for _ in range(n)]
    for a, b in pairs:
        if a not in index:
            raise UnknownLabelError(f"unknown element {a!r} in relation ({a!r}, {b!r})")
        if b not in index:
            raise UnknownLabelError(f"unknown element {b!r} in relation ({a!r}, {b!r})")
        if a == b:
            raise CycleError(f"relation ({a!r}, {a!r}) is a cycle")
        succ[index[a]].add(index[b])
    indeg = [0] * n
    for s in succ:
        for j in s:
            indeg[j] += 1
    order = [i for i in range(n) if indeg[i] == 0]
    k = 0
    while k < len(order):
        i = order[k]
        k += 1
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                order.append(j)
    if len(order) < n:
        stuck = sorted(elements[i] for i in range(n) if indeg[i] > 0)
        raise CycleError(f"relations contain a cycle through {stuck}")
    up = [0] * n
    for i in reversed(order):
        m = 0
        for j in succ[i]:
            m |= (1 << j) | up[j]
        up[i] = m
    return Poset(elements, up)


def max_upper_set_within(s: Poset, keep: Callable[[Label], bool]) -> frozenset:
    """Largest upper set all of whose members satisfy ``keep``."""
    k = 0
    for i, e in enumerate(s.elements):
        if keep(e):
            k |= 1 << i
    z = 0
    for i in bits(k):
        if not s.up[i] & ~k:
            z |= 1 << i
    return frozenset(s.labels(z))


# involutions


@dataclass(frozen=True)
class Involution:
    """An involution of element indices: ``perm[perm[i]] == i``."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(self.perm)
        object.__setattr__(self, "perm", perm)
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise NotAnInvolutionError(f"{perm} is not a permutation of 0..{n - 1}")
        for i, j in enumerate(perm):
            if perm[j] != i:
                raise NotAnInvolutionError(f"{perm} is not an involution: {i} -> {j} -> {perm[j]}")

    @classmethod
    def identity(cls, n: int) -> "Involution":
        return cls(tuple(range(n)))

    @classmethod
    def from_mapping(cls, s: Poset, mapping: Mapping[Label, Label]) -> "Involution":
        """Labels not mentioned are fixed; each given pair is made symmetric."""
        perm = list(range(len(s)))
        seen: dict[int, int] = {}
        for a, b in mapping.items():
            i, j = s.index(a), s.index(b)
            for x, y in ((i, j), (j, i)):
                if seen.get(x, y) != y:
                    raise NotAnInvolutionError(f"{s.elements[x]!r} is mapped to two different elements")
                seen[x] = y
        for x, y in seen.items():
            perm[x] = y
        return cls(tuple(perm))

    @classmethod
    def parse(cls, s: Poset, text: str) -> "Involution":
        """Parse ``"1:3,2:4"`` (label pairs) into an involution of ``s``."""
        mapping: dict[str, str] = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ":" not in part:
                raise NotAnInvolutionError(f"bad involution pair {part!r}; expected a:b")
            a, b = (x.strip() for x in part.split(":", 1))
            if a in mapping:
                raise NotAnInvolutionError(f"{a!r} is mapped twice")
            mapping[a] = b
        return cls.from_mapping(s, mapping)

    def __len__(self) -> int:
        return len(self.perm)

    def apply_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.perm[i]
        return out

    def fixed_mask(self) -> int:
        return sum(1 << i for i, j in enumerate(self.perm) if i == j)

    def fixed_points(self, s: Poset) -> list[Label]:
        return s.labels(self.fixed_mask())

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def cycles(self, s: Poset) -> list[tuple[Label, Label]]:
        return [(s.elements[i], s.elements[j]) for i, j in enumerate(self.perm) if i < j]

    def describe(self, s: Poset) -> str:
        cyc = self.cycles(s)
        return "".join(f"({a} {b})" for a, b in cyc) if cyc else "id"


def _check_size(s: Poset, sigma: Involution) -> None:
    if len(sigma) != len(s):
        raise NotAnInvolutionError(f"involution acts on {len(sigma)} points but the poset has {len(s)}")


def is_weakly_order_preserving(s: Poset, sigma: Involution) -> bool:
    """Every set {j : i < j or sigma(i) < j} is mapped onto itself by sigma."""
    _check_size(s, sigma)
    for i in range(len(s)):
        u = s.up[i] | s.up[sigma.perm[i]]
        if sigma.apply_mask(u) != u:
            return False
    return True


def is_order_preserving(s: Poset, sigma: Involution) -> bool:
    _check_size(s, sigma)
    return all(sigma.apply_mask(s.up[i]) == s.up[sigma.perm[i]] for i in range(len(s)))


def involutions(n: int) -> Iterator[Involution]:
    """All involutions of 0..n-1."""
    perm = list(range(n))

    def rec(i: int) -> Iterator[Involution]:
        while i < n and perm[i] != i:
            i += 1
        if i >= n:
            yield Involution(tuple(perm))
            return
        yield from rec(i + 1)
        for j in range(i + 1, n):
            if perm[j] == j:
                perm[i], perm[j] = j, i
                yield from rec(i + 1)
                perm[i], perm[j] = i, j

    yield from rec(0)


ENUMERATION_LIMIT = 10


def weakly_op_involutions(s: Poset, limit: int = ENUMERATION_LIMIT) -> list[Involution]:
    if len(s) > limit:
        raise SizeLimitError(f"poset has {len(s)} elements; involution enumeration is limited to {limit}")
    return [sig for sig in involutions(len(s)) if is_weakly_order_preserving(s, sig)]


# modular composition


def modular_compose(r: Poset, children: Mapping[Label, Poset], flatten_labels: bool = False) -> Poset:
    """Replace each element i of ``r`` by the poset ``children[i]``.

    Labels of the result are ``(i, child_label)`` pairs, or the child labels
    themselves when ``flatten_labels`` is set (they must then be distinct).
    """
    offsets = []
    blocks = []
    off = 0
    for e in r.elements:
        if e not in children:
            raise EmptyChildError(f"no child poset for element {e!r}")
        c = children[e]
        if len(c) == 0:
            raise EmptyChildError(f"child poset for element {e!r} is empty")
        offsets.append(off)
        blocks.append(((1 << len(c)) - 1) << off)
        off += len(c)
    above = []
    below = []
    for i in range(len(r)):
        a = b = 0
        for j in bits(r.up[i]):
            a |= blocks[j]
        for j in bits(r.down[i]):
            b |= blocks[j]
        above.append(a)
        below.append(b)
    labels: list[Label] = []
    up: list[int] = []
    down: list[int] = []
    for i, e in enumerate(r.elements):
        c = children[e]
        for k, ce in enumerate(c.elements):
            labels.append(ce if flatten_labels else (e, ce))
            up.append((c.up[k] << offsets[i]) | above[i])
            down.append((c.down[k] << offsets[i]) | below[i])
    return Poset(labels, up, check=False, down=down)


def disjoint_sum(a: Poset, b: Poset) -> Poset:
    return modular_compose(Poset.antichain(2, ["a", "b"]), {"a": a, "b": b}, flatten_labels=True)


def ordinal_sum(a: Poset, b: Poset) -> Poset:
    """``a`` entirely below ``b``."""
    return modular_compose(Poset.chain(2, ["a", "b"]), {"a": a, "b": b}, flatten_labels=True)


# modular decomposition

LEAF = "leaf"
ANTICHAIN = "antichain"
CHAIN = "chain"
PRIME = "indecomposable"


@dataclass(frozen=True, eq=False)
class MDTree:
    """Node of a modular decomposition tree.

    ``chain`` children are listed bottom to top. An ``indecomposable`` node
    carries its quotient poset, whose elements are labelled by the first
    leaf of each child, in child order.
    """

    kind: str
    children: tuple["MDTree", ...] = ()
    element: Label = None
    quotient: Poset | None = None
    size: int = field(default=1)

    def leaves(self) -> list[Label]:
        out = []
        stack = [self]
        while stack:
            t = stack.pop()
            if t.kind == LEAF:
                out.append(t.element)
            else:
                stack.extend(reversed(t.children))
        return out

    def nodes(self) -> Iterator["MDTree"]:
        stack = [self]
        while stack:
            t = stack.pop()
            yield t
            stack.extend(reversed(t.children))

    def is_series_parallel(self) -> bool:
        return all(t.kind != PRIME for t in self.nodes())

    def structure(self):
        """Hashable shape of the tree, with leaf labels."""
        if self.kind == LEAF:
            return self.element
        return (self.kind, tuple(c.structure() for c in self.children))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MDTree):
            return NotImplemented
        return self.structure() == other.structure() and self._quotients() == other._quotients()

    def __hash__(self) -> int:
        return hash(self.structure())

    def _quotients(self):
        return [t.quotient for t in self.nodes() if t.kind == PRIME]

    def to_poset(self) -> Poset:
        """Recompose the tree into a poset labelled by its leaves."""
        leaves = self.leaves()
        pos = {e: i for i, e in enumerate(leaves)}
        up = [0] * len(leaves)
        masks: dict[int, int] = {}
        post = list(self.nodes())
        for t in reversed(post):
            if t.kind == LEAF:
                masks[id(t)] = 1 << pos[t.element]
                continue
            cm = [masks[id(c)] for c in t.children]
            masks[id(t)] = sum(cm)
            if t.kind == CHAIN:
                above = 0
                for m in reversed(cm):
                    for i in bits(m):
                        up[i] |= above
                    above |= m
            elif t.kind == PRIME:
                q = t.quotient
                for a in range(len(q)):
                    above = 0
                    for b in bits(q.up[a]):
                        above |= cm[b]
                    for i in bits(cm[a]):
                        up[i] |= above
        return Poset(leaves, up, check=False)

    def to_json(self) -> dict:
        if self.kind == LEAF:
            return {"kind": LEAF, "element": self.element}
        out = {"kind": self.kind, "children": [c.to_json() for c in self.children]}
        if self.kind == PRIME:
            out["quotient"] = self.quotient.to_json()
        return out

    def render(self, indent: str = "") -> str:
        lines: list[str] = []
        stack = [(self, indent)]
        while stack:
            t, ind = stack.pop()
            if t.kind == LEAF:
                lines.append(f"{ind}{t.element}")
                continue
            head = f"{ind}{t.kind} ({t.size})"
            if t.kind == PRIME:
                head += f" quotient {t.quotient!r}"
            lines.append(head)
            stack.extend((c, ind + "  ") for c in reversed(t.children))
        return "\n".join(lines)


def _components(x: int, neighbours: Callable[[int], int]) -> list[int]:
    out = []
    rest = x
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            nb = 0
            for i in bits(frontier):
                nb |= neighbours(i)
            frontier = nb & ~comp
            comp |= frontier
        out.append(comp)
        rest &= ~comp
    return out


def module_closure(s: Poset, seed: int, within: int | None = None) -> int:
    """Smallest module of ``s`` restricted to ``within`` that contains ``seed``."""
    within = s.full if within is None else within
    m = seed
    changed = True
    while changed:
        changed = False
        for z in bits(within & ~m):
            u = s.up[z] & m
            d = s.down[z] & m
            if u != m and d != m and (u | d):
                m |= 1 << z
                changed = True
    return m


def is_module(s: Poset, mask: int, within: int | None = None) -> bool:
    return module_closure(s, mask, within) == mask


def _prime_parts(s: Poset, x: int) -> list[int]:
    parts = []
    rest = x
    while rest:
        low = rest & -rest
        part = low
        for y in bits(rest & ~low):
            if part >> y & 1:
                continue
            c = module_closure(s, low | (1 << y), x)
            if c != x:
                part |= c
        parts.append(part)
        rest &= ~part
    return parts


def modular_decompose(s: Poset) -> MDTree:
    """Canonical modular decomposition tree of a nonempty poset."""
    n = len(s)
    if n == 0:
        raise PosetError("cannot decompose the empty poset")
    comp = [s.up[i] | s.down[i] for i in range(n)]
    # records: [mask, kind, child record ids, quotient]
    recs: list[list] = [[s.full, None, [], None]]
    k = 0
    while k < len(recs):
        rec = recs[k]
        k += 1
        x = rec[0]
        if x & (x - 1) == 0:
            rec[1] = LEAF
            continue
        parts = _components(x, lambda i: comp[i] & x)
        if len(parts) > 1:
            rec[1] = ANTICHAIN
        else:
            parts = _components(x, lambda i: x & ~comp[i] & ~(1 << i))
            if len(parts) > 1:
                rec[1] = CHAIN
                parts.sort(key=lambda m: popcount(s.down[(m & -m).bit_length() - 1] & x))
            else:
                rec[1] = PRIME
                parts = _prime_parts(s, x)
                parts.sort(key=lambda m: m & -m)
                reps = [(m & -m).bit_length() - 1 for m in parts]
                rep_pos = {r: a for a, r in enumerate(reps)}
                qup = []
                for r in reps:
                    q = 0
                    for j in bits(s.up[r]):
                        if j in rep_pos:
                            q |= 1 << rep_pos[j]
                    qup.append(q)
                rec[3] = qup
        for m in parts:
            rec[2].append(len(recs))
            recs.append([m, None, [], None])
    built: list[MDTree | None] = [None] * len(recs)
    for r in range(len(recs) - 1, -1, -1):
        mask, kind, kids, quotient = recs[r]
        if kind == LEAF:
            built[r] = MDTree(LEAF, element=s.elements[mask.bit_length() - 1])
        else:
            children = tuple(built[c] for c in kids)
            if kind == PRIME:
                # label quotient elements by the first leaf of each child
                quotient = Poset([c.leaves()[0] for c in children], quotient, check=False)
            built[r] = MDTree(kind, children, quotient=quotient, size=popcount(mask))
    return built[0]
