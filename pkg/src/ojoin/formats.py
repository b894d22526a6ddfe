"""JSON formats for games, posets, joins and leaf Grundy sets.

Game document::

    {"defs": {"name": GAME, ...}, "root": "name"}

where GAME is ``{"heap": n}``, ``{"sum": [ref, ...]}``, ``{"ordinal": [ref, ref]}``
or ``{"options": [ref, ...]}`` and a ref is a def name or an inline GAME. A bare
GAME is accepted as a document too.

Poset document: ``{"elements": [...], "relations": [[a, b], ...]}`` (a < b,
transitive closure taken). Join document: ``{"shape": POSET, "components":
{label: ref}}`` with optional top-level ``"defs"``; missing components are empty.
Evaluate document: ``{"shape": POSET, "leaf_sets": {label: [n, ...]}}``.
"""

from __future__ import annotations

import json
from typing import Any

from .games import EMPTY, GameId, GameStore
from .join import JoinPosition
from .ordinals import GrundySet
from .poset import Poset, PosetError, from_relations


class ParseError(ValueError):
    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None


def _natural(v: Any, path: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ParseError(f"expected a natural number, got {v!r}", path)
    return v


class GameBuilder:
    """Resolves game refs against a table of named definitions."""

    def __init__(self, store: GameStore, defs: dict | None = None, path: str = "defs"):
        if defs is not None and not isinstance(defs, dict):
            raise ParseError("expected an object of named games", path)
        self.store = store
        self.defs = defs or {}
        self.defs_path = path
        self._done: dict[str, GameId] = {}
        self._active: list[str] = []

    def ref(self, ref: Any, path: str) -> GameId:
        if isinstance(ref, str):
            return self.named(ref, path)
        if isinstance(ref, dict):
            return self.game(ref, path)
        raise ParseError(f"expected a game name or game object, got {ref!r}", path)

    def named(self, name: str, path: str) -> GameId:
        if name in self._done:
            return self._done[name]
        if name not in self.defs:
            raise ParseError(f"unknown game {name!r}", path)
        if name in self._active:
            cycle = " -> ".join(self._active[self._active.index(name):] + [name])
            raise ParseError(f"cyclic game definition {cycle}", path)
        self._active.append(name)
        g = self.game(self.defs[name], f"{self.defs_path}.{name}")
        self._active.pop()
        self._done[name] = g
        return g

    def game(self, obj: Any, path: str) -> GameId:
        if not isinstance(obj, dict) or len(obj) != 1:
            raise ParseError(f"a game must be an object with exactly one of heap/sum/ordinal/options, got {obj!r}", path)
        (kind, arg), = obj.items()
        st = self.store
        if kind == "heap":
            return st.nim_heap(_natural(arg, f"{path}.heap"))
        if kind not in ("sum", "ordinal", "options"):
            raise ParseError(f"unknown game kind {kind!r}", path)
        if not isinstance(arg, list):
            raise ParseError("expected a list of game refs", f"{path}.{kind}")
        parts = [self.ref(r, f"{path}.{kind}[{k}]") for k, r in enumerate(arg)]
        if kind == "options":
            return st.intern(parts)
        if kind == "sum":
            acc = EMPTY
            for g in parts:
                acc = st.dsum(acc, g)
            return acc
        if len(parts) != 2:
            raise ParseError(f"ordinal takes exactly two games, got {len(parts)}", f"{path}.ordinal")
        return st.osum(parts[0], parts[1])


def parse_game(doc: Any, store: GameStore) -> GameId:
    if isinstance(doc, dict) and "root" in doc:
        b = GameBuilder(store, doc.get("defs"))
        return b.ref(doc["root"], "root")
    return GameBuilder(store).game(doc, "$")


def parse_poset(doc: Any, path: str = "$") -> Poset:
    if not isinstance(doc, dict) or "elements" not in doc:
        raise ParseError("a poset must be an object with 'elements' and 'relations'", path)
    elements = doc["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ParseError("elements must be a list of strings", f"{path}.elements")
    rels = doc.get("relations", [])
    if not isinstance(rels, list):
        raise ParseError("relations must be a list of pairs", f"{path}.relations")
    pairs = []
    for k, r in enumerate(rels):
        if not (isinstance(r, list) and len(r) == 2 and all(isinstance(x, str) for x in r)):
            raise ParseError(f"expected a pair of labels, got {r!r}", f"{path}.relations[{k}]")
        pairs.append((r[0], r[1]))
    try:
        return from_relations(elements, pairs)
    except PosetError as exc:
        raise ParseError(str(exc), path) from None


def parse_join(doc: Any, store: GameStore) -> JoinPosition:
    if not isinstance(doc, dict) or "shape" not in doc:
        raise ParseError("a join must be an object with 'shape' and 'components'", "$")
    shape = parse_poset(doc["shape"], "shape")
    comps = doc.get("components", {})
    if not isinstance(comps, dict):
        raise ParseError("components must map element labels to games", "components")
    b = GameBuilder(store, doc.get("defs"))
    mapping = {}
    for label, ref in comps.items():
        if label not in shape:
            raise ParseError(f"unknown element {label!r}", f"components.{label}")
        mapping[label] = b.ref(ref, f"components.{label}")
    return JoinPosition.from_mapping(shape, mapping, store)


def parse_leaf_sets(doc: Any) -> tuple[Poset, dict[str, GrundySet]]:
    if not isinstance(doc, dict) or "shape" not in doc or "leaf_sets" not in doc:
        raise ParseError("expected an object with 'shape' and 'leaf_sets'", "$")
    shape = parse_poset(doc["shape"], "shape")
    raw = doc["leaf_sets"]
    if not isinstance(raw, dict):
        raise ParseError("leaf_sets must map element labels to lists of naturals", "leaf_sets")
    out = {}
    for label, vals in raw.items():
        path = f"leaf_sets.{label}"
        if label not in shape:
            raise ParseError(f"unknown element {label!r}", path)
        if not isinstance(vals, list):
            raise ParseError("expected a list of naturals", path)
        out[label] = GrundySet(_natural(v, f"{path}[{k}]") for k, v in enumerate(vals))
    return shape, out


def export_game(store: GameStore, g: GameId) -> dict:
    """Game document listing every reachable position by its options."""
    ids = store.reachable(g)
    defs = {}
    for x in ids:
        name = f"g{x}"
        n = store.heap_size(x)
        if n is not None:
            defs[name] = {"heap": n}
        else:
            defs[name] = {"options": [f"g{o}" for o in store.options[x]]}
    return {"defs": defs, "root": f"g{g}"}


def export_join(p: JoinPosition) -> dict:
    defs: dict = {}
    comps = {}
    for e, g in zip(p.shape.elements, p.components):
        if g == EMPTY:
            continue
        sub = export_game(p.store, g)
        defs.update(sub["defs"])
        comps[str(e)] = sub["root"]
    return {"shape": p.shape.relabel(str).to_json(), "components": comps, "defs": defs}
