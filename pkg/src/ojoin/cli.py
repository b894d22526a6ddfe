"""Command-line front end.

Exit codes
----------
    0  success
    2  parse / usage error
    3  precondition error (bad involution, k above the cap, size limits)
    4  position budget exceeded
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any

from .evaluator import (
    PreconditionError,
    evaluate,
    grundy_of_join,
    grundy_set_of_join,
    join_grundy_sets,
    reduce_symmetry,
    reduce_zero_upper,
    check_symmetry,
    zero_upper_set,
)
from .formats import (
    GameBuilder,
    ParseError,
    export_join,
    load_json,
    parse_game,
    parse_join,
    parse_leaf_sets,
    parse_poset,
)
from .games import GameStore
from .grundy import distinguish_by_context, grundy_k, grundy_number, grundy_set, outcome
from .join import DEFAULT_BUDGET, BudgetExceeded, JoinPosition, restrict_to_support, to_game
from .poset import (
    ENUMERATION_LIMIT,
    Involution,
    PosetError,
    is_order_preserving,
    modular_decompose,
    weakly_op_involutions,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

DEFAULT_K_CAP = 4


@dataclass
class AnalysisReport:
    input_digest: str
    command: str
    result: dict[str, Any]
    stats: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [f"command: {self.command}", f"input: sha256:{self.input_digest[:16]}"]
        for k, v in self.result.items():
            if k == "tree_text":
                lines.append("tree (text):")
                lines.extend("  " + ln for ln in v.splitlines())
            else:
                lines.append(f"{k}: {_text(v)}")
        for k, v in self.stats.items():
            lines.append(f"stats.{k}: {_text(v)}")
        return "\n".join(lines)


def _text(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


# input classification


def _is_join(doc: Any) -> bool:
    return isinstance(doc, dict) and "shape" in doc and "leaf_sets" not in doc


def _is_leaf_sets(doc: Any) -> bool:
    return isinstance(doc, dict) and "shape" in doc and "leaf_sets" in doc


def _shape_of(doc: Any):
    if isinstance(doc, dict) and "shape" in doc:
        return parse_poset(doc["shape"], "shape")
    return parse_poset(doc)


# commands


def cmd_grundy(doc, args, store):
    if _is_join(doc):
        p = parse_join(doc, store)
        return {"grundy": grundy_of_join(p, args.budget)}, {}
    g = parse_game(doc, store)
    return {"grundy": grundy_number(store, g)}, {"positions": store.size(g)}


def cmd_grundy_set(doc, args, store):
    if _is_leaf_sets(doc):
        shape, sets = parse_leaf_sets(doc)
        ev = evaluate(shape, sets, args.budget)
        return {"grundy_set": list(ev.result)}, ev.stats.to_json()
    if _is_join(doc):
        p = parse_join(doc, store)
        return {"grundy_set": list(grundy_set_of_join(p, args.budget))}, {}
    g = parse_game(doc, store)
    return {"grundy_set": list(grundy_set(store, g))}, {"positions": store.size(g)}


def cmd_grundy_k(doc, args, store):
    if args.k > args.k_cap:
        raise PreconditionError(f"k = {args.k} exceeds the cap {args.k_cap}; raise it with --k-cap")
    if _is_join(doc):
        g = to_game(parse_join(doc, store), args.budget)
    else:
        g = parse_game(doc, store)
    return {"k": args.k, "grundy_k": grundy_k(store, g, args.k).to_json()}, {"positions": store.size(g)}


def cmd_outcome(doc, args, store):
    if _is_join(doc):
        p = parse_join(doc, store)
        n = grundy_of_join(p, args.budget)
        return {"outcome": "P" if n == 0 else "N", "grundy": n}, {}
    g = parse_game(doc, store)
    return {"outcome": str(outcome(store, g)), "grundy": grundy_number(store, g)}, {}


def cmd_evaluate(doc, args, store):
    if _is_leaf_sets(doc):
        shape, sets = parse_leaf_sets(doc)
    else:
        p = restrict_to_support(parse_join(doc, store))
        if len(p.shape) == 0:
            return {"grundy_set": [], "grundy": 0}, {}
        shape, sets = p.shape, join_grundy_sets(p)
    ev = evaluate(shape, sets, args.budget)
    return (
        {"grundy_set": list(ev.result), "grundy": ev.grundy_number, "series_parallel": ev.decomposition.is_series_parallel()},
        ev.stats.to_json(),
    )


def cmd_decompose(doc, args, store):
    shape = _shape_of(doc)
    tree = modular_decompose(shape)
    return (
        {"tree": tree.to_json(), "tree_text": tree.render(), "series_parallel": tree.is_series_parallel()},
        {"elements": len(shape)},
    )


def cmd_involutions(doc, args, store):
    shape = _shape_of(doc)
    invs = weakly_op_involutions(shape, args.limit)
    listed = [
        {"sigma": {str(a): str(b) for a, b in sig.cycles(shape)}, "cycles": sig.describe(shape),
         "order_preserving": is_order_preserving(shape, sig)}
        for sig in invs
    ]
    return {"count": len(invs), "involutions": listed}, {"elements": len(shape)}


def _best_symmetry(p: JoinPosition, limit: int) -> Involution | None:
    if len(p.shape) > limit:
        return None
    best = None
    for sig in weakly_op_involutions(p.shape, limit):
        if sig.is_identity():
            continue
        try:
            check_symmetry(p, sig)
        except PreconditionError:
            continue
        if best is None or bin(sig.fixed_mask()).count("1") < bin(best.fixed_mask()).count("1"):
            best = sig
    return best


def cmd_reduce(doc, args, store):
    p = parse_join(doc, store)
    steps = []
    if args.sigma:
        sig = Involution.parse(p.shape, args.sigma)
        q = reduce_symmetry(p, sig)
        steps.append({"step": "symmetry", "sigma": sig.describe(p.shape),
                      "removed": [str(e) for e in p.shape.elements if e not in q.shape]})
        p = q
    searched = 0
    while True:
        z = zero_upper_set(p)
        if z:
            steps.append({"step": "zero-upper-set", "removed": sorted(str(e) for e in z)})
            p = reduce_zero_upper(p)
        q = restrict_to_support(p)
        if len(q.shape) < len(p.shape):
            steps.append({"step": "empty-components",
                          "removed": [str(e) for e in p.shape.elements if e not in q.shape]})
            p = q
        if args.sigma or len(p.shape) == 0:
            break
        searched += 1
        sig = _best_symmetry(p, args.limit)
        if sig is None:
            break
        q = reduce_symmetry(p, sig)
        steps.append({"step": "symmetry", "sigma": sig.describe(p.shape),
                      "removed": [str(e) for e in p.shape.elements if e not in q.shape]})
        p = q
    reduced = export_join(p)
    n = grundy_of_join(p, args.budget) if len(p.shape) else 0
    return (
        {"reduced": reduced, "remaining": [str(e) for e in p.shape.elements], "certificates": steps,
         "grundy": n, "outcome": "P" if n == 0 else "N"},
        {"symmetry_searches": searched},
    )


def cmd_bench(doc, args, store):
    if _is_leaf_sets(doc):
        shape, sets = parse_leaf_sets(doc)
        from .evaluator import canonical_game

        p = JoinPosition.from_mapping(shape, {e: canonical_game(store, s) for e, s in sets.items()}, store)
    else:
        p = restrict_to_support(parse_join(doc, store))
        shape, sets = p.shape, join_grundy_sets(p)
    stats: dict[str, Any] = {"elements": len(shape)}
    result: dict[str, Any] = {}
    t = time.perf_counter()
    ev = evaluate(shape, sets, args.budget) if len(shape) else None
    stats["decomposition_seconds"] = time.perf_counter() - t
    result["decomposition_grundy_set"] = list(ev.result) if ev else []
    if ev:
        stats.update({f"decomposition_{k}": v for k, v in ev.stats.to_json().items() if k != "seconds"})
    before = len(store)
    t = time.perf_counter()
    try:
        g = to_game(p, args.budget)
        naive = list(grundy_set(store, g))
        result["naive_grundy_set"] = naive
        result["naive_status"] = "ok"
        result["agree"] = naive == result["decomposition_grundy_set"]
    except BudgetExceeded as exc:
        result["naive_status"] = "budget_exceeded"
        result["naive_error"] = str(exc)
    stats["naive_seconds"] = time.perf_counter() - t
    stats["naive_positions_interned"] = len(store) - before
    return result, stats


def cmd_distinguish(doc, args, store):
    if not isinstance(doc, dict) or "left" not in doc or "right" not in doc:
        raise ParseError("expected an object with 'left' and 'right' games (and optional 'defs')", "$")
    b = GameBuilder(store, doc.get("defs"))
    g = b.ref(doc["left"], "left")
    h = b.ref(doc["right"], "right")
    found = distinguish_by_context(store, g, h, args.bound)
    res: dict[str, Any] = {
        "left_grundy_set": list(grundy_set(store, g)),
        "right_grundy_set": list(grundy_set(store, h)),
        "witness": None,
    }
    if found is not None:
        lam, rho = found
        ga = grundy_number(store, store.dsum(store.nim_heap(lam), store.osum(g, store.nim_heap(rho))))
        gb = grundy_number(store, store.dsum(store.nim_heap(lam), store.osum(h, store.nim_heap(rho))))
        res["witness"] = {"heap": lam, "ordinal_heap": rho,
                          "left_outcome": "P" if ga == 0 else "N", "right_outcome": "P" if gb == 0 else "N"}
    return res, {"bound": args.bound}


COMMANDS = {
    "grundy": (cmd_grundy, "Grundy number of a game or join"),
    "grundy-set": (cmd_grundy_set, "Grundy set of a game, join or leaf-set shape"),
    "grundy-k": (cmd_grundy_k, "depth-k Grundy value of a game or join"),
    "outcome": (cmd_outcome, "outcome class (P or N) of a game or join"),
    "evaluate": (cmd_evaluate, "decomposition-driven Grundy set from leaf Grundy sets"),
    "decompose": (cmd_decompose, "modular decomposition tree of a poset"),
    "reduce": (cmd_reduce, "zero-upper-set and symmetry reductions of a join"),
    "involutions": (cmd_involutions, "weakly order-preserving involutions of a poset"),
    "bench": (cmd_bench, "naive expansion vs decomposition evaluation"),
    "distinguish": (cmd_distinguish, "context heap(l) + (x : heap(r)) separating two games"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-", help="JSON input file ('-' for stdin)")
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="position budget for expansions")
    common.add_argument("--bound", type=int, default=16, help="context search bound for distinguish")
    common.add_argument("--k", type=int, default=2, help="depth for grundy-k")
    common.add_argument("--k-cap", type=int, default=DEFAULT_K_CAP, help="largest k grundy-k accepts")
    common.add_argument("--sigma", default=None, help='explicit involution for reduce, e.g. "1:3,2:4"')
    common.add_argument("--limit", type=int, default=ENUMERATION_LIMIT, help="involution enumeration size limit")
    parser = argparse.ArgumentParser(prog="ojoin", description="Ordered joins of impartial games.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def run(argv: list[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        if args.input == "-":
            text = stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=stderr)
        return EXIT_PARSE
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    store = GameStore()
    func = COMMANDS[args.command][0]
    try:
        doc = load_json(text)
        result, stats = func(doc, args, store)
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget error: {exc}", file=stderr)
        return EXIT_BUDGET
    except (PreconditionError, PosetError) as exc:
        print(f"precondition error: {exc}", file=stderr)
        return EXIT_PRECONDITION
    report = AnalysisReport(digest, args.command, result, stats)
    print(report.to_json() if args.json else report.to_text(), file=stdout)
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
