"""Small facts about the poset N = {1 < 2 > 3 < 4}, printed with evidence."""

from ojoin.evaluator import evaluate, reduce_symmetry
from ojoin.games import GameStore
from ojoin.grundy import grundy_number
from ojoin.join import poset_game, to_game
from ojoin.poset import Involution, from_relations, is_order_preserving, modular_decompose, weakly_op_involutions


def main() -> None:
    n = from_relations(["1", "2", "3", "4"], [("1", "2"), ("3", "2"), ("3", "4")])
    print("N:", n)
    invs = weakly_op_involutions(n)
    print(f"weakly order-preserving involutions: {len(invs)}")
    for sig in invs:
        tag = "order-preserving" if is_order_preserving(n, sig) else "weak only"
        print(f"  {sig.describe(n):<12} fixed {sig.fixed_points(n)}  {tag}")
    tree = modular_decompose(n)
    print("decomposition:")
    print(tree.render("  "))

    store = GameStore()
    p = poset_game(n, store)
    print("Grundy number of the poset game by expansion:", grundy_number(store, to_game(p)))
    print("Grundy set by evaluation:", evaluate(n, {e: [0] for e in n.elements}).result)
    r = reduce_symmetry(p, Involution.parse(n, "1:3,2:4"))
    print("after the (1 3)(2 4) symmetry reduction:", len(r.shape), "elements left, so the game is a P-position")


if __name__ == "__main__":
    main()
