"""Ordered joins of short impartial games: Grundy numbers and sets,
substitution and reduction, and decomposition-driven evaluation."""

from .evaluator import (
    PreconditionError,
    ShapeEvaluation,
    canonical_game,
    dsum_grundy_set,
    evaluate,
    grundy_of_join,
    osum_grundy_set,
    reduce_symmetry,
    reduce_zero_upper,
    replace_component,
)
from .games import EMPTY, GameId, GameStore
from .grundy import (
    GrundyValue,
    Outcome,
    distinguish_by_context,
    grundy_k,
    grundy_number,
    grundy_set,
    oracle_grundy,
    outcome,
)
from .join import BudgetExceeded, JoinPosition, flatten, moves, poset_game, support, to_game
from .ordinals import GrundySet, ex, mex, nim_add
from .poset import (
    Involution,
    MDTree,
    Poset,
    from_relations,
    is_weakly_order_preserving,
    max_upper_set_within,
    modular_compose,
    modular_decompose,
    weakly_op_involutions,
)

__version__ = "0.1.0"
