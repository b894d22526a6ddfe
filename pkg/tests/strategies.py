from hypothesis import strategies as st

from ojoin.ordinals import GrundySet

# a game as nested tuples of options; interned with intern_nested
game_trees = st.recursive(st.just(()), lambda kids: st.lists(kids, max_size=3).map(tuple), max_leaves=10)

grundy_sets = st.frozensets(st.integers(0, 9), max_size=5).map(GrundySet)


def intern_nested(store, tree):
    return store.intern([intern_nested(store, o) for o in tree])
