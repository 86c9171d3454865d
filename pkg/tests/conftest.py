import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from tcr.hypergraph import build


def rand_coloured(k, n, m, rng):
    """Random coloured k-graph: m distinct edges, independent fair colours."""
    pool = list(itertools.combinations(range(1, n + 1), k))
    rng.shuffle(pool)
    return build(k, n, [(rng.choice("RB"), e) for e in pool[:m]])


def near_complete_coloured(k, n, rng, deletions=2):
    """Complete K_n^(k) minus a packing of edges pairwise sharing at most
    k-2 vertices, randomly coloured.  Each (k-1)-set loses at most one
    edge, so degrees stay within 1 of complete at every level."""
    pool = list(itertools.combinations(range(1, n + 1), k))
    rng.shuffle(pool)
    removed = []
    shadows = set()
    for e in pool:
        if len(removed) >= deletions:
            break
        subs = set(itertools.combinations(e, k - 1))
        if shadows & subs:
            continue
        removed.append(e)
        shadows |= subs
    removed = set(removed)
    return build(k, n, [(rng.choice("RB"), e)
                        for e in sorted(pool) if e not in removed])


def all_red(k, n):
    return build(k, n, [("R", e) for e in itertools.combinations(range(1, n + 1), k)])


def complete_random_coloured(k, n, rng):
    """Complete K_n^(k) with independent fair colours: (1, 0)-dense."""
    return build(k, n, [(rng.choice("RB"), e)
                        for e in itertools.combinations(range(1, n + 1), k)])


def split_edges(k, n_param, N=None):
    """Split-style colouring on N vertices: X = [n_param - 1] red rule."""
    if N is None:
        N = (k + 1) * n_param - 2
    x_top = n_param - 1
    return build(k, N, [("R" if e[0] <= x_top else "B", e)
                        for e in itertools.combinations(range(1, N + 1), k)])
