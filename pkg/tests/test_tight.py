import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_red, rand_coloured, split_edges
from oracles import (bfs_tight_walk, brute_components, verify_cycle_witness,
                     verify_path_witness)
from tcr.errors import SearchCapExceeded, UnknownEdge
from tcr.hypergraph import Colour, KGraph, build, complete_kgraph
from tcr.tight import (Absent, cycle_windows, find_tight_cycle, find_tight_path,
                       is_tight_walk, monochromatic_components, tight_components)


def cycle_edge_set(n, k):
    """The edge set of the tight cycle on [n] in its natural order."""
    return [tuple(sorted((v + j - 1) % n + 1 for j in range(k)))
            for v in range(1, n + 1)]


def test_is_tight_walk_basic():
    h = build(4, 8, [("R", (1, 2, 3, 4)), ("R", (2, 3, 4, 5)),
                     ("R", (5, 6, 7, 8))]).graph
    assert is_tight_walk(h, [(1, 2, 3, 4), (2, 3, 4, 5)])
    assert not is_tight_walk(h, [(1, 2, 3, 4), (5, 6, 7, 8)])
    with pytest.raises(UnknownEdge):
        is_tight_walk(h, [(1, 2, 3, 5)])
    with pytest.raises(UnknownEdge):
        is_tight_walk(h, [])


def test_is_tight_walk_cycle_windows():
    edges = cycle_edge_set(8, 4)
    h = KGraph(4, 8, frozenset(edges))
    assert is_tight_walk(h, edges)


def test_components_complete_k5():
    d = tight_components(complete_kgraph(4, 5))
    assert len(d.components) == 1
    assert len(d.components[0]) == 5


def test_components_two_disjoint_edges():
    h = build(4, 8, [("R", (1, 2, 3, 4)), ("R", (5, 6, 7, 8))]).graph
    d = tight_components(h)
    assert len(d.components) == 2


def test_components_cycle_c8():
    h = KGraph(4, 8, frozenset(cycle_edge_set(8, 4)))
    d = tight_components(h)
    assert len(d.components) == 1 and len(d.components[0]) == 8


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_components_match_bfs_oracle_and_are_order_independent(seed):
    rng = random.Random(seed)
    ch = rand_coloured(4, 9, rng.randint(0, 25), rng)
    d = tight_components(ch.graph)
    assert list(d.components) == brute_components(4, ch.graph.edges)
    # partition property
    assert sum(len(c) for c in d.components) == ch.graph.m
    shuffled = list(ch.graph.edges)
    rng.shuffle(shuffled)
    d2 = tight_components(KGraph(4, 9, frozenset(shuffled)))
    assert d2.components == d.components


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_walk_oracle_within_and_across_components(seed):
    rng = random.Random(seed)
    ch = rand_coloured(4, 8, rng.randint(2, 18), rng)
    d = tight_components(ch.graph)
    edges = sorted(ch.graph.edges)
    for e1, e2 in itertools.combinations(edges[:8], 2):
        walk = bfs_tight_walk(4, edges, e1, e2)
        same = d.component_of[e1] == d.component_of[e2]
        assert (walk is not None) == same
        if walk:
            assert is_tight_walk(ch.graph, walk)


def test_monochromatic_components_all_red():
    d = monochromatic_components(all_red(4, 5))
    assert len(d.components) == 1
    assert d.colour(0) is Colour.RED


def test_monochromatic_components_split():
    ch = split_edges(4, 2)
    d = monochromatic_components(ch)
    xset = {1}
    for cid, comp in enumerate(d.components):
        if d.colour(cid) is Colour.RED:
            assert all(xset.intersection(e) for e in comp)
        else:
            assert all(not xset.intersection(e) for e in comp)


def test_monochromatic_components_parity_profiles_constant():
    from tcr.extremal import parity_coloring
    ch, spec = parity_coloring(3, 2, 0)
    d = monochromatic_components(ch)
    xset = set(spec.X)
    for comp in d.components:
        profiles = {sum(1 for v in e if v in xset) for e in comp}
        assert len(profiles) == 1


def test_find_cycle_k5():
    res = find_tight_cycle(complete_kgraph(4, 5), 5)
    assert not isinstance(res, Absent)
    assert verify_cycle_witness(complete_kgraph(4, 5).edges, 4, res.ordering)


def test_find_cycle_red_split_absent():
    ch = split_edges(4, 2)
    red = ch.monochromatic_subgraph(Colour.RED)
    res = find_tight_cycle(red, 8)
    assert isinstance(res, Absent)
    assert res.explored > 0


def test_find_cycle_recovers_defining_order():
    edges = cycle_edge_set(8, 4)
    h = KGraph(4, 8, frozenset(edges))
    res = find_tight_cycle(h, 8)
    assert not isinstance(res, Absent)
    assert verify_cycle_witness(edges, 4, res.ordering)
    assert set(cycle_windows(res.ordering, 4)) == set(edges)


def test_find_cycle_cap():
    with pytest.raises(SearchCapExceeded):
        find_tight_cycle(complete_kgraph(4, 15), 15)
    # explicit larger cap allows it through the guard (and finds the cycle)
    res = find_tight_cycle(complete_kgraph(4, 15), 15, support_cap=15)
    assert not isinstance(res, Absent)


def test_find_cycle_length_validation():
    with pytest.raises(ValueError):
        find_tight_cycle(complete_kgraph(4, 6), 4)


def test_find_path_single_edge():
    h = build(4, 4, [("R", (1, 2, 3, 4))]).graph
    res = find_tight_path(h, 4)
    assert not isinstance(res, Absent)
    assert verify_path_witness(h.edges, 4, res.ordering)


def test_find_path_k5():
    res = find_tight_path(complete_kgraph(4, 5), 5)
    assert not isinstance(res, Absent)
    assert verify_path_witness(complete_kgraph(4, 5).edges, 4, res.ordering)


def test_find_path_two_disjoint_edges_absent():
    h = build(4, 8, [("R", (1, 2, 3, 4)), ("R", (5, 6, 7, 8))]).graph
    assert isinstance(find_tight_path(h, 5), Absent)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_witnesses_always_reverify(seed):
    rng = random.Random(seed)
    ch = rand_coloured(4, 8, rng.randint(5, 40), rng)
    for ell in (5, 6):
        res = find_tight_cycle(ch.graph, ell)
        if not isinstance(res, Absent):
            assert verify_cycle_witness(ch.graph.edges, 4, res.ordering)
        res = find_tight_path(ch.graph, ell)
        if not isinstance(res, Absent):
            assert verify_path_witness(ch.graph.edges, 4, res.ordering)


def test_blow_up_component_compatibility():
    from tcr.blowup import blow_up, project_edge
    rng = random.Random(99)
    ch = rand_coloured(4, 7, 14, rng)
    blown, bmap = blow_up(ch, 2)
    base = monochromatic_components(ch)
    star = monochromatic_components(blown)
    assert len(base.components) == len(star.components)
    for comp in star.components:
        base_ids = {base.component_of[project_edge(bmap, e)] for e in comp}
        assert len(base_ids) == 1
