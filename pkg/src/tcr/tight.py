"""Tight walks, tight components, and exhaustive tight cycle/path search.

Two edges are tightly adjacent when they share exactly k-1 vertices; tight
components are the connected components of that relation, computed by
union-find over the (k-1)-subset buckets of the edge set.  Cycle and path
searches are exhaustive DFS with window pruning, so an Absent verdict is a
proof of absence (with the explored-node count as certificate).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import SearchCapExceeded, UnknownEdge
from .hypergraph import Colour, ColouredKGraph, KGraph, support_of


class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def is_tight_walk(H: KGraph, seq) -> bool:
    """True iff consecutive edges of the sequence overlap in exactly k-1 vertices."""
    edges = [tuple(sorted(e)) for e in seq]
    if not edges:
        raise UnknownEdge("empty walk")
    for e in edges:
        if e not in H.edges:
            raise UnknownEdge(f"{e} is not an edge")
    for a, b in zip(edges, edges[1:]):
        if len(set(a) & set(b)) != H.k - 1:
            return False
    return True


@dataclass(frozen=True)
class TightDecomposition:
    """Partition of an edge set into tight components.

    Component ids are assigned in order of each component's smallest edge,
    so the decomposition is independent of input edge order.  colour_of is
    populated only for monochromatic decompositions.
    """

    components: tuple  # tuple of frozensets of edges
    component_of: dict  # Edge -> component id
    colour_of: Optional[dict] = None  # component id -> Colour

    def edges_of(self, cid: int) -> frozenset:
        return self.components[cid]

    def support(self, cid: int) -> tuple:
        return support_of(self.components[cid])

    def colour(self, cid: int) -> Optional[Colour]:
        return None if self.colour_of is None else self.colour_of[cid]


def _component_sets(k: int, edges) -> list:
    """Group edges by tight connectivity; returns frozensets sorted by min edge.

    Two edges are adjacent iff they share a (k-1)-subset, so unioning every
    edge into its subsets' buckets realizes the transitive closure."""
    es = sorted(edges)
    uf = UnionFind(len(es))
    first_of = {}
    for i, e in enumerate(es):
        for sub in itertools.combinations(e, k - 1):
            prev = first_of.get(sub)
            if prev is None:
                first_of[sub] = i
            else:
                uf.union(prev, i)
    groups = {}
    for i, e in enumerate(es):
        groups.setdefault(uf.find(i), set()).add(e)
    return [frozenset(g) for g in sorted(groups.values(), key=min)]


def tight_components(H: KGraph) -> TightDecomposition:
    comps = _component_sets(H.k, H.edges)
    component_of = {}
    for cid, comp in enumerate(comps):
        for e in comp:
            component_of[e] = cid
    return TightDecomposition(tuple(comps), component_of)


def monochromatic_components(CH: ColouredKGraph) -> TightDecomposition:
    """Tight components of the red and blue subgraphs, red components first."""
    comps = []
    colour_of = {}
    for colour in (Colour.RED, Colour.BLUE):
        for comp in _component_sets(CH.k, CH.edges_of(colour)):
            colour_of[len(comps)] = colour
            comps.append(comp)
    component_of = {}
    for cid, comp in enumerate(comps):
        for e in comp:
            component_of[e] = cid
    return TightDecomposition(tuple(comps), component_of, colour_of)


@dataclass(frozen=True)
class TightCycleWitness:
    ordering: tuple  # cyclic vertex sequence
    length: int
    colour: Optional[Colour] = None
    explored: int = 0


@dataclass(frozen=True)
class TightPathWitness:
    ordering: tuple
    length: int
    colour: Optional[Colour] = None
    explored: int = 0


@dataclass(frozen=True)
class Absent:
    """Proof of absence: the DFS exhausted its search space."""

    length: int
    support_size: int
    explored: int


def cycle_windows(ordering, k: int) -> list:
    """The k-windows of a cyclic vertex ordering, as sorted tuples."""
    ell = len(ordering)
    return [tuple(sorted(ordering[(i + j) % ell] for j in range(k))) for i in range(ell)]


def path_windows(ordering, k: int) -> list:
    ell = len(ordering)
    return [tuple(sorted(ordering[i + j] for j in range(k))) for i in range(ell - k + 1)]


def _host_edges(H: KGraph, within, decomposition):
    if within is None:
        return set(H.edges)
    if decomposition is None:
        raise ValueError("within requires a decomposition")
    return set(decomposition.edges_of(within))


def _completion_map(k: int, edges) -> dict:
    """(k-1)-window -> vertices completing it to a host edge."""
    out = {}
    for e in edges:
        for i in range(k):
            rest = e[:i] + e[i + 1:]
            out.setdefault(rest, set()).add(e[i])
    return out


def find_tight_cycle(H: KGraph, length: int, within=None, decomposition=None,
                     support_cap: int = 14):
    """Exhaustive search for a tight cycle on `length` vertices.

    Rotations are cut by starting at the minimum vertex of the candidate
    support and reflections by requiring ordering[1] < ordering[-1].
    Returns a verified TightCycleWitness or Absent with the explored count.
    """
    if length < H.k + 1:
        raise ValueError(f"cycle length {length} < k+1 = {H.k + 1}")
    edges = _host_edges(H, within, decomposition)
    support = support_of(edges)
    if len(support) > support_cap:
        raise SearchCapExceeded(
            f"support {len(support)} exceeds exhaustive-search cap {support_cap}")
    explored = 0
    if length > len(support):
        return Absent(length, len(support), explored)
    k = H.k
    completions = _completion_map(k, edges)
    edge_set = edges

    ordering = []
    used = set()

    def extend():
        nonlocal explored
        depth = len(ordering)
        if depth == length:
            if ordering[1] > ordering[-1]:
                return None
            for w in cycle_windows(ordering, k):
                if w not in edge_set:
                    return None
            return tuple(ordering)
        if depth >= k - 1:
            window = tuple(sorted(ordering[depth - k + 1:]))
            candidates = sorted(completions.get(window, ()))
        else:
            candidates = support
        for v in candidates:
            if v in used or v <= ordering[0]:
                continue
            ordering.append(v)
            used.add(v)
            explored += 1
            res = extend()
            ordering.pop()
            used.remove(v)
            if res is not None:
                return res
        return None

    for start in support:
        if len([v for v in support if v > start]) < length - 1:
            break
        ordering = [start]
        used = {start}
        explored += 1
        res = extend()
        if res is not None:
            return TightCycleWitness(res, length, explored=explored)
    return Absent(length, len(support), explored)


def find_tight_path(H: KGraph, length: int, within=None, decomposition=None,
                    support_cap: int = 14):
    """Exhaustive search for a tight path on `length` vertices (length >= k)."""
    if length < H.k:
        raise ValueError(f"path length {length} < k = {H.k}")
    edges = _host_edges(H, within, decomposition)
    support = support_of(edges)
    if len(support) > support_cap:
        raise SearchCapExceeded(
            f"support {len(support)} exceeds exhaustive-search cap {support_cap}")
    explored = 0
    if length > len(support):
        return Absent(length, len(support), explored)
    k = H.k
    completions = _completion_map(k, edges)
    edge_set = edges

    ordering = []
    used = set()

    def extend():
        nonlocal explored
        depth = len(ordering)
        if depth == length:
            if ordering[0] > ordering[-1]:
                return None
            for w in path_windows(ordering, k):
                if w not in edge_set:
                    return None
            return tuple(ordering)
        if depth >= k - 1:
            window = tuple(sorted(ordering[depth - k + 1:]))
            candidates = sorted(completions.get(window, ()))
        else:
            candidates = support
        for v in candidates:
            if v in used:
                continue
            ordering.append(v)
            used.add(v)
            explored += 1
            res = extend()
            ordering.pop()
            used.remove(v)
            if res is not None:
                return res
        return None

    for start in support:
        ordering = [start]
        used = {start}
        explored += 1
        res = extend()
        if res is not None:
            return TightPathWitness(res, length, explored=explored)
    return Absent(length, len(support), explored)
