"""k-uniform hypergraphs on [n] with red/blue edge colourings.

Edges are canonically sorted tuples of distinct vertices in 1..n.  All
structures are immutable after construction.  Every threshold that enters a
verdict is an exact Fraction; no floating point is used anywhere.

Degree thresholds for the density predicate use C(n-i, k-i), the degree a
complete k-graph attains, so that K_n^(k) is (1, 0)-dense at every level.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .errors import BadArity, ConflictingColour, MalformedEdge

Edge = tuple  # sorted tuple of ints; alias for readability in signatures


class Colour(Enum):
    RED = "R"
    BLUE = "B"

    @property
    def opposite(self) -> "Colour":
        return Colour.BLUE if self is Colour.RED else Colour.RED

    @classmethod
    def from_letter(cls, letter: str) -> "Colour":
        if letter == "R":
            return cls.RED
        if letter == "B":
            return cls.BLUE
        raise ValueError(f"unknown colour letter {letter!r}")


def canon_edge(vertices, k: int, n: int) -> Edge:
    """Sort and validate one edge: k distinct vertices, all in [n]."""
    e = tuple(sorted(vertices))
    if len(e) != k:
        raise MalformedEdge(f"edge {e} has arity {len(e)}, expected {k}")
    for i, v in enumerate(e):
        if not isinstance(v, int) or v < 1 or v > n:
            raise MalformedEdge(f"edge {e}: vertex {v} outside [1, {n}]")
        if i > 0 and e[i - 1] == v:
            raise MalformedEdge(f"edge {e}: repeated vertex {v}")
    return e


@dataclass(frozen=True)
class KGraph:
    """A k-uniform hypergraph on vertex set [n]."""

    k: int
    n: int
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "_sorted", tuple(sorted(self.edges)))

    @property
    def sorted_edges(self) -> tuple:
        return self._sorted

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_edge(self, e) -> bool:
        return tuple(sorted(e)) in self.edges

    def support(self) -> tuple:
        return support_of(self.edges)


def kgraph(k: int, n: int, edges) -> KGraph:
    """Validated KGraph constructor."""
    if k < 1:
        raise MalformedEdge(f"uniformity {k} < 1")
    if n < 0:
        raise MalformedEdge(f"vertex count {n} < 0")
    return KGraph(k, n, frozenset(canon_edge(e, k, n) for e in edges))


def complete_kgraph(k: int, n: int) -> KGraph:
    return KGraph(k, n, frozenset(itertools.combinations(range(1, n + 1), k)))


def support_of(edges) -> tuple:
    """Sorted tuple of vertices covered by an edge collection."""
    s = set()
    for e in edges:
        s.update(e)
    return tuple(sorted(s))


def edges_within(edges, vertices) -> list:
    """Edges entirely contained in the given vertex set, in canonical order."""
    vs = set(vertices)
    return sorted(e for e in edges if vs.issuperset(e))


@dataclass(frozen=True)
class ColouredKGraph:
    """A KGraph together with a total red/blue edge colouring."""

    graph: KGraph
    colour: dict  # Edge -> Colour; total on graph.edges

    @property
    def k(self) -> int:
        return self.graph.k

    @property
    def n(self) -> int:
        return self.graph.n

    def edges_of(self, colour: Colour) -> tuple:
        return tuple(e for e in self.graph.sorted_edges if self.colour[e] is colour)

    def monochromatic_subgraph(self, colour: Colour) -> KGraph:
        return KGraph(self.k, self.n, frozenset(self.edges_of(colour)))

    def swapped(self) -> "ColouredKGraph":
        """The same graph with every edge colour flipped."""
        return ColouredKGraph(self.graph, {e: c.opposite for e, c in self.colour.items()})


def build(k: int, n: int, coloured_edges) -> ColouredKGraph:
    """Validated construction from (colour, edge) pairs.

    A duplicate edge is tolerated when its colour agrees and rejected
    otherwise.
    """
    if k < 2:
        raise MalformedEdge(f"uniformity {k} < 2")
    if n < k:
        raise MalformedEdge(f"vertex count {n} < uniformity {k}")
    colour = {}
    for c, raw in coloured_edges:
        if isinstance(c, str):
            c = Colour.from_letter(c)
        e = canon_edge(raw, k, n)
        old = colour.get(e)
        if old is not None and old is not c:
            raise ConflictingColour(f"edge {e} given as both {old.value} and {c.value}")
        colour[e] = c
    return ColouredKGraph(KGraph(k, n, frozenset(colour)), colour)


def degree_and_link(H: KGraph, S) -> tuple:
    """d_H(S) and the link N_H(S) = { T : S ∪ T is an edge }, |S| in [1, k-1]."""
    s = tuple(sorted(set(S)))
    if not 1 <= len(s) <= H.k - 1:
        raise BadArity(f"|S| = {len(s)} outside [1, {H.k - 1}]")
    ss = set(s)
    link = set()
    for e in H.edges:
        if ss.issubset(e):
            link.add(tuple(v for v in e if v not in ss))
    return len(link), link


def shadow(H: KGraph) -> KGraph:
    """The (k-1)-graph of all (k-1)-subsets contained in some edge."""
    if H.k < 2:
        raise BadArity(f"shadow undefined for uniformity {H.k}")
    sh = set()
    for e in H.edges:
        sh.update(itertools.combinations(e, H.k - 1))
    return KGraph(H.k - 1, H.n, frozenset(sh))


@dataclass(frozen=True)
class LevelReport:
    """Classification of the i-sets at one level of the density predicate."""

    i: int
    threshold: Fraction
    meets: int       # degree >= threshold and degree > 0
    zero: int        # degree == 0
    violating: int   # 0 < degree < threshold

    @property
    def total(self) -> int:
        return self.meets + self.zero + self.violating


@dataclass(frozen=True)
class DensityReport:
    mu: Fraction
    alpha: Fraction
    per_level: tuple  # LevelReport per i in [k-1]
    passed: bool


def density_check(H: KGraph, mu, alpha) -> DensityReport:
    """Decide (mu, alpha)-density exactly.

    Passes iff for every i in [k-1] the i-sets of degree below
    mu * C(n-i, k-i) number at most alpha * C(n, i) and all of them have
    degree exactly 0.
    """
    mu = Fraction(mu)
    alpha = Fraction(alpha)
    if H.m == comb(H.n, H.k) and 0 <= mu <= 1:
        # complete: every i-set has degree exactly C(n-i, k-i)
        levels = tuple(LevelReport(i, mu * comb(H.n - i, H.k - i),
                                   comb(H.n, i), 0, 0) for i in range(1, H.k))
        return DensityReport(mu, alpha, levels, True)
    levels = []
    passed = True
    for i in range(1, H.k):
        threshold = mu * comb(H.n - i, H.k - i)
        degs = {}
        for e in H.edges:
            for s in itertools.combinations(e, i):
                degs[s] = degs.get(s, 0) + 1
        total = comb(H.n, i)
        meets = sum(1 for d in degs.values() if d >= threshold)
        violating = len(degs) - meets
        zero = total - len(degs)
        below = zero if threshold > 0 else 0
        if violating > 0 or below > alpha * total:
            passed = False
        levels.append(LevelReport(i, threshold, meets, zero, violating))
    return DensityReport(mu, alpha, tuple(levels), passed)
