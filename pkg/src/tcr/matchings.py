"""Integral and fractional matchings with exact rational weights.

Integral maximum matchings come from a branch-and-bound set-packing search
that always proves optimality (or raises above its cap).  Fractional optima
come from the exact simplex; ties among optimal supports are broken toward
the lexicographically smallest support so results are reproducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import lp
from .errors import NonEmptyIntersection, SearchCapExceeded, Unsupported
from .hypergraph import Colour, ColouredKGraph, KGraph, support_of
from .tight import monochromatic_components

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class FractionalMatching:
    """Edge weights in [0,1] with total load at most 1 at every vertex.

    host is the edge set the weighting lives in (a tight component's edges
    in the monochromatic pipeline).  Zero weights are dropped.
    """

    host: frozenset
    weights: dict  # Edge -> Fraction, nonzero
    colour: Optional[Colour] = None
    component: Optional[int] = None

    def weight(self) -> Fraction:
        return sum(self.weights.values(), ZERO)

    def support(self) -> tuple:
        return tuple(sorted(self.weights))

    def completion(self, superhost) -> "FractionalMatching":
        """The same weighting viewed inside a larger host; weight is preserved."""
        superhost = frozenset(superhost)
        if not superhost.issuperset(self.weights):
            raise Unsupported("completion host does not contain the support")
        return FractionalMatching(superhost, dict(self.weights), self.colour, self.component)

    def __add__(self, other: "FractionalMatching") -> "FractionalMatching":
        """Sum of weightings on vertex-disjoint hosts."""
        if support_of(self.host) and support_of(other.host):
            if set(support_of(self.host)) & set(support_of(other.host)):
                raise Unsupported("hosts are not vertex-disjoint")
        merged = dict(self.weights)
        merged.update(other.weights)
        return FractionalMatching(self.host | other.host, merged)


def from_matching(edges, host=None, colour=None, component=None) -> FractionalMatching:
    """The weighting induced by an integral matching: weight 1 on each edge."""
    edges = [tuple(sorted(e)) for e in edges]
    host = frozenset(edges) if host is None else frozenset(host)
    return FractionalMatching(host, {e: ONE for e in edges}, colour, component)


@dataclass(frozen=True)
class Violation:
    kind: str
    vertex: Optional[int] = None
    edge: Optional[tuple] = None
    detail: str = ""


def validate_fractional(H, phi: FractionalMatching):
    """Check the vertex constraints and host membership; returns (ok, first violation)."""
    host = phi.host
    if isinstance(H, ColouredKGraph):
        H = H.graph
    if H is not None and not H.edges.issuperset(host):
        bad = min(host - H.edges)
        return False, Violation("host_not_in_graph", edge=bad)
    loads = {}
    for e, w in sorted(phi.weights.items()):
        if w < 0 or w > 1:
            return False, Violation("weight_out_of_range", edge=e, detail=str(w))
        if e not in host:
            return False, Violation("support_outside_host", edge=e)
        for v in e:
            loads[v] = loads.get(v, ZERO) + w
    for v in sorted(loads):
        if loads[v] > 1:
            return False, Violation("vertex_overloaded", vertex=v, detail=str(loads[v]))
    return True, None


@dataclass(frozen=True)
class MatchingCertificate:
    edges: tuple      # pairwise disjoint, canonical order
    size: int
    optimal: bool
    nodes: int        # branch-and-bound nodes explored (exhaustion evidence)


def max_matching_exact(host, cap: int = 10_000) -> MatchingCertificate:
    """Maximum-cardinality matching in an edge set by branch and bound.

    Branches on the surviving vertex with the fewest candidate edges (either
    one of them is chosen or the vertex stays uncovered); the bound
    size + |union of survivors| / k prunes, and full exhaustion certifies
    optimality.
    """
    edges = sorted(set(tuple(sorted(e)) for e in host))
    if len(edges) > cap:
        raise SearchCapExceeded(f"{len(edges)} edges exceeds matching cap {cap}")
    if not edges:
        return MatchingCertificate((), 0, True, 0)
    k = len(edges[0])
    emask = [sum(1 << v for v in e) for e in edges]

    nodes = 0
    memo: dict = {}

    def solve(survivors):
        """Exact maximum matching size within the surviving edges, with the
        witness; memoized on the survivor set."""
        nonlocal nodes
        nodes += 1
        if not survivors:
            return 0, []
        union = 0
        greedy_mask = 0
        greedy_picks = []
        for ei in survivors:
            m = emask[ei]
            union |= m
            if not m & greedy_mask:
                greedy_mask |= m
                greedy_picks.append(ei)
        upper = union.bit_count() // k
        if len(greedy_picks) == upper:
            return upper, greedy_picks
        key = tuple(survivors)
        hit = memo.get(key)
        if hit is not None:
            return hit
        counts = {}
        for ei in survivors:
            for v in edges[ei]:
                counts[v] = counts.get(v, 0) + 1
        v = min(counts, key=lambda u: (counts[u], u))
        vbit = 1 << v
        best_val, best_pick = solve([ej for ej in survivors
                                     if not emask[ej] & vbit])
        for ei in survivors:
            if best_val == upper:
                break
            if emask[ei] & vbit:
                m = emask[ei]
                val, pick = solve([ej for ej in survivors if not emask[ej] & m])
                if val + 1 > best_val:
                    best_val = val + 1
                    best_pick = [ei] + pick
        memo[key] = (best_val, best_pick)
        return best_val, best_pick

    size, picks = solve(list(range(len(edges))))
    return MatchingCertificate(tuple(sorted(edges[ei] for ei in picks)),
                               size, True, nodes)


def greedy_matching(edges) -> list:
    """Maximal (not maximum) matching by first-fit over canonical edge order."""
    out = []
    used = set()
    for e in sorted(edges):
        if not used.intersection(e):
            out.append(tuple(e))
            used.update(e)
    return out


def max_fractional_lp(host, colour=None, component=None) -> FractionalMatching:
    """Optimal fractional matching with exact rational weights.

    Among the optima, greedily forces edges to zero in canonical order
    whenever doing so preserves the optimum, which selects the
    lexicographically smallest support.
    """
    edges = sorted(tuple(sorted(e)) for e in host)
    if not edges:
        return FractionalMatching(frozenset(), {}, colour, component)
    value, weights = lp.matching_lp(edges)
    excluded: set = set()
    for e in edges:
        if e not in weights:
            excluded.add(e)
            continue
        trial_value, trial_weights = lp.matching_lp(edges, excluded=excluded | {e})
        if trial_value == value:
            excluded.add(e)
            weights = trial_weights
    return FractionalMatching(frozenset(edges), weights, colour, component)


def max_r_fractional(host, r: int, node_cap: int = 100_000) -> FractionalMatching:
    """Maximum-weight 1/r-fractional matching (all weights multiples of 1/r).

    Solved as the integer program max sum(y) over y >= 0 with vertex loads
    at most r, by LP-based branch and bound: branch on the first edge with
    fractional LP weight, tightening its integer bounds.  Independent of
    the blow-up route, which makes the two usable as mutual oracles.
    """
    edges = sorted(tuple(sorted(e)) for e in host)
    if not edges:
        return FractionalMatching(frozenset(), {})
    caps = {v: Fraction(r) for e in edges for v in e}

    # greedy warm start: integral matching, weight 1 each = r units
    best_sol = {e: Fraction(r) for e in greedy_matching(edges)}
    best_val = sum(best_sol.values(), ZERO)
    nodes = 0

    def solve(lower: dict, upper: dict):
        nonlocal best_val, best_sol, nodes
        nodes += 1
        if nodes > node_cap:
            raise SearchCapExceeded(f"1/r optimiser exceeded {node_cap} nodes")
        excluded = frozenset(e for e, u in upper.items() if u == 0)
        value, weights = lp.matching_lp(edges, vertex_caps=caps, lower=lower,
                                        upper=upper, excluded=excluded)
        if value is None or value <= best_val:
            return
        frac = next((e for e in sorted(weights) if weights[e].denominator != 1), None)
        if frac is None:
            best_val = value
            best_sol = dict(weights)
            return
        w = weights[frac]
        floor_w = Fraction(w.numerator // w.denominator)
        down = dict(upper)
        down[frac] = floor_w
        solve(lower, down)
        up = dict(lower)
        up[frac] = floor_w + 1
        solve(up, upper)

    solve({}, {})
    weights = {e: w / r for e, w in sorted(best_sol.items()) if w}
    return FractionalMatching(frozenset(edges), weights)


def empty_intersection_matching(H, F) -> FractionalMatching:
    """Weight 1/(s-1) on each edge of a family F with empty intersection.

    With s = |F| and no common vertex, every vertex lies in at most s-1
    edges of F, so the vertex constraints hold and the weight is s/(s-1).
    """
    family = sorted(tuple(sorted(e)) for e in F)
    if not family:
        raise NonEmptyIntersection("family is empty")
    common = set(family[0])
    for e in family[1:]:
        common.intersection_update(e)
    if common:
        raise NonEmptyIntersection(f"family has common vertices {sorted(common)}")
    s = len(family)
    w = Fraction(1, s - 1)
    host = H.edges if isinstance(H, KGraph) else (
        H.graph.edges if isinstance(H, ColouredKGraph) else frozenset(
            tuple(sorted(e)) for e in H))
    phi = FractionalMatching(frozenset(host), {e: w for e in family})
    ok, violation = validate_fractional(None, phi)
    if not ok:
        raise NonEmptyIntersection(f"construction invalid: {violation}")
    return phi


@dataclass(frozen=True)
class MuEstimate:
    value: Fraction
    exact: bool
    components: tuple       # component ids realizing the value
    per_choice: tuple       # (component ids, value, exact) per candidate choice


def _floored_lp_exact(edges, beta, node_cap=50_000):
    """Exact optimum of the matching LP with the disjunctive constraint
    weight(e) = 0 or weight(e) >= beta, by branch and bound on violating edges."""
    best = [ZERO, {}]
    nodes = [0]

    def solve(floored: dict, excluded: frozenset):
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise SearchCapExceeded("floored LP exceeded node cap")
        value, weights = lp.matching_lp(edges, lower=floored, excluded=excluded)
        if value is None:
            return
        bad = next((e for e in sorted(weights)
                    if ZERO < weights[e] < beta and e not in floored), None)
        if bad is None:
            if value > best[0]:
                best[0] = value
                best[1] = weights
            return
        if value <= best[0]:
            return
        lo = dict(floored)
        lo[bad] = Fraction(beta)
        solve(lo, excluded)
        solve(floored, excluded | {bad})

    solve({}, frozenset())
    return best[0], best[1]


def mu_estimate(CH: ColouredKGraph, s: int, beta, exact_cap: int = 20) -> MuEstimate:
    """Best weight of a fractional matching supported on s monochromatic tight
    components with every nonzero weight at least beta.

    Exact (disjunctive branch and bound) when the chosen components carry at
    most exact_cap edges; otherwise the plain LP optimum is floored and the
    verified value is reported as a lower bound with exact=False unless the
    plain optimum already honours the floor.
    """
    if s < 1:
        raise Unsupported(f"s = {s} < 1")
    beta = Fraction(beta)
    decomp = monochromatic_components(CH)
    ncomp = len(decomp.components)
    if s > ncomp:
        raise Unsupported(f"s = {s} exceeds {ncomp} monochromatic components")
    choices = []
    for combo in itertools.combinations(range(ncomp), s):
        edges = sorted(set().union(*[decomp.components[c] for c in combo]))
        if len(edges) <= exact_cap:
            value, _ = _floored_lp_exact(edges, beta)
            choices.append((combo, value, True, value))
        else:
            value, weights = lp.matching_lp(edges)
            kept = {e: w for e, w in weights.items() if w >= beta}
            verified = sum(kept.values(), ZERO)
            choices.append((combo, verified, verified == value, value))
    best = max(choices, key=lambda t: (t[1], tuple(-c for c in t[0])))
    best_value = best[1]
    # exact overall when every choice is exact or certifiably below the best
    overall_exact = all(ex or upper <= best_value for _, _, ex, upper in choices)
    return MuEstimate(best_value, overall_exact, best[0],
                      tuple((c, v, ex) for c, v, ex, _ in choices))
