"""Extremal colourings and certificate-producing absence verifiers.

The split colouring (every edge meeting X red, the rest blue) blocks long
monochromatic tight cycles through matching bounds; the parity colouring
(edges with an even intersection with X red) blocks them through a
per-component counting argument on the constant |e ∩ X| profile.  Both
certificates are re-verifiable from the colouring alone, and tiny cases are
cross-checked by exhaustive search.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, gcd
from typing import Optional

from .errors import SearchCapExceeded, SizeCapExceeded, TcrError
from .hypergraph import Colour, ColouredKGraph, build, support_of
from .tight import (Absent, cycle_windows, find_tight_cycle,
                    find_tight_path, monochromatic_components, path_windows)

DEFAULT_EDGE_CAP = 250_000


class ProfileNotConstant(TcrError):
    """A monochromatic tight component mixes |e ∩ X| profiles; this would
    falsify the counting argument and must not occur for parity colourings."""


@dataclass(frozen=True)
class ExtremalSpec:
    kind: str            # "split" | "parity"
    k: int
    n: int
    i: int
    d: int
    N: int
    X: tuple
    Y: tuple

    @property
    def length(self) -> int:
        return self.k * self.n + self.i


def split_coloring(k: int, n: int, edge_cap: int = DEFAULT_EDGE_CAP):
    """K_N minus nothing, N = (k+1)n - 2: edges meeting X = [n-1] red, others blue."""
    if k < 2 or n < 2:
        raise ValueError("need k, n >= 2")
    N = (k + 1) * n - 2
    if comb(N, k) > edge_cap:
        raise SizeCapExceeded(f"C({N},{k}) exceeds cap {edge_cap}")
    x_top = n - 1
    edges = []
    for e in itertools.combinations(range(1, N + 1), k):
        edges.append(("R" if e[0] <= x_top else "B", e))
    CH = build(k, N, edges)
    spec = ExtremalSpec("split", k, n, 0, gcd(k, 0), N,
                        tuple(range(1, x_top + 1)), tuple(range(x_top + 1, N + 1)))
    return CH, spec


def parity_coloring(k: int, n: int, i: int, edge_cap: int = DEFAULT_EDGE_CAP):
    """N = ((d+1)/d) k n - 2 with d = gcd(k, i); |X| = (k/d) n - 1; an edge is
    red iff it has an even number of vertices in X."""
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    if not 0 <= i <= k - 1:
        raise ValueError(f"need 0 <= i <= k-1, got i = {i}")
    d = gcd(k, i)
    N = (d + 1) * k * n // d - 2
    if comb(N, k) > edge_cap:
        raise SizeCapExceeded(f"C({N},{k}) exceeds cap {edge_cap}")
    x_size = k * n // d - 1
    xset = set(range(1, x_size + 1))
    edges = []
    for e in itertools.combinations(range(1, N + 1), k):
        meet = sum(1 for v in e if v in xset)
        edges.append(("R" if meet % 2 == 0 else "B", e))
    CH = build(k, N, edges)
    spec = ExtremalSpec("parity", k, n, i, d, N,
                        tuple(sorted(xset)), tuple(range(x_size + 1, N + 1)))
    return CH, spec


@dataclass(frozen=True)
class AbsenceCertificate:
    ok: bool                 # True when absence is proven
    method: str              # matching-bound | divisibility | exhaustive
    length: int
    details: tuple           # re-verifiable records
    witness: Optional[tuple] = None   # a monochromatic cycle when ok is False


def _component_profile(component, xset) -> Optional[int]:
    """|e ∩ X| when constant across the component, else None."""
    profile = None
    for e in sorted(component):
        r1 = sum(1 for v in e if v in xset)
        if profile is None:
            profile = r1
        elif profile != r1:
            return None
    return profile


def verify_no_mono_cycle(CH: ColouredKGraph, spec: ExtremalSpec,
                         length: int) -> AbsenceCertificate:
    """Prove (or refute, with a witness) that no colour class contains a
    tight cycle on `length` vertices."""
    if length != spec.length:
        raise ValueError(f"length {length} != k*n + i = {spec.length}")
    xset = set(spec.X)
    k = spec.k
    if spec.kind == "split":
        # a tight cycle on length = kn vertices contains n disjoint edges;
        # both colour classes cap monochromatic matchings at n - 1
        needed = spec.n
        bad_red = [e for e in CH.edges_of(Colour.RED) if not xset.intersection(e)]
        bad_blue = [e for e in CH.edges_of(Colour.BLUE) if xset.intersection(e)]
        if bad_red or bad_blue:
            raise ProfileNotConstant(
                f"colouring disagrees with the split rule: {bad_red[:2]} {bad_blue[:2]}")
        details = (
            {"colour": "R", "bound": "every red edge meets X",
             "max_matching": len(spec.X), "needed": needed},
            {"colour": "B", "bound": "blue edges live inside Y",
             "max_matching": len(spec.Y) // k, "needed": needed},
        )
        ok = len(spec.X) < needed and len(spec.Y) // k < needed
        return AbsenceCertificate(ok, "matching-bound", length, details)

    # a genuine parity colouring forces constant |e ∩ X| per component;
    # profile mixing is a hard error only when the rule itself holds
    rule_ok = all((CH.colour[e] is Colour.RED)
                  == (sum(1 for v in e if v in xset) % 2 == 0)
                  for e in CH.graph.sorted_edges)
    decomp = monochromatic_components(CH)
    details = []
    for cid, comp in enumerate(decomp.components):
        colour = decomp.colour(cid)
        r1 = _component_profile(comp, xset)
        support = len(support_of(comp))
        record = {"component": cid, "colour": colour.value, "r1": r1,
                  "support": support}
        if r1 is None and rule_ok:
            raise ProfileNotConstant(f"component {cid} mixes |e ∩ X| profiles")
        if support < length:
            record["blocked_by"] = "support"
        elif r1 is not None and (r1 * length) % k != 0:
            record["blocked_by"] = "divisibility"
        else:
            blocked = None
            if r1 is not None:
                x_needed = r1 * length // k
                y_needed = (k - r1) * length // k
                if x_needed > len(spec.X):
                    blocked = ("x_capacity", x_needed)
                elif y_needed > len(spec.Y):
                    blocked = ("y_capacity", y_needed)
            if blocked is not None:
                record["blocked_by"] = blocked[0]
                record[blocked[0].split("_")[0] + "_needed"] = blocked[1]
            else:
                result = find_tight_cycle(CH.graph, length, within=cid,
                                          decomposition=decomp)
                if isinstance(result, Absent):
                    record["blocked_by"] = "exhaustive"
                    record["explored"] = result.explored
                else:
                    details.append(record)
                    return AbsenceCertificate(False, "divisibility", length,
                                              tuple(details),
                                              witness=result.ordering)
        details.append(record)
    return AbsenceCertificate(True, "divisibility", length, tuple(details))


@dataclass(frozen=True)
class TargetSpec:
    kind: str       # "cycle" | "path"
    length: int


def _target_copies(k: int, N: int, target: TargetSpec) -> list:
    """All copies of the target in K_N^(k), each as a frozenset of window edges."""
    copies = []
    ell = target.length
    if target.kind == "cycle":
        for verts in itertools.combinations(range(1, N + 1), ell):
            rest = verts[1:]
            for perm in itertools.permutations(rest):
                if perm[0] > perm[-1]:
                    continue   # reflection
                ordering = (verts[0],) + perm
                copies.append(frozenset(cycle_windows(ordering, k)))
    else:
        for verts in itertools.combinations(range(1, N + 1), ell):
            for perm in itertools.permutations(verts):
                if perm[0] > perm[-1]:
                    continue
                copies.append(frozenset(path_windows(perm, k)))
    return sorted(set(copies), key=sorted)


@dataclass(frozen=True)
class RamseyResult:
    all_coloured: bool
    counterexample: Optional[ColouredKGraph]
    nodes: int
    prunes: int
    seeded: bool


def _verify_counterexample(CH: ColouredKGraph, target: TargetSpec) -> bool:
    for colour in (Colour.RED, Colour.BLUE):
        sub = CH.monochromatic_subgraph(colour)
        if target.kind == "cycle":
            res = find_tight_cycle(sub, target.length)
        else:
            res = find_tight_path(sub, target.length)
        if not isinstance(res, Absent):
            return False
    return True


def _seed_colourings(k: int, N: int, target: TargetSpec):
    """Extremal-style candidate colourings at size N."""
    ell = target.length
    n = -(-ell // k)   # ceil
    seeds = []
    if 1 <= n - 1 < N:
        x_top = n - 1
        seeds.append([("R" if e[0] <= x_top else "B", e)
                      for e in itertools.combinations(range(1, N + 1), k)])
    for i in (ell % k,):
        d = gcd(k, i)
        x_size = k * n // d - 1
        if 1 <= x_size < N:
            seeds.append([("R" if sum(1 for v in e if v <= x_size) % 2 == 0 else "B", e)
                          for e in itertools.combinations(range(1, N + 1), k)])
    return seeds


def ramsey_search_tiny(k: int, target: TargetSpec, N: int,
                       allow_seeds: bool = True) -> RamseyResult:
    """Decide whether every red/blue colouring of K_N^(k) contains a
    monochromatic target.

    Known extremal-style colourings are tried first; a verified one is a
    counterexample certificate by itself.  Otherwise the search extends
    colourings edge-at-a-time in colex order with early monochromatic-copy
    pruning and lexicographic canonicity checks at complete-prefix depths.
    Exhaustive verdicts are limited to k = 2, N <= 7 and k >= 3, N <= 6.
    """
    if target.length > N:
        # the target does not fit; the empty statement is witnessed by any colouring
        all_red = build(k, N, [("R", e) for e in
                               itertools.combinations(range(1, N + 1), k)])
        return RamseyResult(False, all_red, 0, 0, True)
    if allow_seeds:
        for seed in _seed_colourings(k, N, target):
            CH = build(k, N, seed)
            if len(support_of(CH.graph.edges)) <= 14 and _verify_counterexample(CH, target):
                return RamseyResult(False, CH, 0, 0, True)
    if not (k == 2 and N <= 7 or k >= 3 and N <= 6):
        raise SizeCapExceeded(
            f"exhaustive verdict needs k=2, N<=7 or k>=3, N<=6; got k={k}, N={N}")

    # colex edge order makes every prefix C(t, k) an induced complete K_t
    edges = sorted(itertools.combinations(range(1, N + 1), k),
                   key=lambda e: tuple(reversed(e)))
    eindex = {e: i for i, e in enumerate(edges)}
    copies = _target_copies(k, N, target)
    by_edge = {e: [] for e in edges}
    remaining = []   # per copy per colour: how many edges still missing
    for ci, copy in enumerate(copies):
        remaining.append({Colour.RED: len(copy), Colour.BLUE: len(copy)})
        for e in copy:
            by_edge[e].append(ci)

    # at depth C(t, k) the assigned edges are exactly K_t, so permutations of
    # [t] act on the prefix; store the inverse index maps for lex comparison
    checkpoints = {}
    for t in range(k + 1, N + 1):
        depth = comb(t, k)
        inverses = []
        for perm in itertools.permutations(range(1, t + 1)):
            inv = [0] * depth
            for e in edges[:depth]:
                img = tuple(sorted(perm[v - 1] for v in e))
                inv[eindex[img]] = eindex[e]
            inverses.append(tuple(inv))
        checkpoints[depth] = tuple(inverses)

    colours = [None] * len(edges)
    nodes = 0
    prunes = 0

    def canonical(depth: int) -> bool:
        # reject the prefix when some relabelling gives a lex-smaller word
        # (red < blue); relabelled word at j is colours[inv[j]]
        for inv in checkpoints.get(depth, ()):
            for j in range(depth):
                a = colours[inv[j]]
                b = colours[j]
                if a is b:
                    continue
                if a is Colour.RED:
                    return False
                break
        return True

    def assign(idx: int) -> Optional[list]:
        nonlocal nodes, prunes
        if idx == len(edges):
            return list(colours)
        e = edges[idx]
        options = (Colour.RED,) if idx == 0 else (Colour.RED, Colour.BLUE)
        for colour in options:
            nodes += 1
            colours[idx] = colour
            completed = False
            touched = []
            for ci in by_edge[e]:
                remaining[ci][colour] -= 1
                touched.append(ci)
                if remaining[ci][colour] == 0:
                    completed = True
            if completed or not canonical(idx + 1):
                prunes += 1
            else:
                res = assign(idx + 1)
                if res is not None:
                    for ci in touched:
                        remaining[ci][colour] += 1
                    colours[idx] = None
                    return res
            for ci in touched:
                remaining[ci][colour] += 1
            colours[idx] = None
        return None

    res = assign(0)
    if res is None:
        return RamseyResult(True, None, nodes, prunes, False)
    CH = build(k, N, [(c.value, e) for c, e in zip(res, edges)])
    if not _verify_counterexample(CH, target):
        raise SearchCapExceeded("search produced an unverifiable colouring")
    return RamseyResult(False, CH, nodes, prunes, False)
