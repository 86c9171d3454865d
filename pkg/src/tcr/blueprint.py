"""Blueprints: auxiliary coloured (k-2)-graphs tracking monochromatic tight
components of a coloured k-graph.

Every blueprint edge e is assigned a same-colour tight component H(e) whose
shadow sees e with high degree (the degree condition), and same-colour edges
sharing k-3 vertices must agree on their component (the consistency
condition).  The checker is the contract; the constructor is a heuristic
that the checker must accept.

Shadow degrees are kept as vertex bitmasks (bit v set when e + v lies in the
shadow of the assigned component), which makes the good-edge and
suitable-pair predicates cheap set-membership tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import Optional

from .errors import ContractUnmet, HypothesisViolated, InconsistentWitness
from .hypergraph import Colour, ColouredKGraph, KGraph, edges_within, support_of
from .tight import TightDecomposition, UnionFind, monochromatic_components


def rational_sqrt_upper(x, denominator: int = 1000) -> Fraction:
    """Smallest m/denominator whose square is >= x (exact integer arithmetic)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    # smallest m with m^2 >= x * denominator^2
    target_num = x.numerator * denominator * denominator
    m = isqrt((target_num + x.denominator - 1) // x.denominator)
    while Fraction(m, denominator) ** 2 < x:
        m += 1
    return Fraction(m, denominator)


def blueprint_eps_for_density(eps) -> Fraction:
    """Blueprint quality achievable from a (1-eps, eps)-dense host: 3*sqrt(eps),
    rounded up to a rational so all later comparisons stay exact."""
    return 3 * rational_sqrt_upper(eps)


def pair_shadow_masks(decomp: TightDecomposition, k: int) -> dict:
    """component id -> {(k-2)-set: bitmask of z with set+z in the component's shadow}.

    z completes a (k-2)-set into the shadow through an edge exactly when
    both lie in that edge, so each edge contributes its complement bits to
    every (k-2)-subset."""
    out = {}
    for cid, comp in enumerate(decomp.components):
        masks = {}
        get = masks.get
        for e in comp:
            full = 0
            for v in e:
                full |= 1 << v
            for pair in itertools.combinations(e, k - 2):
                pbits = 0
                for v in pair:
                    pbits |= 1 << v
                masks[pair] = get(pair, 0) | (full ^ pbits)
        out[cid] = masks
    return out


@dataclass(frozen=True)
class Blueprint:
    graph: ColouredKGraph          # the coloured (k-2)-graph G
    eps: Fraction
    assign: dict                   # blueprint edge -> component id
    decomposition: TightDecomposition
    vertex_set: frozenset
    masks: dict                    # blueprint edge -> shadow bitmask of its component

    @property
    def k_maps(self) -> dict:
        """component id -> frozenset of blueprint edges assigned to it."""
        out = {}
        for e, cid in self.assign.items():
            out.setdefault(cid, set()).add(e)
        return {cid: frozenset(s) for cid, s in out.items()}

    def pairs_of_colour(self, colour: Colour) -> list:
        return [e for e in self.graph.graph.sorted_edges if self.graph.colour[e] is colour]

    def pair(self, a: int, b: int):
        return (a, b) if a < b else (b, a)

    def has_pair(self, a: int, b: int) -> bool:
        return self.pair(a, b) in self.assign

    def in_shadow(self, pair, z: int) -> bool:
        """z completes the blueprint edge into the shadow of its component."""
        mask = self.masks.get(pair)
        return mask is not None and bool(mask >> z & 1)

    def min_degree(self) -> int:
        deg = {v: 0 for v in self.vertex_set}
        for e in self.assign:
            for v in e:
                deg[v] += 1
        return min(deg.values()) if deg else 0


def make_blueprint(CH: ColouredKGraph, eps, assign,
                   decomposition: Optional[TightDecomposition] = None,
                   comp_masks: Optional[dict] = None) -> Blueprint:
    """Assemble a Blueprint from an edge->component assignment.

    Edge colours are inherited from the assigned components; shadow masks
    are computed once (or taken from comp_masks) and cached on the object.
    """
    decomp = decomposition or monochromatic_components(CH)
    if comp_masks is None:
        comp_masks = pair_shadow_masks(decomp, CH.k)
    colour = {}
    masks = {}
    for e, cid in assign.items():
        e = tuple(sorted(e))
        if cid < 0 or cid >= len(decomp.components):
            raise InconsistentWitness(f"assignment of {e} to unknown component {cid}")
        colour[e] = decomp.colour(cid)
        masks[e] = comp_masks[cid].get(e, 0)
    g = ColouredKGraph(KGraph(CH.k - 2, CH.n, frozenset(colour)), colour)
    vertex_set = frozenset(support_of(colour))
    return Blueprint(g, Fraction(eps), dict(sorted(assign.items())), decomp,
                     vertex_set, masks)


@dataclass(frozen=True)
class BlueprintCheck:
    ok: bool
    violations: tuple  # dict records naming the offending edge or pair


def check_blueprint(CH: ColouredKGraph, bp: Blueprint) -> BlueprintCheck:
    """Verify colour agreement, the shadow-degree condition at bp.eps, and
    pairwise component consistency.  Everything is recomputed from CH."""
    decomp = monochromatic_components(CH)
    comp_masks = pair_shadow_masks(decomp, CH.k)
    violations = []
    threshold = (1 - Fraction(bp.eps)) * CH.n
    for e, cid in bp.assign.items():
        if cid >= len(decomp.components):
            violations.append({"kind": "unknown_component", "edge": e, "component": cid})
            continue
        col = decomp.colour(cid)
        if bp.graph.colour[e] is not col:
            violations.append({"kind": "colour_mismatch", "edge": e, "component": cid})
        degree = comp_masks[cid].get(e, 0).bit_count()
        if degree < threshold:
            violations.append({"kind": "degree", "edge": e, "degree": degree,
                               "threshold": threshold})
    by_vertex_colour = {}
    for e, cid in bp.assign.items():
        col = bp.graph.colour[e]
        for v in e:
            by_vertex_colour.setdefault((v, col), []).append((e, cid))
    for (v, col), members in sorted(by_vertex_colour.items(),
                                    key=lambda t: (t[0][0], t[0][1].value)):
        cids = {cid for _, cid in members}
        if len(cids) > 1:
            first = sorted(members)[0]
            other = next(m for m in sorted(members) if m[1] != first[1])
            violations.append({"kind": "consistency", "pair": (first[0], other[0]),
                               "components": (first[1], other[1])})
    return BlueprintCheck(not violations, tuple(violations))


@dataclass(frozen=True)
class BlueprintBuild:
    blueprint: Blueprint
    omitted: tuple      # pairs with no component meeting the degree condition
    discarded: tuple    # pairs dropped by the consistency pass
    coverage: int


def build_blueprint(CH: ColouredKGraph, eps, bp_eps=None) -> BlueprintBuild:
    """Heuristic constructor.

    For each (k-2)-set, take the monochromatic component maximizing its
    shadow degree per colour, keep the better colour (ties red) when it
    meets the degree threshold, then enforce consistency within each
    same-colour connected group by keeping the majority assignment.
    """
    bp_eps = Fraction(bp_eps) if bp_eps is not None else blueprint_eps_for_density(eps)
    decomp = monochromatic_components(CH)
    comp_masks = pair_shadow_masks(decomp, CH.k)
    threshold = (1 - bp_eps) * CH.n
    red_cids = [c for c in range(len(decomp.components)) if decomp.colour(c) is Colour.RED]
    blue_cids = [c for c in range(len(decomp.components)) if decomp.colour(c) is Colour.BLUE]

    chosen = {}
    omitted = []
    for pair in itertools.combinations(range(1, CH.n + 1), CH.k - 2):
        best = {}
        for colour, cids in ((Colour.RED, red_cids), (Colour.BLUE, blue_cids)):
            top = None
            for cid in cids:
                d = comp_masks[cid].get(pair, 0).bit_count()
                if top is None or d > top[0]:
                    top = (d, cid)
            if top is not None and top[0] >= threshold:
                best[colour] = top
        if not best:
            omitted.append(pair)
            continue
        if Colour.RED in best and (Colour.BLUE not in best
                                   or best[Colour.RED][0] >= best[Colour.BLUE][0]):
            chosen[pair] = best[Colour.RED][1]
        else:
            chosen[pair] = best[Colour.BLUE][1]

    # consistency pass: same-colour connected groups keep the majority component
    discarded = []
    keep = {}
    for colour in (Colour.RED, Colour.BLUE):
        pairs = sorted(p for p, cid in chosen.items() if decomp.colour(cid) is colour)
        verts = sorted({v for p in pairs for v in p})
        vindex = {v: i for i, v in enumerate(verts)}
        uf = UnionFind(len(verts))
        for p in pairs:
            for a, b in zip(p, p[1:]):
                uf.union(vindex[a], vindex[b])
        groups = {}
        for p in pairs:
            groups.setdefault(uf.find(vindex[p[0]]), []).append(p)
        for members in groups.values():
            counts = {}
            for p in members:
                counts[chosen[p]] = counts.get(chosen[p], 0) + 1
            majority = min(cid for cid, c in counts.items()
                           if c == max(counts.values()))
            for p in members:
                if chosen[p] == majority:
                    keep[p] = majority
                else:
                    discarded.append(p)

    bp = make_blueprint(CH, bp_eps, keep, decomp, comp_masks)
    return BlueprintBuild(bp, tuple(sorted(omitted)), tuple(sorted(discarded)), len(keep))


@dataclass(frozen=True)
class TrimResult:
    vertices: tuple
    colour: Colour
    spanning_edges: tuple   # the spanning monochromatic component's edges
    induced_edges: tuple    # all edges of F inside the kept vertices
    min_degree: int


def _mono_2graph_components(edges, vertices) -> list:
    """Connected components (as vertex frozensets with their edges) of a 2-graph."""
    verts = sorted(vertices)
    vindex = {v: i for i, v in enumerate(verts)}
    uf = UnionFind(len(verts))
    for a, b in edges:
        uf.union(vindex[a], vindex[b])
    groups = {}
    for a, b in edges:
        root = uf.find(vindex[a])
        groups.setdefault(root, [set(), []])
        groups[root][0].update((a, b))
        groups[root][1].append((a, b))
    return [(frozenset(vs), tuple(sorted(es))) for vs, es in
            sorted(groups.values(), key=lambda g: min(g[0]))]


def trim_spanning_component(F: ColouredKGraph, eps) -> TrimResult:
    """Shrink a dense coloured 2-graph to an induced subgraph with a spanning
    monochromatic component and high minimum degree.

    Vertices are deleted one at a time: lowest degree first while the degree
    target fails, then vertices missed by the largest monochromatic
    component.  Square comparisons keep the sqrt thresholds exact.  Fails
    loudly when the order floor would be crossed.
    """
    if F.k != 2:
        raise ValueError("trim operates on coloured 2-graphs")
    eps = Fraction(eps)
    n = F.n
    if F.graph.m < (1 - eps) * comb(n, 2):
        raise ValueError(
            f"edge count {F.graph.m} below (1-eps) * C({n},2) = {(1 - eps) * comb(n, 2)}")

    def order_ok(size: int) -> bool:
        # size >= (1 - 3 sqrt(eps)) n  <=>  (n - size)^2 <= 9 eps n^2 (or size >= n)
        d = n - size
        return d <= 0 or Fraction(d * d) <= 9 * eps * n * n

    def degree_ok(delta: int) -> bool:
        d = n - delta
        return d <= 0 or Fraction(d * d) <= 36 * eps * n * n

    kept = set(support_of(F.graph.edges))
    while True:
        edges = [e for e in F.graph.sorted_edges if kept.issuperset(e)]
        deg = {v: 0 for v in kept}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        if kept and not degree_ok(min(deg.values())):
            victim = min(kept, key=lambda v: (deg[v], v))
            if not order_ok(len(kept) - 1):
                raise ContractUnmet("degree target unreachable above the order floor")
            kept.remove(victim)
            continue
        best_comp = None
        for colour in (Colour.RED, Colour.BLUE):
            mono = [e for e in edges if F.colour[tuple(e)] is colour]
            for comp_vs, comp_es in _mono_2graph_components(mono, kept):
                if best_comp is None or len(comp_vs) > len(best_comp[0]):
                    best_comp = (comp_vs, comp_es, colour)
                if comp_vs == frozenset(kept):
                    return TrimResult(tuple(sorted(kept)), colour, comp_es,
                                      tuple(edges), min(deg.values()))
        if best_comp is None:
            raise ContractUnmet("no monochromatic component at all")
        uncovered = sorted(kept - best_comp[0])
        if not order_ok(len(kept) - 1):
            raise ContractUnmet("spanning component unreachable above the order floor")
        kept.remove(uncovered[0])


def blueprint_blowup(bp: Blueprint, bmap, blown_ch: Optional[ColouredKGraph] = None):
    """Blow up a blueprint along a BlowUpMap.

    Each blueprint edge's clones are assigned to the blow-up of its base
    component; the result passes the checker at the same eps.  Returns
    (blown graph, blown blueprint).
    """
    from .blowup import blow_up
    if blown_ch is None:
        blown_ch, _ = blow_up(bmap.base, bmap.r)
    blown_decomp = monochromatic_components(blown_ch)
    cid_map = {}
    for cid, comp in enumerate(bp.decomposition.components):
        f = min(comp)
        e_star = tuple(sorted(bmap.classes[x][0] for x in f))
        cid_map[cid] = blown_decomp.component_of[e_star]
    assign = {}
    for e, cid in bp.assign.items():
        blown_cid = cid_map[cid]
        for combo in itertools.product(*(bmap.classes[x] for x in e)):
            assign[tuple(sorted(combo))] = blown_cid
    blown_bp = make_blueprint(blown_ch, bp.eps, assign, blown_decomp)
    return blown_ch, blown_bp


def good_flags(CH: ColouredKGraph, bp: Blueprint, f) -> tuple:
    """(g1, g2, g3): f inside V(G); blueprint complete on f; some z in f sees
    every remaining pair through its component's shadow."""
    f = tuple(sorted(f))
    g1 = bp.vertex_set.issuperset(f)
    pairs = list(itertools.combinations(f, 2))
    g2 = all(p in bp.assign for p in pairs)
    g3 = False
    if g2:
        for z in f:
            rest = [v for v in f if v != z]
            if all(bp.in_shadow(p, z) for p in itertools.combinations(rest, 2)):
                g3 = True
                break
    return g1, g2, g3


def is_good(CH: ColouredKGraph, bp: Blueprint, f) -> bool:
    return all(good_flags(CH, bp, f))


def good_edges(CH: ColouredKGraph, bp: Blueprint, host) -> frozenset:
    """The subset of host edges that are good for (H, G)."""
    if CH.k != 4:
        raise ValueError("good edges are defined for 4-graphs")
    return frozenset(e for e in host if is_good(CH, bp, e))


@dataclass(frozen=True)
class SuitablePairReport:
    f: tuple
    W: tuple
    sp: tuple          # six booleans
    good: tuple        # (g1, g2, g3) for f
    suitable: bool


def is_suitable_pair(CH: ColouredKGraph, bp: Blueprint, f, W) -> SuitablePairReport:
    """Flag-by-flag suitability of (f, W); suitable iff f is good and the
    completeness and shadow conditions all hold."""
    f = tuple(sorted(f))
    W = tuple(sorted(W))
    if set(f) & set(W):
        raise ValueError("f and W must be disjoint")
    if not W:
        raise ValueError("W must be nonempty")
    if not bp.vertex_set.issuperset(W):
        raise ValueError("W must lie inside V(G)")
    union = tuple(sorted(f + W))
    edges = CH.graph.edges
    sp1 = all(tuple(sub) in edges for sub in itertools.combinations(union, 4))
    sp2 = all(p in bp.assign for p in itertools.combinations(union, 2))
    sp3 = all(bp.in_shadow(p, z)
              for p in itertools.combinations(f, 2) for z in W
              if p in bp.assign) and sp2
    sp4 = all(bp.in_shadow(p, z)
              for p in itertools.combinations(W, 2) for z in f
              if p in bp.assign) and sp2
    sp5 = True
    for x in f:
        for y, z in itertools.permutations(W, 2):
            p = bp.pair(x, y)
            if p not in bp.assign or not bp.in_shadow(p, z):
                sp5 = False
                break
        if not sp5:
            break
    sp6 = True
    for T in itertools.combinations(W, 3):
        tset = set(T)
        for p in itertools.combinations(T, 2):
            (z,) = tset.difference(p)
            if p not in bp.assign or not bp.in_shadow(p, z):
                sp6 = False
                break
        if not sp6:
            break
    good = good_flags(CH, bp, f)
    flags = (sp1, sp2, sp3, sp4, sp5, sp6)
    return SuitablePairReport(f, W, flags, good, all(flags) and all(good))


def three_vertex_extension(CH: ColouredKGraph, bp: Blueprint, T1, T2, W):
    """Greedy choice of z1, z2, z3 in W making every edge of H on
    T_i + {z1, z2, z3} good, for both seed sets at once.

    Each z must extend all current triples to edges, stay blueprint-adjacent
    to everything so far, and land in the shadow of every current pair's
    component.  Returns the triple or None when the greedy choice dies; the
    connection search in the growth engine relies on the same conditions.
    """
    T1 = tuple(sorted(T1))
    T2 = tuple(sorted(T2))
    for T in (T1, T2):
        if not 2 <= len(T) <= 4:
            raise HypothesisViolated(f"seed {T} must have 2 to 4 vertices")
        if not bp.vertex_set.issuperset(T):
            raise HypothesisViolated(f"seed {T} leaves V(G)")
    edges = CH.graph.edges
    chosen = []

    def admissible(z, seeds):
        for seed in seeds:
            base = tuple(sorted(set(seed) | set(chosen)))
            if z in base:
                return False
            for S in itertools.combinations(base, 3):
                if tuple(sorted(S + (z,))) not in edges:
                    return False
            for x in base:
                if bp.pair(x, z) not in bp.assign:
                    return False
            for p in itertools.combinations(base, 2):
                if not bp.in_shadow(p, z):
                    return False
        return True

    for _ in range(3):
        z = next((w for w in sorted(W) if w not in chosen
                  and admissible(w, (T1, T2))), None)
        if z is None:
            return None
        chosen.append(z)
    return tuple(chosen)


@dataclass(frozen=True)
class SampleResult:
    pairs: tuple       # ((f, W_f), ...) pairwise disjoint, each verified suitable
    exhausted: bool    # fewer than `want` found within the retry budget


def sample_suitable_pairs(CH: ColouredKGraph, bp: Blueprint, M, W, s: int,
                          want: int, rng, attempts_per: int = 60) -> SampleResult:
    """Randomized search for `want` pairwise-disjoint suitable pairs, each an
    M-edge plus an s-subset of W, verified by is_suitable_pair."""
    m_avail = sorted(tuple(sorted(e)) for e in M)
    w_avail = sorted(set(W))
    found = []
    budget = max(1, want) * attempts_per
    while len(found) < want and budget > 0 and m_avail and len(w_avail) >= s:
        budget -= 1
        f = rng.choice(m_avail)
        wf = tuple(sorted(rng.sample(w_avail, s)))
        report = is_suitable_pair(CH, bp, f, wf)
        if report.suitable:
            found.append((f, wf))
            m_avail.remove(f)
            for v in wf:
                w_avail.remove(v)
    return SampleResult(tuple(found), len(found) < want)


@dataclass(frozen=True)
class BWResult:
    component: int      # the attached blue component
    triples: tuple      # the witness triple family inside W
    gamma: dict         # triple -> tuple of attachment vertices


def compute_B_W(CH: ColouredKGraph, bp: Blueprint, R_id: int, W) -> BWResult:
    """The blue tight component attached to an uncovered set W with no good
    red edge inside.

    Witness triples are the blueprint triangles in W carrying a red pair
    and a nonzero degree; each of their attachment vertices must complete
    them into one common blue component, which must also receive every blue
    blueprint edge inside W.  Hypotheses are checked, not assumed.
    """
    W = tuple(sorted(set(W)))
    wset = set(W)
    if not bp.vertex_set.issuperset(wset):
        raise HypothesisViolated("W must lie inside V(G)")
    for e in bp.pairs_of_colour(Colour.RED):
        if bp.assign[e] != R_id:
            raise HypothesisViolated(
                f"red blueprint edge {e} induces component {bp.assign[e]}, not {R_id}")
    decomp = bp.decomposition
    red_good_inside = [e for e in edges_within(decomp.edges_of(R_id), wset)
                       if is_good(CH, bp, e)]
    if red_good_inside:
        raise HypothesisViolated(
            f"good red edge {red_good_inside[0]} inside W")

    edges = CH.graph.edges
    triples = []
    for T in itertools.combinations(W, 3):
        pairs = list(itertools.combinations(T, 2))
        if not all(p in bp.assign for p in pairs):
            continue
        if not any(bp.graph.colour[p] is Colour.RED for p in pairs):
            continue
        if not any(tuple(sorted(T + (w,))) in edges for w in range(1, CH.n + 1)
                   if w not in T):
            continue
        triples.append(T)

    candidates = {}

    def note(cid, reason):
        candidates.setdefault(cid, reason)

    gamma = {}
    for T in triples:
        tset = set(T)
        hits = []
        for w in W:
            if w in tset:
                continue
            if not all(bp.pair(x, w) in bp.assign for x in T):
                continue
            if not all(bp.in_shadow(p, w) for p in itertools.combinations(T, 2)):
                continue
            if tuple(sorted(T + (w,))) not in edges:
                continue
            hits.append(w)
        gamma[T] = tuple(hits)
        if not hits:
            raise InconsistentWitness(f"triple {T} has no attachment vertex")
        for w in hits:
            edge = tuple(sorted(T + (w,)))
            if CH.colour[edge] is Colour.RED:
                raise HypothesisViolated(
                    f"attachment edge {edge} is red (good red edge inside W)")
            note(decomp.component_of[edge], ("triple", T, w))

    for p in edges_within(bp.assign, wset):
        if bp.graph.colour[p] is Colour.BLUE:
            note(bp.assign[p], ("blue_pair", p))

    if not candidates:
        raise InconsistentWitness("no structure inside W determines a blue component")
    if len(candidates) > 1:
        items = sorted(candidates.items())
        raise InconsistentWitness(
            f"conflicting blue components {items[0][0]} ({items[0][1]}) "
            f"vs {items[1][0]} ({items[1][1]})")
    (b_id,) = candidates
    # full verification of the attachment property: every attachment edge is
    # a good edge of the attached component
    for T, hits in gamma.items():
        for w in hits:
            edge = tuple(sorted(T + (w,)))
            if decomp.component_of[edge] != b_id or not is_good(CH, bp, edge):
                raise InconsistentWitness(
                    f"attachment edge {edge} not good in component {b_id}")
    return BWResult(b_id, tuple(triples), gamma)


def local_pivot(CH: ColouredKGraph, bp: Blueprint, R_id: int, f, W, e) -> int:
    """The pivot vertex of f: with (f, W) suitable, |W| = 3, a red blueprint
    edge e inside W, and the edges of the red component inside f + W sharing
    a vertex, some x in f lies in every red edge of H[f + W] containing e;
    every edge containing e and avoiding x is then blue.  Verified before
    returning; the smallest valid pivot is returned."""
    f = tuple(sorted(f))
    W = tuple(sorted(W))
    e = tuple(sorted(e))
    if len(W) != 3:
        raise HypothesisViolated(f"|W| = {len(W)}, expected 3")
    report = is_suitable_pair(CH, bp, f, W)
    if not report.suitable:
        raise HypothesisViolated(f"(f, W) not suitable: sp={report.sp} good={report.good}")
    decomp = bp.decomposition
    if decomp.component_of.get(f) != R_id or not is_good(CH, bp, f):
        raise HypothesisViolated(f"f = {f} is not a good edge of component {R_id}")
    if not set(e).issubset(W) or bp.assign.get(e) != R_id:
        raise HypothesisViolated(f"e = {e} is not a component-{R_id} blueprint edge in W")
    union = set(f) | set(W)
    comp_edges = edges_within(decomp.edges_of(R_id), union)
    common = set(f) | set(W)
    for edge in comp_edges:
        common.intersection_update(edge)
    if comp_edges and not common:
        raise HypothesisViolated("component edges inside f + W have empty intersection")
    red_with_e = [edge for edge in edges_within(CH.graph.edges, union)
                  if set(e).issubset(edge) and CH.colour[edge] is Colour.RED]
    pivot_pool = set(f)
    for edge in red_with_e:
        pivot_pool.intersection_update(edge)
    for x in sorted(pivot_pool):
        if all(CH.colour[edge] is Colour.BLUE
               for edge in edges_within(CH.graph.edges, union)
               if set(e).issubset(edge) and x not in edge):
            return x
    raise InconsistentWitness("no pivot vertex satisfies the conclusion")
