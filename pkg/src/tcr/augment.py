"""The matching-growth engine: initial good matching, one augmentation step,
and the outer driver producing a heavy monochromatic tightly connected
fractional matching.

The driver canonicalizes colours so the blueprint's spanning component is
red and works with exact rational weights throughout; iterated blow-ups are
replaced by direct fractional bookkeeping (the conversions live in the
blowup module and are cross-tested against this path).  A step that cannot
certify the required gain returns a structured trace naming the first
failing claim instead of forcing an answer.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .blueprint import (Blueprint, build_blueprint, compute_B_W, is_good,
                        is_suitable_pair, local_pivot, make_blueprint,
                        sample_suitable_pairs, trim_spanning_component)
from .errors import HypothesisViolated, InconsistentWitness, TcrError
from .hypergraph import Colour, ColouredKGraph, density_check, edges_within
from .matchings import (FractionalMatching, from_matching, greedy_matching,
                        validate_fractional)

ZERO = Fraction(0)
ONE = Fraction(1)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class DriverParams:
    """Finite stand-ins for the asymptotic constant hierarchy.

    Values are configuration, surfaced in every report; they are not claims
    about any limit.  Requires 0 < eps < gamma < delta < eta < 1.
    """

    eps: Fraction = Fraction(1, 50)
    gamma: Fraction = Fraction(1, 20)
    delta: Fraction = Fraction(1, 10)
    eta: Fraction = Fraction(3, 20)
    c: Fraction = Fraction(1, 100)
    iteration_cap: int = 25
    sample_attempts: int = 60

    def __post_init__(self):
        vals = (Fraction(self.eps), Fraction(self.gamma), Fraction(self.delta),
                Fraction(self.eta))
        for name, v in zip(("eps", "gamma", "delta", "eta"), vals):
            object.__setattr__(self, name, v)
        object.__setattr__(self, "c", Fraction(self.c))
        if not (0 < self.eps < self.gamma < self.delta < self.eta < 1):
            raise ValueError("need 0 < eps < gamma < delta < eta < 1")

    def scale_n(self, N: int) -> Fraction:
        """The matching-scale parameter n with N = (5/4 + 3 eta) n."""
        return Fraction(N) / (Fraction(5, 4) + 3 * self.eta)


@dataclass
class AugmentationState:
    matching: tuple           # current good matching, canonical order
    colour: Colour
    component: int
    trace: list = field(default_factory=list)


@dataclass(frozen=True)
class InitialOutcome:
    status: str               # ok | target_reached | stuck
    matching: tuple
    colour: Optional[Colour]
    component: Optional[int]
    kind: str
    trace: tuple


@dataclass(frozen=True)
class AugmentOutcome:
    status: str               # improved | terminal | step_failed
    fractional: Optional[FractionalMatching]
    next_matchings: tuple     # (edges tuple, colour, component id) candidates
    trace: tuple


def _max_bipartite(admissible: dict) -> dict:
    """Maximum bipartite matching u -> f by augmenting paths (Kuhn)."""
    match_f: dict = {}

    def try_assign(u, seen):
        for f in admissible[u]:
            if f in seen:
                continue
            seen.add(f)
            if f not in match_f or try_assign(match_f[f], seen):
                match_f[f] = u
                return True
        return False

    for u in sorted(admissible):
        try_assign(u, set())
    return {u: f for f, u in sorted(match_f.items())}


def _greedy_good(CH, bp, edges, forbidden=frozenset()):
    """First-fit maximal matching among good edges avoiding forbidden vertices."""
    out = []
    used = set(forbidden)
    for e in sorted(edges):
        if used.intersection(e):
            continue
        if is_good(CH, bp, e):
            out.append(e)
            used.update(e)
    return out


def _five_set_edges(CH, f, u):
    """The edges of H restricted to f + {u}, canonical order."""
    verts = tuple(sorted(f + (u,)))
    return [q for q in itertools.combinations(verts, 4) if q in CH.graph.edges]


def _empty_common(family) -> bool:
    common = set(family[0])
    for e in family[1:]:
        common.intersection_update(e)
        if not common:
            return True
    return not common


def _fact_weights(family) -> dict:
    w = Fraction(1, len(family) - 1)
    return {e: w for e in family}


def verify_case_hypotheses(CH, bp, R_id, state: AugmentationState):
    """H1/H2 entry checks: M is a good matching inside its stated
    monochromatic component, and the red blueprint edges all induce R."""
    decomp = bp.decomposition
    for e in bp.pairs_of_colour(Colour.RED):
        if bp.assign[e] != R_id:
            raise HypothesisViolated(
                f"red blueprint edge {e} induces {bp.assign[e]}, not {R_id}")
    used = set()
    for e in state.matching:
        if used.intersection(e):
            raise HypothesisViolated(f"matching edges overlap at {e}")
        used.update(e)
        if decomp.component_of.get(e) != state.component:
            raise HypothesisViolated(f"{e} outside component {state.component}")
        if not is_good(CH, bp, e):
            raise HypothesisViolated(f"matching edge {e} is not good")
    col = decomp.colour(state.component)
    if col is not state.colour:
        raise HypothesisViolated("stated colour disagrees with the component")
    if state.colour is Colour.RED and state.component != R_id:
        raise HypothesisViolated(
            "a red matching must live in the spanning red component")


def initial_matching(CH: ColouredKGraph, bp: Blueprint, R_id: int,
                     params: DriverParams, rng) -> InitialOutcome:
    """A good matching in the spanning red component or in a blue component.

    Greedy in the red good edges first; if small, attach the uncovered set's
    blue component and build blue edges from witness triples, or fall back
    to the all-blue-pairs region whose good edges are red."""
    decomp = bp.decomposition
    n_scale = params.scale_n(CH.n)
    target = n_scale / 4
    small = 3 * params.delta * n_scale
    trace = []
    if R_id >= len(decomp.components):
        return InitialOutcome("stuck", (), None, None, "none", ())
    r_edges = decomp.edges_of(R_id)
    M = tuple(_greedy_good(CH, bp, r_edges))
    trace.append({"claim": "greedy_red", "size": len(M)})
    if len(M) >= target:
        return InitialOutcome("target_reached", M, Colour.RED, R_id,
                              "red_greedy", tuple(trace))
    if len(M) >= small:
        return InitialOutcome("ok", M, Colour.RED, R_id, "red_greedy", tuple(trace))

    covered = set()
    for e in M:
        covered.update(e)
    W = tuple(v for v in sorted(bp.vertex_set) if v not in covered)
    try:
        bw = compute_B_W(CH, bp, R_id, W)
    except (HypothesisViolated, InconsistentWitness) as exc:
        trace.append({"claim": "B_W", "failed": str(exc)})
        if M:
            return InitialOutcome("ok", M, Colour.RED, R_id, "red_greedy", tuple(trace))
        return InitialOutcome("stuck", (), None, None, "none", tuple(trace))
    B = bw.component
    b_edges = decomp.edges_of(B)
    triple_set = set(bw.triples)

    red_pairs_W = [p for p in bp.pairs_of_colour(Colour.RED) if set(p) <= set(W)]
    pair_matching = greedy_matching(red_pairs_W)
    trace.append({"claim": "red_pairs_in_W", "matching": len(pair_matching)})

    candidates = [(len(M), M, Colour.RED, R_id, "red_greedy")]

    if pair_matching:
        used = set()
        blue_edges = []
        for (u, v) in pair_matching:
            if used.intersection((u, v)):
                continue
            done = False
            for w in W:
                if done or w in used or w in (u, v):
                    continue
                T = tuple(sorted((u, v, w)))
                if T not in triple_set:
                    continue
                for w2 in bw.gamma[T]:
                    if w2 in used or w2 in T:
                        continue
                    edge = tuple(sorted(T + (w2,)))
                    if decomp.component_of.get(edge) == B and is_good(CH, bp, edge):
                        blue_edges.append(edge)
                        used.update(edge)
                        done = True
                        break
        trace.append({"claim": "blue_from_triples", "size": len(blue_edges)})
        if blue_edges:
            candidates.append((len(blue_edges), tuple(sorted(blue_edges)),
                               Colour.BLUE, B, "blue_triples"))

    w_prime = [v for v in W if all(v not in p for p in pair_matching)]
    blue_good_wp = _greedy_good(CH, bp, edges_within(b_edges, w_prime))
    trace.append({"claim": "blue_in_W_prime", "size": len(blue_good_wp)})
    if blue_good_wp:
        candidates.append((len(blue_good_wp), tuple(sorted(blue_good_wp)),
                           Colour.BLUE, B, "blue_in_W_prime"))

    wpp = [v for v in w_prime if all(v not in e for e in blue_good_wp)]
    good_wpp = [e for e in edges_within(CH.graph.edges, wpp) if is_good(CH, bp, e)]
    by_comp = {}
    for e in good_wpp:
        if CH.colour[e] is Colour.RED:
            by_comp.setdefault(decomp.component_of[e], []).append(e)
    if by_comp:
        r_star = max(by_comp, key=lambda cid: (len(by_comp[cid]), -cid))
        fallback = greedy_matching(by_comp[r_star])
        trace.append({"claim": "red_fallback", "component": r_star,
                      "size": len(fallback)})
        candidates.append((len(fallback), tuple(sorted(fallback)),
                           Colour.RED, r_star, "red_fallback"))

    size, M_best, colour, comp, kind = max(candidates, key=lambda t: t[0])
    if size == 0:
        return InitialOutcome("stuck", (), None, None, "none", tuple(trace))
    status = "target_reached" if size >= target else "ok"
    return InitialOutcome(status, M_best, colour, comp, kind, tuple(trace))


def _suitable_single(CH, bp, f, u) -> bool:
    return is_suitable_pair(CH, bp, f, (u,)).suitable


def _mono_k5(CH, f, u, colour) -> bool:
    edges = _five_set_edges(CH, f, u)
    return len(edges) == 5 and all(CH.colour[e] is colour for e in edges)


def _blue_partner(CH, decomp, B, f, u):
    """Smallest edge of blue component B inside f + {u} (it must contain u)."""
    for q in _five_set_edges(CH, f, u):
        if u in q and CH.colour[q] is Colour.BLUE and decomp.component_of.get(q) == B:
            return q
    return None


def _comp_partner(CH, decomp, cid, f, u):
    for q in _five_set_edges(CH, f, u):
        if u in q and decomp.component_of.get(q) == cid:
            return q
    return None


def _assemble(host, parts, colour, component) -> FractionalMatching:
    weights = {}
    for part in parts:
        for e, w in part.items():
            weights[e] = weights.get(e, ZERO) + w
    weights = {e: w for e, w in sorted(weights.items()) if w}
    return FractionalMatching(frozenset(host), weights, colour, component)


def augment_once(CH: ColouredKGraph, bp: Blueprint, R_id: int,
                 state: AugmentationState, params: DriverParams,
                 rng) -> AugmentOutcome:
    """One growth step.

    Searches, in the proof order: integral extension into the uncovered
    set; single-vertex monochromatic K5 extensions spread at weight 1/4;
    opposite-colour partner edges; and empty-intersection replacements on
    sampled suitable pairs.  Every candidate output is revalidated; success
    means a gain of at least gamma * n over the incoming matching."""
    verify_case_hypotheses(CH, bp, R_id, state)
    n_scale = params.scale_n(CH.n)
    target = n_scale / 4
    if Fraction(len(state.matching)) >= target:
        return AugmentOutcome("terminal", from_matching(
            state.matching, bp.decomposition.edges_of(state.component),
            state.colour, state.component), (), ({"claim": "already_at_target"},))
    if state.colour is Colour.RED:
        return _augment_primary(CH, bp, R_id, state, params, rng)
    return _augment_opposite(CH, bp, R_id, state, params, rng)


def _repair(CH, bp, comp_edges, M):
    """Extend M to a maximal good matching of its component (greedy)."""
    covered = set()
    for e in M:
        covered.update(e)
    M = list(M)
    for e in sorted(comp_edges):
        if covered.intersection(e):
            continue
        if is_good(CH, bp, e):
            M.append(e)
            covered.update(e)
    return tuple(sorted(M)), covered


def _augment_primary(CH, bp, R_id, state, params, rng) -> AugmentOutcome:
    """Growth step for a matching inside the spanning red component."""
    decomp = bp.decomposition
    n_scale = params.scale_n(CH.n)
    target = n_scale / 4
    base = len(state.matching)
    need = base + params.gamma * n_scale
    trace = list(state.trace)
    r_edges = decomp.edges_of(R_id)

    M, covered = _repair(CH, bp, r_edges, state.matching)
    if len(M) > base:
        trace.append({"claim": "maximality_repair", "added": len(M) - base})
    next_matchings = []
    if len(M) > base:
        next_matchings.append((M, Colour.RED, R_id))
    if Fraction(len(M)) >= target:
        phi = from_matching(M, r_edges, Colour.RED, R_id)
        return AugmentOutcome("terminal", phi, tuple(next_matchings),
                              tuple(trace) + ({"claim": "target_reached_integrally"},))

    W = tuple(v for v in sorted(bp.vertex_set) if v not in covered)
    B = None
    bw = None
    try:
        bw = compute_B_W(CH, bp, R_id, W)
        B = bw.component
    except (HypothesisViolated, InconsistentWitness) as exc:
        trace.append({"claim": "B_W", "failed": str(exc)})

    # single-vertex red K5 extensions (weight-1/4 spreading)
    admissible = {}
    for u in W:
        opts = [f for f in M
                if _suitable_single(CH, bp, f, u) and _mono_k5(CH, f, u, Colour.RED)]
        if opts:
            admissible[u] = opts
    u_match = _max_bipartite(admissible)
    trace.append({"claim": "red_k5_extensions", "count": len(u_match)})

    spread_part = {}
    for u, f in sorted(u_match.items()):
        for q in _five_set_edges(CH, f, u):
            spread_part[q] = QUARTER
    replaced_by_spread = set(u_match.values())

    W1 = [u for u in W if u not in u_match]
    M1 = [f for f in M if f not in replaced_by_spread]

    # opposite-colour partners: distinct f per u with a blue B-edge in f + u
    u2_match = {}
    if B is not None:
        admissible2 = {}
        for u in W1:
            opts = [f for f in M1
                    if _suitable_single(CH, bp, f, u)
                    and _blue_partner(CH, decomp, B, f, u) is not None]
            if opts:
                admissible2[u] = opts
        u2_match = _max_bipartite(admissible2)
    trace.append({"claim": "blue_partners", "count": len(u2_match)})

    W2 = [u for u in W1 if u not in u2_match]
    M2 = [f for f in M1 if f not in set(u2_match.values())]

    # empty-intersection replacements inside the red component
    fact_part = {}
    fact_removed = set()
    fact_gain = ZERO
    if M2 and len(W2) >= 3:
        sample = sample_suitable_pairs(CH, bp, M2, W2, 3, len(M2), rng,
                                       params.sample_attempts)
        for f, wf in sample.pairs:
            family = edges_within(r_edges, set(f) | set(wf))
            if len(family) >= 2 and _empty_common(family):
                fact_part.update(_fact_weights(family))
                fact_removed.add(f)
                fact_gain += Fraction(len(family), len(family) - 1) - 1
            else:
                entry = {"claim": "red_core_nonempty", "f": f, "W_f": wf}
                red_pairs_wf = [p for p in itertools.combinations(wf, 2)
                                if bp.assign.get(p) == R_id]
                if red_pairs_wf:
                    try:
                        entry["pivot"] = local_pivot(CH, bp, R_id, f, wf,
                                                     red_pairs_wf[0])
                    except TcrError as exc:
                        entry["pivot_failed"] = str(exc)
                trace.append(entry)
    trace.append({"claim": "red_replacements", "gain": str(fact_gain)})

    kept = {e: ONE for e in M if e not in replaced_by_spread and e not in fact_removed}
    phi_red = _assemble(r_edges, [kept, spread_part, fact_part], Colour.RED, R_id)

    candidates = [("red", phi_red)]

    # blue route: partner matching, then a disjoint good blue matching,
    # then empty-intersection replacements around the partners
    if B is not None and u2_match:
        b_edges = decomp.edges_of(B)
        m1_star = {}
        for u, f in sorted(u2_match.items()):
            m1_star[u] = _blue_partner(CH, decomp, B, f, u)
        m1_edges = sorted(m1_star.values())
        used1 = set()
        for e in m1_edges:
            used1.update(e)
        m2_star = _greedy_good(CH, bp, b_edges, forbidden=used1)
        trace.append({"claim": "blue_route", "partners": len(m1_edges),
                      "disjoint": len(m2_star)})
        used2 = set()
        for e in m2_star:
            used2.update(e)
        u_pp = [u for u in sorted(u2_match)
                if not used2.intersection(set(u2_match[u]) | {u})]
        w0 = [v for v in W2 if v not in used2]
        blue_fact_part = {}
        blue_fact_removed = set()
        if u_pp and len(w0) >= 4:
            edge_to_u = {u2_match[u]: u for u in u_pp}
            sample = sample_suitable_pairs(CH, bp, sorted(edge_to_u), w0, 4,
                                           len(u_pp), rng, params.sample_attempts)
            for f, wu in sample.pairs:
                u = edge_to_u[f]
                family = edges_within(b_edges, set(f) | set(wu))
                family = sorted(set(family) | {m1_star[u]})
                if len(family) >= 2 and _empty_common(family):
                    blue_fact_part.update(_fact_weights(family))
                    blue_fact_removed.add(m1_star[u])
                else:
                    trace.append({"claim": "blue_core_nonempty", "f": f,
                                  "W_u": wu, "u": u})
        kept_blue = {e: ONE for e in m1_edges if e not in blue_fact_removed}
        for e in m2_star:
            kept_blue[e] = ONE
        phi_blue = _assemble(b_edges, [kept_blue, blue_fact_part], Colour.BLUE, B)
        candidates.append(("blue", phi_blue))
        integral_blue = tuple(sorted(m1_edges + m2_star))
        next_matchings.append((integral_blue, Colour.BLUE, B))

    return _pick_outcome(CH, candidates, need, next_matchings, trace, state)


def _augment_opposite(CH, bp, R_id, state, params, rng) -> AugmentOutcome:
    """Growth step for a matching inside a blue component B."""
    decomp = bp.decomposition
    n_scale = params.scale_n(CH.n)
    target = n_scale / 4
    base = len(state.matching)
    need = base + params.gamma * n_scale
    trace = list(state.trace)
    B_id = state.component
    b_edges = decomp.edges_of(B_id)
    r_edges = decomp.edges_of(R_id)

    M, covered = _repair(CH, bp, b_edges, state.matching)
    if len(M) > base:
        trace.append({"claim": "maximality_repair", "added": len(M) - base})
    next_matchings = []
    if len(M) > base:
        next_matchings.append((M, Colour.BLUE, B_id))
    if Fraction(len(M)) >= target:
        phi = from_matching(M, b_edges, Colour.BLUE, B_id)
        return AugmentOutcome("terminal", phi, tuple(next_matchings),
                              tuple(trace) + ({"claim": "target_reached_integrally"},))

    W = tuple(v for v in sorted(bp.vertex_set) if v not in covered)

    # single-vertex blue K5 extensions
    admissible = {}
    for u in W:
        opts = [f for f in M
                if _suitable_single(CH, bp, f, u) and _mono_k5(CH, f, u, Colour.BLUE)]
        if opts:
            admissible[u] = opts
    u_match = _max_bipartite(admissible)
    trace.append({"claim": "blue_k5_extensions", "count": len(u_match)})
    spread_part = {}
    for u, f in sorted(u_match.items()):
        for q in _five_set_edges(CH, f, u):
            spread_part[q] = QUARTER
    replaced_by_spread = set(u_match.values())

    W1 = [u for u in W if u not in u_match]
    M1 = [f for f in M if f not in replaced_by_spread]

    red_pairs_w1 = [p for p in bp.pairs_of_colour(Colour.RED) if set(p) <= set(W1)]
    b2_pairs_w1 = [p for p in bp.pairs_of_colour(Colour.BLUE)
                   if set(p) <= set(W1) and bp.assign[p] == B_id]
    case1 = not red_pairs_w1 and bool(b2_pairs_w1)
    trace.append({"claim": "case_split", "red_pairs": len(red_pairs_w1),
                  "b2_pairs": len(b2_pairs_w1), "case": 1 if case1 else 2})

    candidates = []
    u2_for_fact = {}
    if case1:
        good_w1 = [e for e in edges_within(CH.graph.edges, W1) if is_good(CH, bp, e)]
        stray_blue = [e for e in good_w1 if CH.colour[e] is Colour.BLUE]
        if stray_blue:
            trace.append({"claim": "good_in_W1_all_red", "failed": stray_blue[:3]})
        by_comp = {}
        for e in good_w1:
            if CH.colour[e] is Colour.RED:
                by_comp.setdefault(decomp.component_of[e], []).append(e)
        if by_comp:
            r_star = max(by_comp, key=lambda cid: (len(by_comp[cid]), -cid))
            rs_edges = decomp.edges_of(r_star)
            admissible2 = {}
            for u in W1:
                opts = [f for f in M1
                        if _suitable_single(CH, bp, f, u)
                        and _comp_partner(CH, decomp, r_star, f, u) is not None]
                if opts:
                    admissible2[u] = opts
            u2_match = _max_bipartite(admissible2)
            u2_for_fact = u2_match
            m1_star = sorted(_comp_partner(CH, decomp, r_star, u2_match[u], u)
                             for u in u2_match)
            used1 = set()
            for e in m1_star:
                used1.update(e)
            w2 = [v for v in W1 if v not in used1 and v not in u2_match]
            m2_star = _greedy_good(CH, bp, edges_within(rs_edges, w2))
            trace.append({"claim": "red_star_route", "component": r_star,
                          "partners": len(m1_star), "inside": len(m2_star)})
            kept = {e: ONE for e in m1_star + m2_star}
            candidates.append(("red_star", _assemble(rs_edges, [kept],
                                                     Colour.RED, r_star)))
            next_matchings.append((tuple(sorted(m1_star + m2_star)),
                                   Colour.RED, r_star))
        else:
            trace.append({"claim": "red_star_route", "failed": "no good red edges"})
    else:
        # case 2: partners in the spanning red component
        admissible2 = {}
        for u in W1:
            opts = [f for f in M1
                    if _suitable_single(CH, bp, f, u)
                    and _comp_partner(CH, decomp, R_id, f, u) is not None]
            if opts:
                admissible2[u] = opts
        u2_match = _max_bipartite(admissible2)
        trace.append({"claim": "red_partners", "count": len(u2_match)})
        u2_for_fact = u2_match
        if u2_match:
            m1_map = {u: _comp_partner(CH, decomp, R_id, f, u)
                      for u, f in sorted(u2_match.items())}
            m1_star = sorted(m1_map.values())
            used1 = set()
            for e in m1_star:
                used1.update(e)
            m2_star = _greedy_good(CH, bp, r_edges, forbidden=used1)
            used2 = set()
            for e in m2_star:
                used2.update(e)
            w2 = [u for u in W1 if u not in u2_match]
            u_pp = [u for u in sorted(u2_match)
                    if not used2.intersection(set(u2_match[u]) | {u})]
            w0 = [v for v in w2 if v not in used2]
            red_fact_part = {}
            red_fact_removed = set()
            if u_pp and len(w0) >= 4:
                edge_to_u = {u2_match[u]: u for u in u_pp}
                sample = sample_suitable_pairs(CH, bp, sorted(edge_to_u), w0, 4,
                                               len(u_pp), rng,
                                               params.sample_attempts)
                for f, wu in sample.pairs:
                    u = edge_to_u[f]
                    family = edges_within(r_edges, set(f) | set(wu))
                    family = sorted(set(family) | {m1_map[u]})
                    if len(family) >= 2 and _empty_common(family):
                        red_fact_part.update(_fact_weights(family))
                        red_fact_removed.add(m1_map[u])
                    else:
                        trace.append({"claim": "red_core_nonempty", "f": f,
                                      "W_u": wu, "u": u})
            kept = {e: ONE for e in m1_star if e not in red_fact_removed}
            for e in m2_star:
                kept[e] = ONE
            trace.append({"claim": "red_route", "partners": len(m1_star),
                          "disjoint": len(m2_star)})
            candidates.append(("red", _assemble(r_edges, [kept, red_fact_part],
                                                Colour.RED, R_id)))
            next_matchings.append((tuple(sorted(m1_star + m2_star)),
                                   Colour.RED, R_id))

    # blue-side empty-intersection replacements on the remaining matching
    W2 = [u for u in W1 if u not in u2_for_fact]
    M2 = [f for f in M1 if f not in set(u2_for_fact.values())]
    fact_part = {}
    fact_removed = set()
    if M2 and len(W2) >= 4:
        sample = sample_suitable_pairs(CH, bp, M2, W2, 4, len(M2), rng,
                                       params.sample_attempts)
        for f, wf in sample.pairs:
            family = edges_within(b_edges, set(f) | set(wf))
            if len(family) >= 2 and _empty_common(family):
                fact_part.update(_fact_weights(family))
                fact_removed.add(f)
            else:
                trace.append({"claim": "blue_core_nonempty", "f": f, "W_f": wf})
    kept_blue = {e: ONE for e in M
                 if e not in replaced_by_spread and e not in fact_removed}
    phi_blue = _assemble(b_edges, [kept_blue, spread_part, fact_part],
                         Colour.BLUE, B_id)
    candidates.append(("blue", phi_blue))

    return _pick_outcome(CH, candidates, need, next_matchings, trace, state)


def _pick_outcome(CH, candidates, need, next_matchings, trace, state):
    best_name, best = max(candidates, key=lambda t: (t[1].weight(), t[0]))
    ok, violation = validate_fractional(CH, best)
    if not ok:
        raise InconsistentWitness(f"constructed weighting invalid: {violation}")
    trace.append({"claim": "best_route", "route": best_name,
                  "weight": str(best.weight()), "needed": str(need)})
    status = "improved" if best.weight() >= need else "step_failed"
    return AugmentOutcome(status, best, tuple(next_matchings), tuple(trace))


@dataclass(frozen=True)
class DriverReport:
    status: str                 # reached | improved | step_failed | stuck
    n_vertices: int
    n_scale: Fraction
    target: Fraction
    colour_swapped: bool
    blueprint_coverage: int
    blueprint_omitted: int
    initial_kind: str
    iterations: int
    final_weight: Fraction
    final_colour: Optional[Colour]
    final_component: Optional[int]
    reached: bool
    min_weight_ok: bool
    support_good: bool
    trace: tuple
    best: Optional[FractionalMatching]


def run_driver(CH: ColouredKGraph, params: DriverParams, seed: int) -> DriverReport:
    """Build a blueprint, trim to a spanning monochromatic component
    (canonicalized red), seed a good matching, and grow it until the n/4
    target is reached, the iteration cap trips, or no route certifies the
    required gain.  Outputs are exact rationals and fully revalidated."""
    rng = random.Random(seed)
    trace = []
    dens = density_check(CH.graph, 1 - params.eps, params.eps)
    if not dens.passed:
        raise HypothesisViolated(
            f"input is not (1-eps, eps)-dense at eps = {params.eps}")

    work = CH
    swapped = False
    build_res = build_blueprint(work, params.eps)
    miss = 1 - Fraction(build_res.blueprint.graph.graph.m, comb(CH.n, 2))
    trim_eps = max(params.eps, miss)
    trim = trim_spanning_component(build_res.blueprint.graph, trim_eps)
    if trim.colour is Colour.BLUE:
        swapped = True
        work = CH.swapped()
        build_res = build_blueprint(work, params.eps)
        miss = 1 - Fraction(build_res.blueprint.graph.graph.m, comb(CH.n, 2))
        trim_eps = max(params.eps, miss)
        trim = trim_spanning_component(build_res.blueprint.graph, trim_eps)
        if trim.colour is Colour.BLUE:
            trace.append({"claim": "canonical_red_spanning", "failed": True})
            return DriverReport("stuck", CH.n, params.scale_n(CH.n),
                                params.scale_n(CH.n) / 4, swapped,
                                build_res.coverage, len(build_res.omitted),
                                "none", 0, ZERO, None, None, False, False,
                                False, tuple(trace), None)
    bp0 = build_res.blueprint
    trace.append({"claim": "trim", "kept": len(trim.vertices),
                  "min_degree": trim.min_degree})

    kept_vertices = set(trim.vertices)
    spanning = set(trim.spanning_edges)
    kept_assign = {}
    mask_view: dict = {}
    for e, cid in bp0.assign.items():
        if not kept_vertices.issuperset(e):
            continue
        if bp0.graph.colour[e] is Colour.RED and e not in spanning:
            continue
        kept_assign[e] = cid
        mask_view.setdefault(cid, {})[e] = bp0.masks[e]
    bp = make_blueprint(work, bp0.eps, kept_assign, bp0.decomposition, mask_view)
    red_ids = {bp.assign[e] for e in bp.pairs_of_colour(Colour.RED)}
    if len(red_ids) != 1:
        trace.append({"claim": "unique_spanning_component", "ids": sorted(red_ids)})
        return DriverReport("stuck", CH.n, params.scale_n(CH.n),
                            params.scale_n(CH.n) / 4, swapped,
                            build_res.coverage, len(build_res.omitted), "none",
                            0, ZERO, None, None, False, False, False,
                            tuple(trace), None)
    (R_id,) = red_ids

    n_scale = params.scale_n(CH.n)
    target = n_scale / 4
    init = initial_matching(work, bp, R_id, params, rng)
    trace.extend(init.trace)
    if init.status == "stuck":
        return DriverReport("stuck", CH.n, n_scale, target, swapped,
                            build_res.coverage, len(build_res.omitted),
                            init.kind, 0, ZERO, None, None, False, False,
                            False, tuple(trace), None)

    decomp = bp.decomposition
    best = from_matching(init.matching, decomp.edges_of(init.component),
                         init.colour, init.component)
    state = AugmentationState(init.matching, init.colour, init.component)
    iterations = 0
    status = "improved"
    if init.status == "target_reached":
        status = "reached"
    else:
        while iterations < params.iteration_cap:
            iterations += 1
            if state.colour is Colour.RED and state.component != R_id:
                trace.append({"claim": "iterate", "stopped":
                              "matching outside the spanning red component"})
                status = "step_failed"
                break
            outcome = augment_once(work, bp, R_id, state, params, rng)
            trace.append({"claim": f"step_{iterations}", "status": outcome.status,
                          "weight": str(outcome.fractional.weight()
                                        if outcome.fractional else ZERO)})
            if outcome.fractional and outcome.fractional.weight() > best.weight():
                best = outcome.fractional
            if outcome.status == "terminal" or best.weight() >= target:
                status = "reached"
                break
            grown = [m for m in outcome.next_matchings
                     if len(m[0]) > len(state.matching)]
            if outcome.status == "step_failed" and not grown:
                status = "step_failed"
                break
            if grown:
                edges, colour, comp = max(grown, key=lambda m: (len(m[0]), m[1].value))
                state = AugmentationState(edges, colour, comp)
            elif outcome.status == "improved":
                trace.append({"claim": "iterate",
                              "stopped": "no integral continuation"})
                break
            else:
                break
        if best.weight() >= target:
            status = "reached"

    ok, violation = validate_fractional(work, best)
    support_good = ok and all(is_good(work, bp, e) for e in best.weights)
    comp_ok = best.component is not None and all(
        decomp.component_of.get(e) == best.component for e in best.weights)
    if not (ok and comp_ok):
        raise InconsistentWitness(f"driver output failed validation: {violation}")
    min_weight_ok = all(w >= params.c for w in best.weights.values())
    final_colour = best.colour
    if swapped and final_colour is not None:
        final_colour = final_colour.opposite
    return DriverReport(status, CH.n, n_scale, target, swapped,
                        build_res.coverage, len(build_res.omitted), init.kind,
                        iterations, best.weight(), final_colour,
                        best.component, best.weight() >= target, min_weight_ok,
                        support_good, tuple(trace), best)
