"""Batch command-line interface.

One command per process; a single structured JSON report on stdout, human
logs on stderr.  Exit codes: 0 success, 1 parse/usage, 2 hypothesis or
contract violation, 3 cap exceeded.  Rationals are emitted as exact "p/q"
strings.  Reports for a fixed input and seed are byte-identical; wall-clock
timing goes to stderr unless --timing asks for it in the report.

tcg format: line 1 "tcg 1"; line 2 "k=<int> n=<int>"; then one edge per
line "<R|B> v1 ... vk" with strictly increasing vertices; "#" starts a
comment; UTF-8 with LF line endings.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, is_dataclass
from enum import Enum
from fractions import Fraction

from . import blowup as blowup_mod
from . import blueprint as blueprint_mod
from . import extremal as extremal_mod
from . import matchings as matchings_mod
from .augment import AugmentationState, DriverParams, augment_once, initial_matching, run_driver
from .errors import (ContractUnmet, HypothesisViolated, InconsistentWitness,
                     ParseError, SearchCapExceeded, SizeCapExceeded, TcrError,
                     Unsupported)
from .extremal import ProfileNotConstant, TargetSpec
from .hypergraph import Colour, ColouredKGraph, build
from .tight import monochromatic_components, tight_components

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONTRACT = 2
EXIT_CAP = 3


def parse_coloured_hypergraph(text: str) -> ColouredKGraph:
    """Parse the tcg format; failures carry the offending line number."""
    lines = text.split("\n")
    meaningful = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            meaningful.append((lineno, stripped))
    if not meaningful:
        raise ParseError("empty input")
    lineno, header = meaningful[0]
    if header != "tcg 1":
        raise ParseError(f"expected 'tcg 1' header, got {header!r}", lineno)
    if len(meaningful) < 2:
        raise ParseError("missing 'k=... n=...' line", lineno)
    lineno, dims = meaningful[1]
    parts = dims.split()
    if (len(parts) != 2 or not parts[0].startswith("k=")
            or not parts[1].startswith("n=")):
        raise ParseError(f"expected 'k=<int> n=<int>', got {dims!r}", lineno)
    try:
        k = int(parts[0][2:])
        n = int(parts[1][2:])
    except ValueError:
        raise ParseError(f"non-integer dimensions in {dims!r}", lineno) from None
    coloured = []
    for lineno, line in meaningful[2:]:
        fields = line.split()
        if fields[0] not in ("R", "B"):
            raise ParseError(f"colour must be R or B, got {fields[0]!r}", lineno)
        if len(fields) != k + 1:
            raise ParseError(f"expected {k} vertices, got {len(fields) - 1}", lineno)
        try:
            verts = [int(f) for f in fields[1:]]
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise ParseError("vertices must be strictly increasing", lineno)
        if verts[0] < 1 or verts[-1] > n:
            raise ParseError(f"vertex outside [1, {n}]", lineno)
        coloured.append((fields[0], tuple(verts)))
    return build(k, n, coloured)


def serialize_coloured_hypergraph(CH: ColouredKGraph) -> str:
    lines = ["tcg 1", f"k={CH.k} n={CH.n}"]
    for e in CH.graph.sorted_edges:
        lines.append(CH.colour[e].value + " " + " ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def rat(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, Colour):
        return obj.value
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {_key(k): to_jsonable(v) for k, v in sorted(obj.items(), key=lambda t: _key(t[0]))}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(obj)]
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f: to_jsonable(v) for f, v in sorted(asdict(obj).items())}
    return obj


def _key(k):
    if isinstance(k, tuple):
        return " ".join(str(v) for v in k)
    return str(k)


def emit(report: dict, timing_ms=None) -> None:
    report = dict(report)
    report["timing_ms"] = timing_ms
    sys.stdout.write(json.dumps(to_jsonable(report), sort_keys=True,
                                separators=(",", ":")) + "\n")


def _load(path: str) -> ColouredKGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_coloured_hypergraph(fh.read())


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _host_edges(CH: ColouredKGraph, host: str, component):
    if component is not None:
        decomp = monochromatic_components(CH)
        if not 0 <= component < len(decomp.components):
            raise Unsupported(
                f"component {component} outside 0..{len(decomp.components) - 1}")
        return sorted(decomp.edges_of(component))
    if host == "all":
        return list(CH.graph.sorted_edges)
    colour = Colour.RED if host == "red" else Colour.BLUE
    return list(CH.edges_of(colour))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tcr", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock milliseconds in the report "
                        "(breaks byte-for-byte reproducibility)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker budget for internal parallelism (currently 1)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("components", help="tight / monochromatic components")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--mono", action="store_true",
                    help="decompose the two colour classes separately")

    sp = sub.add_parser("match", help="matchings: exact, lp, or mu estimate")
    sp.add_argument("mode", choices=["exact", "lp", "mu"])
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--host", choices=["all", "red", "blue"], default="all")
    sp.add_argument("--component", type=int)
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--beta", type=_fraction_arg, default=Fraction(1, 100))

    sp = sub.add_parser("blueprint", help="build a blueprint and check it")
    sp.add_argument("mode", choices=["build", "check"])
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--eps", type=_fraction_arg, required=True)

    sp = sub.add_parser("blowup", help="r-blow-up with verification counts")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--r", type=int, required=True)

    sp = sub.add_parser("augment", help="initial matching plus one growth step")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--seed", type=int, required=True)
    for name, default in (("eps", "1/50"), ("gamma", "1/20"), ("delta", "1/10"),
                          ("eta", "3/20"), ("c", "1/100")):
        sp.add_argument(f"--{name}", type=_fraction_arg, default=Fraction(default))

    sp = sub.add_parser("driver", help="full matching-growth driver")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--seed", type=int, required=True)
    for name, default in (("eps", "1/50"), ("gamma", "1/20"), ("delta", "1/10"),
                          ("eta", "3/20"), ("c", "1/100")):
        sp.add_argument(f"--{name}", type=_fraction_arg, default=Fraction(default))

    sp = sub.add_parser("extremal", help="extremal colourings and verification")
    sp.add_argument("mode", choices=["split", "parity"])
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--i", type=int, default=0)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--len", dest="length", type=int)
    sp.add_argument("--out", help="write the colouring to this tcg file")

    sp = sub.add_parser("ramsey", help="tiny-scale exhaustive Ramsey search")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--target", required=True,
                    help="c<len> for a tight cycle or p<len> for a tight path")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--no-seeds", action="store_true",
                    help="skip the extremal-colouring fast path")
    return p


def _cmd_components(args) -> dict:
    CH = _load(args.infile)
    decomp = monochromatic_components(CH) if args.mono else tight_components(CH.graph)
    comps = []
    for cid, comp in enumerate(decomp.components):
        entry = {"id": cid, "edges": len(comp),
                 "support": list(decomp.support(cid))}
        if decomp.colour_of is not None:
            entry["colour"] = decomp.colour(cid).value
        comps.append(entry)
    return {"result": {"components": comps, "count": len(comps)}}


def _cmd_match(args) -> dict:
    CH = _load(args.infile)
    host = _host_edges(CH, args.host, args.component)
    if args.mode == "exact":
        cert = matchings_mod.max_matching_exact(host)
        return {"result": {"size": cert.size, "edges": [list(e) for e in cert.edges],
                           "optimal": cert.optimal, "nodes": cert.nodes}}
    if args.mode == "lp":
        phi = matchings_mod.max_fractional_lp(host)
        return {"result": {"weight": phi.weight(),
                           "weights": {" ".join(map(str, e)): w
                                       for e, w in sorted(phi.weights.items())}}}
    est = matchings_mod.mu_estimate(CH, args.s, args.beta)
    return {"result": {"value": est.value, "exact": est.exact,
                       "components": list(est.components)}}


def _cmd_blueprint(args) -> dict:
    CH = _load(args.infile)
    res = blueprint_mod.build_blueprint(CH, args.eps)
    check = blueprint_mod.check_blueprint(CH, res.blueprint)
    out = {"coverage": res.coverage, "omitted": len(res.omitted),
           "discarded": len(res.discarded),
           "blueprint_eps": res.blueprint.eps,
           "min_degree": res.blueprint.min_degree(),
           "check_ok": check.ok, "violations": list(check.violations)}
    if args.mode == "build":
        out["assign"] = {" ".join(map(str, e)): cid
                         for e, cid in sorted(res.blueprint.assign.items())}
    return {"result": out}


def _cmd_blowup(args) -> dict:
    CH = _load(args.infile)
    blown, bmap = blowup_mod.blow_up(CH, args.r)
    base_comps = monochromatic_components(CH)
    blown_comps = monochromatic_components(blown)
    return {"result": {
        "base_edges": CH.graph.m, "blown_edges": blown.graph.m,
        "r": args.r, "expected_edges": CH.graph.m * args.r ** CH.k,
        "base_components": len(base_comps.components),
        "blown_components": len(blown_comps.components)}}


def _params(args) -> DriverParams:
    return DriverParams(args.eps, args.gamma, args.delta, args.eta, args.c)


def _cmd_augment(args) -> dict:
    import random
    CH = _load(args.infile)
    params = _params(args)
    rng = random.Random(args.seed)
    res = blueprint_mod.build_blueprint(CH, params.eps)
    bp = res.blueprint
    red_ids = {bp.assign[e] for e in bp.pairs_of_colour(Colour.RED)}
    if len(red_ids) != 1:
        raise HypothesisViolated(
            f"blueprint red edges induce {len(red_ids)} components; need exactly 1")
    (R_id,) = red_ids
    init = initial_matching(CH, bp, R_id, params, rng)
    out = {"initial": {"status": init.status, "kind": init.kind,
                       "size": len(init.matching),
                       "colour": init.colour, "trace": list(init.trace)}}
    if init.status == "ok":
        state = AugmentationState(init.matching, init.colour, init.component)
        step = augment_once(CH, bp, R_id, state, params, rng)
        out["step"] = {"status": step.status,
                       "weight": step.fractional.weight() if step.fractional else None,
                       "trace": list(step.trace)}
    return {"result": out}


def _cmd_driver(args) -> dict:
    CH = _load(args.infile)
    rep = run_driver(CH, _params(args), args.seed)
    return {"result": {
        "status": rep.status, "n_vertices": rep.n_vertices,
        "n_scale": rep.n_scale, "target": rep.target,
        "colour_swapped": rep.colour_swapped,
        "initial_kind": rep.initial_kind, "iterations": rep.iterations,
        "weight": rep.final_weight, "colour": rep.final_colour,
        "component": rep.final_component, "reached": rep.reached,
        "min_weight_ok": rep.min_weight_ok, "support_good": rep.support_good,
        "weights": {} if rep.best is None else
            {" ".join(map(str, e)): w for e, w in sorted(rep.best.weights.items())},
        "trace": list(rep.trace)}}


def _cmd_extremal(args) -> dict:
    if args.mode == "split":
        CH, spec = extremal_mod.split_coloring(args.k, args.n)
    else:
        CH, spec = extremal_mod.parity_coloring(args.k, args.n, args.i)
    red = len(CH.edges_of(Colour.RED))
    out = {"kind": spec.kind, "k": spec.k, "n": spec.n, "i": spec.i, "d": spec.d,
           "N": spec.N, "X": list(spec.X), "Y": list(spec.Y),
           "red_edges": red, "blue_edges": CH.graph.m - red}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_coloured_hypergraph(CH))
        out["written"] = args.out
    if args.verify:
        length = args.length if args.length is not None else spec.length
        cert = extremal_mod.verify_no_mono_cycle(CH, spec, length)
        out["certificate"] = {"ok": cert.ok, "method": cert.method,
                              "length": cert.length,
                              "details": list(cert.details),
                              "witness": cert.witness}
    return {"result": out}


def _cmd_ramsey(args) -> dict:
    kind = "cycle" if args.target.startswith("c") else "path"
    if args.target[0] not in "cp":
        raise ParseError(f"target must look like c6 or p5, got {args.target!r}")
    try:
        length = int(args.target[1:])
    except ValueError:
        raise ParseError(f"bad target length in {args.target!r}") from None
    res = extremal_mod.ramsey_search_tiny(args.k, TargetSpec(kind, length), args.N,
                                          allow_seeds=not args.no_seeds)
    out = {"all_coloured": res.all_coloured, "nodes": res.nodes,
           "prunes": res.prunes, "seeded": res.seeded}
    if res.counterexample is not None:
        out["counterexample"] = serialize_coloured_hypergraph(res.counterexample)
    return {"result": out}


HANDLERS = {
    "components": _cmd_components,
    "match": _cmd_match,
    "blueprint": _cmd_blueprint,
    "blowup": _cmd_blowup,
    "augment": _cmd_augment,
    "driver": _cmd_driver,
    "extremal": _cmd_extremal,
    "ramsey": _cmd_ramsey,
}


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    started = time.monotonic()
    inputs = {k: v for k, v in sorted(vars(args).items())
              if k not in ("timing",) and v is not None}
    report = {"command": args.command, "inputs": inputs}
    try:
        report.update(HANDLERS[args.command](args))
    except (ParseError, FileNotFoundError) as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        emit(report, None)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (SearchCapExceeded, SizeCapExceeded) as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        emit(report, None)
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return EXIT_CAP
    except (HypothesisViolated, ContractUnmet, InconsistentWitness,
            ProfileNotConstant, TcrError, ValueError) as exc:
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
        emit(report, None)
        sys.stderr.write(f"violation: {exc}\n")
        return EXIT_CONTRACT
    elapsed_ms = int((time.monotonic() - started) * 1000)
    emit(report, elapsed_ms if args.timing else None)
    sys.stderr.write(f"{args.command}: ok in {elapsed_ms} ms\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
