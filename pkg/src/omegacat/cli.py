"""omegacat command line: exit 0 = passed or decided, 1 = law failure, 2 = bad input."""
import argparse
import sys
import time
from pathlib import Path

from . import io
from .errors import (DegreeMismatch, HypothesisNotMet, MalformedInput, OmegaCatError,
                     SearchLimitExceeded, UnsupportedDepth)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def tool_version():
    try:
        from importlib.metadata import version
        return version("artifact")
    except Exception:  # pragma: no cover - running from a source tree
        return "0.1.0"


class UsageError(Exception):
    pass


def _ws(args):
    return io.Workspace(Path.cwd(), eager=args.command != "validate")


def _cell_arg(P, x):
    if x not in P.index:
        raise MalformedInput(f"{x!r} is not a cell of {P.name}")
    return x


def _emit_category(args, Q):
    doc = Q.to_dict()
    if getattr(args, "output", None):
        io.write(args.output, doc)
        return {"status": "pass", "written": args.output, "cells": len(Q)}, EXIT_OK
    return {"status": "pass", "category": doc}, EXIT_OK


def _report(rep, **extra):
    out = rep.to_dict()
    out.update(extra)
    return out, EXIT_OK if rep.ok else EXIT_FAIL


# -- commands ------------------------------------------------------------------

def cmd_validate(args):
    from .validate import validate
    P = _ws(args).category(args.file)
    return _report(validate(P), category=P.name)


def cmd_hom(args):
    from .constructions import hom_category
    P = _ws(args).category(args.file)
    return _emit_category(args, hom_category(P, _cell_arg(P, args.x), _cell_arg(P, args.y)))


def cmd_op(args):
    from .constructions import opposite
    return _emit_category(args, opposite(_ws(args).category(args.file)))


def cmd_approx(args):
    from .constructions import approximation
    P = _ws(args).category(args.file)
    if not 0 <= args.n <= P.N:
        raise MalformedInput(f"level {args.n} outside 0..{P.N}")
    return _emit_category(args, approximation(P, args.n))


def cmd_level(args):
    from .constructions import level_category
    P = _ws(args).category(args.file)
    if not 0 <= args.n <= P.N:
        raise MalformedInput(f"level {args.n} outside 0..{P.N}")
    return _emit_category(args, level_category(P, args.n))


def cmd_equiv(args):
    from .equivalence import decide_equiv
    P = _ws(args).category(args.file)
    w = decide_equiv(P, _cell_arg(P, args.x), _cell_arg(P, args.y))
    out = {"status": "pass", "equivalent": w is not None}
    if w is not None:
        out["witness"] = w.to_dict(P)
        if args.degree:
            out["degree"] = w.degree
    return out, EXIT_OK


def cmd_classify(args):
    from .equivalence import classify_arrow
    P = _ws(args).category(args.file)
    res = classify_arrow(P, _cell_arg(P, args.f))
    return {"status": "pass", "arrow": args.f, **res}, EXIT_OK


def cmd_check_functor(args):
    from .functors import check_functor
    F = _ws(args).functor(args.file)
    return _report(check_functor(F, strict=args.strict), functor=F.name)


def cmd_check_mod(args):
    from .functors import check_modification
    M = _ws(args).modification(args.file)
    return _report(check_modification(M), modification=M.name)


def cmd_represent(args):
    from .presheaf import check_representable
    ws = _ws(args)
    F = ws.presheaf(args.file)
    if args.weak:
        if not args.witness:
            raise UsageError("--weak needs --witness")
        w = io.read_json(args.witness)
        if not isinstance(w, dict) or not {"object", "element"} <= set(w):
            raise MalformedInput("witness file needs object and element")
        a = F.base.v(_cell_arg(F.base, w["object"]))[0]
        beta = _cell_arg(F.values[a], w["element"])
        res = check_representable(F, "weak", witness=(a, beta))
        status = "pass" if res["representable"] else "fail"
        return {"status": status, **res}, EXIT_OK if res["representable"] else EXIT_FAIL
    res = check_representable(F, "strict")
    return {"status": "pass", **res}, EXIT_OK


def cmd_limit(args):
    from .limits import find_strict_colimit, find_strict_limit
    D = _ws(args).diagram(args.file)
    bad = D.check()
    if bad:
        raise MalformedInput(f"not a diagram: {bad[:3]}")
    res = find_strict_colimit(D) if args.colimit else find_strict_limit(D)
    out = {"status": "pass", "kind": "colimit" if args.colimit else "limit", "found": res is not None}
    if res is not None:
        out["vertex"] = res["vertex"]
        out["edges"] = res["edges"]
        out["certificate"] = [{"object": z, "level": n, "mediators": a, "cones": b, "bijective": c}
                              for (z, n), (a, b, c) in sorted(res["certificate"].items())]
    return out, EXIT_OK


def cmd_pi(args):
    from .homotopy import formal_homotopy_group
    P = _ws(args).category(args.file)
    for x in (args.I, args.a, args.x):
        _cell_arg(P, x)
    G = formal_homotopy_group(P, args.I, args.a, args.x, args.n, quotient=not args.raw)
    out = {"status": "pass", "n": args.n, **G.to_dict()}
    return out, EXIT_OK


def cmd_check_adj(args):
    from .adjunction import check_strict_adjunction, hom_iso_from_unit_counit
    A = _ws(args).adjunction(args.file)
    rep = check_strict_adjunction(A)
    if rep.ok:
        rep.merge(hom_iso_from_unit_counit(A).report)
    return _report(rep, adjunction=A.name)


def cmd_duality(args):
    from .duality import search_comparison, synthesize_dual_adjunction
    ws = _ws(args)
    if args.action == "synth":
        D = ws.duality_input(args.file)
        if args.search_comparison:
            found = search_comparison(D)
            if found is None:
                return {"status": "fail", "error": "no comparison isomorphism lifts"}, EXIT_FAIL
            D.comparison = found
        wit = synthesize_dual_adjunction(D)
        doc = wit.to_dict()
        if args.output:
            io.write(args.output, doc)
        out = {"status": wit.report.status, "report": wit.report.to_dict()}
        if args.output:
            out["written"] = args.output
        else:
            out["witness"] = doc
        return out, EXIT_OK if wit.ok else EXIT_FAIL
    stored = io.read_json(args.file)
    if not isinstance(stored, dict) or "input" not in stored:
        raise MalformedInput("witness file needs the duality input")
    D = ws.duality_input(stored["input"])
    wit = synthesize_dual_adjunction(D)
    fresh = wit.to_dict()
    same = io.dumps(fresh) == io.dumps(stored)
    ok = wit.ok and same
    out = {"status": "pass" if ok else "fail", "reproduced": same, "report": wit.report.to_dict()}
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_fixtures(args):
    from .duality import vecf2_input
    from .fixtures import corpus, vecf2
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    fx = corpus()
    fx["VecF2"] = vecf2(args.vec_dim)
    lines = []
    for name, P in sorted(fx.items()):
        text = io.dumps(P.to_dict())
        (out_dir / f"{name}.json").write_text(text, encoding="utf-8")
        lines.append(f"{io.checksum(text)}  {name}.json")
    doc = vecf2_input(fx["VecF2"]).to_dict()
    doc["L"] = doc["Lp"] = "VecF2.json"
    text = io.dumps(doc)
    (out_dir / "vecF2_duality.json").write_text(text, encoding="utf-8")
    lines.append(f"{io.checksum(text)}  vecF2_duality.json")
    (out_dir / "SHA256SUMS").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return {"status": "pass", "written": sorted(f"{n}.json" for n in fx) + ["vecF2_duality.json"]}, EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="omegacat", description=__doc__)
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *pos, output=False):
        s = sub.add_parser(name)
        for a in pos:
            s.add_argument(a)
        if output:
            s.add_argument("-o", "--output")
        s.set_defaults(fn=fn)
        return s

    add("validate", cmd_validate, "file")
    add("hom", cmd_hom, "file", "x", "y", output=True)
    add("op", cmd_op, "file", output=True)
    add("approx", cmd_approx, "file", output=True).add_argument("n", type=int)
    add("level", cmd_level, "file", output=True).add_argument("n", type=int)
    add("equiv", cmd_equiv, "file", "x", "y").add_argument("--degree", action="store_true")
    add("classify", cmd_classify, "file", "f")
    add("check-functor", cmd_check_functor, "file").add_argument("--strict", action="store_true")
    add("check-mod", cmd_check_mod, "file")
    s = add("represent", cmd_represent, "file")
    s.add_argument("--weak", action="store_true")
    s.add_argument("--witness")
    add("limit", cmd_limit, "file").add_argument("--colimit", action="store_true")
    s = add("pi", cmd_pi, "file")
    s.add_argument("--I", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--raw", action="store_true")
    add("check-adj", cmd_check_adj, "file")
    s = add("duality", cmd_duality, output=True)
    s.add_argument("action", choices=["synth", "check"])
    s.add_argument("file")
    s.add_argument("--search-comparison", action="store_true",
                   help="search the comparison isomorphism instead of reading it")
    s = add("fixtures", cmd_fixtures)
    s.add_argument("--out", default="fixtures")
    s.add_argument("--vec-dim", type=int, default=2)
    return p


def run(argv=None, stdout=None):
    """Parse, dispatch, print the report; returns the exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        body, code = args.fn(args)
    except (MalformedInput, UsageError, KeyError, DegreeMismatch, HypothesisNotMet,
            SearchLimitExceeded, UnsupportedDepth) as exc:
        body, code = {"status": "error", "error": str(exc).strip("'\"")}, EXIT_INPUT
    except OmegaCatError as exc:
        body, code = {"status": "fail", "error": f"{type(exc).__name__}: {exc}"}, EXIT_FAIL
    report = {"command": args.command, "tool_version": tool_version(), **body}
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - t0, 6)
    stdout.write(io.dumps(report))
    return code


def main():
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); stay quiet
        import os
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
