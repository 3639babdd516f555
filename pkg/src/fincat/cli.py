"""Command-line front end.

Exit codes: 0 = ok / found; 1 = verified absent or law violation, with a
counterexample; 2 = structural or usage error.  --json switches the report
stream to a stable machine-readable schema (identical inputs and seed produce
byte-identical output).
"""
from __future__ import annotations

import argparse
import json
import sys

from .adjunction import adjoint_from_universals, snake_check
from .catfile import LawViolation, Workspace, load_workspace
from .core import (
    GuardExceeded,
    Report,
    StructuralError,
    opposite,
    product,
)
from .diagram import evaluate, normalize, parse_term, pretty, render_svg
from .finset import SetFunctor, enumerate_set_naturals, hom_functor, yoneda_map
from .kan import (
    LEFT,
    RIGHT,
    codensity_monad,
    density_check,
    end_coend,
    kan_pointwise,
    weighted_limit,
)
from .limits import COLIMIT, LIMIT, limit, limit_finset

SCHEMA = "fincat-report/1"


class Failure(Exception):
    """Verified-absent outcome or law violation: exit code 1."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


def _sizes(X: SetFunctor) -> dict:
    return {a: len(v) for a, v in sorted(X.on_obj.items())}


def _report_json(rep: Report) -> dict:
    return rep.to_json()


def cmd_validate(ws: Workspace, args) -> dict:
    return {
        "categories": sorted(ws.categories),
        "functors": sorted(ws.functors),
        "nats": sorted(ws.nats),
        "setfunctors": sorted(ws.setfunctors),
        "terms": sorted(ws.terms),
    }


def _diagram_by_name(ws: Workspace, name: str):
    if name in ws.functors:
        return ws.functors[name]
    if name in ws.setfunctors:
        return ws.setfunctors[name]
    raise StructuralError(f"no functor or setfunctor named {name}")


def cmd_limit(ws: Workspace, args) -> dict:
    D = _diagram_by_name(ws, args.diagram)
    direction = LIMIT if args.command == "limit" else COLIMIT
    if isinstance(D, SetFunctor):
        res = limit_finset(D, direction)
        if not res.certificate.ok:
            raise Failure("certificate failed", {"report": _report_json(res.certificate)})
        return {"kind": "finset", "size": len(res.object),
                "elements": list(res.object.sorted()),
                "report": _report_json(res.certificate)}
    res = limit(D, direction)
    if res is None:
        raise Failure(f"{args.command} of {args.diagram} verified absent",
                      {"diagram": args.diagram})
    return {"kind": "object", "object": res.object,
            "legs": dict(sorted(res.cone.legs.components.items())),
            "report": _report_json(res.certificate)}


def _align_bifunctor(B, J):
    """Rebuild B on the canonical product of op(J) and J.

    Identity morphisms are renamed to the constructed pair ids; everything
    else must match on the nose.  Returns None when the shapes differ.
    """
    P = product(opposite(J), J)
    if B.dom == P:
        return B
    if set(P.objects) != set(B.dom.objects):
        return None
    if set(m for m in P.sorted_mor_names() if not P.is_identity(m)) != \
            set(m for m in B.dom.sorted_mor_names() if not B.dom.is_identity(m)):
        return None
    for m in P.morphisms:
        if P.is_identity(m.name):
            continue
        other = B.dom.mor.get(m.name)
        if other is None or other.dom != m.dom or other.cod != m.cod:
            return None
    for (g, f), h in P.compose.items():
        if P.is_identity(g) or P.is_identity(f):
            continue
        bh = B.dom.compose.get((g, f))
        if bh is None:
            return None
        if P.is_identity(h):
            if not B.dom.is_identity(bh) or B.dom.mor[bh].dom != P.mor[h].dom:
                return None
        elif bh != h:
            return None
    if isinstance(B, SetFunctor):
        on_mor = {}
        for m in P.morphisms:
            if P.is_identity(m.name):
                on_mor[m.name] = B.on_mor[B.dom.id_of(m.dom)]
            else:
                on_mor[m.name] = B.on_mor[m.name]
        return SetFunctor(B.name, P, dict(B.on_obj), on_mor)
    mor_map = {}
    for m in P.morphisms:
        if P.is_identity(m.name):
            mor_map[m.name] = B.mor_map[B.dom.id_of(m.dom)]
        else:
            mor_map[m.name] = B.mor_map[m.name]
    from .core import Functor
    return Functor(B.name, P, B.cod, dict(B.obj_map), mor_map)


def _shape_of_bifunctor(ws: Workspace, B):
    for J in ws.categories.values():
        aligned = _align_bifunctor(B, J)
        if aligned is not None:
            return J, aligned
    raise StructuralError(
        "bifunctor source is not op(J) x J for any workspace category J")


def cmd_end(ws: Workspace, args) -> dict:
    B = _diagram_by_name(ws, args.bifunctor)
    J, B = _shape_of_bifunctor(ws, B)
    side = "end" if args.command == "end" else "coend"
    res = end_coend(B, J, side)
    if res is None:
        raise Failure(f"{side} of {args.bifunctor} verified absent", {})
    if isinstance(B, SetFunctor):
        return {"kind": "finset", "size": len(res.object),
                "elements": list(res.object.sorted()),
                "report": _report_json(res.certificate)}
    return {"kind": "object", "object": res.object,
            "report": _report_json(res.certificate)}


def cmd_kan(ws: Workspace, args) -> dict:
    K = ws.functors.get(args.K)
    if K is None:
        raise StructuralError(f"no functor named {args.K}")
    F = _diagram_by_name(ws, args.F)
    side = LEFT if args.command == "kan-left" else RIGHT
    kr = kan_pointwise(K, F, side)
    if kr.extension is None:
        raise Failure(f"pointwise extension missing at {kr.missing_at}",
                      {"missing_at": kr.missing_at})
    if isinstance(kr.extension, SetFunctor):
        objs = sorted(kr.extension.on_obj)
        return {"kind": "finset",
                "objects": objs,
                "sizes": [len(kr.extension.on_obj[d]) for d in objs],
                "report": _report_json(kr.certificate)}
    return {"kind": "functor",
            "on_objects": dict(sorted(kr.extension.obj_map.items())),
            "report": _report_json(kr.certificate)}


def cmd_adjoint_of(ws: Workspace, args) -> dict:
    G = ws.functors.get(args.G)
    if G is None:
        raise StructuralError(f"no functor named {args.G}")
    adj = adjoint_from_universals(G, side=args.side)
    if adj is None:
        raise Failure(f"{args.side} adjoint of {args.G} verified absent", {})
    side_functor = adj.left if args.side == "left" else adj.right
    snake = snake_check(adj.left, adj.right, adj.unit, adj.counit)
    if not snake.ok:
        raise Failure("snake equations failed", {"report": _report_json(snake)})
    return {"adjoint_on_objects": dict(sorted(side_functor.obj_map.items())),
            "unit": dict(sorted(adj.unit.components.items())),
            "counit": dict(sorted(adj.counit.components.items())),
            "snake": _report_json(snake)}


def cmd_snake(ws: Workspace, args) -> dict:
    try:
        F, G = ws.functors[args.F], ws.functors[args.G]
        eta, eps = ws.nats[args.eta], ws.nats[args.eps]
    except KeyError as missing:
        raise StructuralError(f"unresolved name {missing}") from None
    rep = snake_check(F, G, eta, eps)
    if not rep.ok:
        raise Failure("snake equations failed", {"report": _report_json(rep)})
    return {"report": _report_json(rep)}


def cmd_yoneda_check(ws: Workspace, args) -> dict:
    C = ws.categories.get(args.C)
    if C is None:
        raise StructuralError(f"no category named {args.C}")
    family = [hom_functor(C, c, "covariant") for c in C.sorted_objects()]
    family += [X for X in ws.setfunctors.values() if X.dom == C]
    checked = 0
    for c in C.sorted_objects():
        yc = hom_functor(C, c, "covariant")
        for X in family:
            nats = enumerate_set_naturals(yc, X, guard=args.guard)
            if len(nats) != len(X.on_obj[c]):
                raise Failure("transformation count mismatch",
                              {"at": c, "functor": X.name,
                               "nats": len(nats), "value": len(X.on_obj[c])})
            for x in X.on_obj[c].sorted():
                t = yoneda_map("beta", C, c, X, x)
                if yoneda_map("alpha", C, c, X, t) != x:
                    raise Failure("round trip broke", {"at": c, "element": x})
                checked += 1
            for t in nats:
                x = yoneda_map("alpha", C, c, X, t)
                if yoneda_map("beta", C, c, X, x) != t:
                    raise Failure("round trip broke", {"at": c})
                checked += 1
    return {"checked": checked, "functors": len(family)}


def cmd_density(ws: Workspace, args) -> dict:
    K = ws.functors.get(args.K)
    if K is None:
        raise StructuralError(f"no functor named {args.K}")
    rep = density_check(K)
    if not rep.ok:
        raise Failure("not dense", {"report": _report_json(rep)})
    return {"dense": True, "report": _report_json(rep)}


def cmd_codensity(ws: Workspace, args) -> dict:
    K = ws.functors.get(args.K)
    if K is None:
        raise StructuralError(f"no functor named {args.K}")
    m = codensity_monad(K)
    if m is None:
        raise Failure("codensity monad absent (right extension missing)", {})
    if not m.report.ok:
        raise Failure("monad laws failed", {"report": _report_json(m.report)})
    return {"on_objects": dict(sorted(m.endofunctor.obj_map.items())),
            "mult": dict(sorted(m.mult.components.items())),
            "unit": dict(sorted(m.unit.components.items())),
            "report": _report_json(m.report)}


def cmd_weighted_limit(ws: Workspace, args) -> dict:
    W = ws.setfunctors.get(args.W)
    if W is None:
        raise StructuralError(f"no setfunctor named {args.W}")
    F = _diagram_by_name(ws, args.F)
    side = LIMIT if args.side == "limit" else COLIMIT
    res = weighted_limit(W, F, side)
    if not res.certificate.ok:
        raise Failure("weighted limit certification failed",
                      {"report": _report_json(res.certificate)})
    if isinstance(res.object, str):
        return {"object": res.object, "report": _report_json(res.certificate)}
    return {"size": len(res.object), "elements": list(res.object.sorted()),
            "report": _report_json(res.certificate)}


def _term_of(ws: Workspace, text: str):
    if text in ws.terms:
        return ws.terms[text]
    return parse_term(text)


def cmd_diagram_eval(ws: Workspace, args) -> dict:
    env = ws.env()
    t = _term_of(ws, args.term)
    val = evaluate(t, env)
    return {"components": dict(sorted(val.components.items())),
            "source": val.src.name, "target": val.tgt.name}


def cmd_diagram_normalize(ws: Workspace, args) -> dict:
    env = ws.env()
    t = _term_of(ws, args.term)
    return {"normal_form": pretty(normalize(t, env))}


def cmd_render(ws: Workspace, args) -> dict:
    env = ws.env()
    t = _term_of(ws, args.term)
    svg = render_svg(t, env)
    if not args.output:
        raise StructuralError("render requires -o FILE.svg")
    with open(args.output, "w", encoding="utf8") as fh:
        fh.write(svg)
    return {"written": args.output, "bytes": len(svg.encode("utf8"))}


COMMANDS = {
    "validate": cmd_validate,
    "limit": cmd_limit,
    "colimit": cmd_limit,
    "end": cmd_end,
    "coend": cmd_end,
    "kan-left": cmd_kan,
    "kan-right": cmd_kan,
    "adjoint-of": cmd_adjoint_of,
    "snake": cmd_snake,
    "yoneda-check": cmd_yoneda_check,
    "density": cmd_density,
    "codensity": cmd_codensity,
    "weighted-limit": cmd_weighted_limit,
    "diagram-eval": cmd_diagram_eval,
    "diagram-normalize": cmd_diagram_normalize,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fincat",
                                 description="finite category theory toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--guard", type=int, default=None, help="enumeration budget")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, *params, output=False):
        p = sub.add_parser(name, parents=[common])
        for prm in params:
            p.add_argument(prm)
        p.add_argument("files", nargs="+", metavar="FILE.cat")
        if output:
            p.add_argument("-o", "--output", default=None)
        return p

    add("validate")
    add("limit", "diagram")
    add("colimit", "diagram")
    add("end", "bifunctor")
    add("coend", "bifunctor")
    add("kan-left", "K", "F")
    add("kan-right", "K", "F")
    padj = add("adjoint-of", "G")
    padj.add_argument("--side", choices=["left", "right"], default="left")
    add("snake", "F", "G", "eta", "eps")
    add("yoneda-check", "C")
    add("density", "K")
    add("codensity", "K")
    pwl = add("weighted-limit", "W", "F")
    pwl.add_argument("--side", choices=["limit", "colimit"], default="limit")
    add("diagram-eval", "term")
    add("diagram-normalize", "term")
    add("render", "term", output=True)
    return ap


def emit(args, payload: dict, code: int) -> int:
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command, "seed": args.seed,
               "exit": code, "ok": code == 0, **payload}
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        status = {0: "ok", 1: "FAIL", 2: "error"}[code]
        print(f"fincat {args.command}: {status}")
        for k, v in sorted(payload.items()):
            print(f"  {k}: {json.dumps(v, sort_keys=True) if not isinstance(v, str) else v}")
    return code


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        ws = load_workspace(args.files)
        result = COMMANDS[args.command](ws, args)
        return emit(args, {"result": result}, 0)
    except Failure as f:
        return emit(args, {"message": str(f), **f.payload}, 1)
    except LawViolation as lv:
        return emit(args, {"message": str(lv),
                           "report": lv.report.to_json()}, 1)
    except (StructuralError, GuardExceeded, OSError) as err:
        return emit(args, {"message": str(err)}, 2)


if __name__ == "__main__":
    sys.exit(main())
