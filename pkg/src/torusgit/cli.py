"""Command-line front end: JSON in, canonical JSON (or SVG) out.

Exit codes: 0 success, 1 domain error (structured error object on stdout),
2 malformed input (diagnostic on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema

from . import __version__
from .errors import DimensionMismatch, NotFullDimensional, TorusGITError
from .exactgeom import GramForm, QHyperplane, fmt_q, to_q
from .gitcore import (LinearizationClass, ProjPoint, WeightConfiguration, adapted,
                      bigM, chamber_complex, classify, g_ample_cone, git_class, is_effective,
                      stratify, walls)
from .limits import check_pluecker, check_weights
from .plot import Section, plot_section
from .pointconfig import (PointConfig, classify_via_pluecker, config_walls, gm_chart,
                          gm_crosscheck, is_semistable, nonempty_ss, wall_to_chart)
from .vgit import cross_wall, relevant_chambers

FRACTION = {"oneOf": [{"type": "integer"},
                      {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}]}
INTEGER = {"type": "integer"}

WEIGHTS_SCHEMA = {
    "type": "object",
    "required": ["weights"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "weights": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": INTEGER}},
        "labels": {"type": "array", "items": {"type": "string"}},
        "gram": {"type": "array", "items": {"type": "array", "items": FRACTION}},
    },
    "additionalProperties": False,
}
LIN_SCHEMA = {
    "type": "object",
    "required": ["p"],
    "properties": {"p": {"type": "array", "minItems": 1, "items": FRACTION}, "d": FRACTION},
    "additionalProperties": False,
}
POINT_SCHEMA = {
    "type": "object",
    "minProperties": 1,
    "patternProperties": {r"^[0-9]+$": FRACTION},
    "additionalProperties": False,
}
STATES_SCHEMA = {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 0}}
VECTOR_SCHEMA = {"type": "array", "minItems": 1, "items": FRACTION}
POINTS_SCHEMA = {
    "type": "object",
    "required": ["n", "points"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "points": {"type": "array", "minItems": 1, "items": {"type": "array", "items": FRACTION}},
    },
    "additionalProperties": False,
}
K_SCHEMA = {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}}
SECTION_SCHEMA = {
    "type": "object",
    "required": ["origin", "u", "v"],
    "properties": {"origin": VECTOR_SCHEMA, "u": VECTOR_SCHEMA, "v": VECTOR_SCHEMA},
    "additionalProperties": False,
}


class InputError(Exception):
    pass


# canonical copy of the parsed inputs, embedded in the result document
ECHO: dict = {}


def load(arg: str, schema: dict, what: str):
    """Parse ``arg`` as inline JSON, or as a path to a JSON file, and validate it."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            text = Path(arg).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"{what}: cannot read {arg}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{what}: invalid JSON: {e}") from None
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as e:
        raise InputError(f"{what}: {e.message}") from None
    return doc


# ---- conversions

def q(x: Fraction) -> str:
    return fmt_q(Fraction(x))


def qv(v) -> list:
    return [q(x) for x in v]


def states(S) -> list:
    return sorted(int(i) for i in S)


def hyperplane_doc(h: QHyperplane) -> dict:
    return {"normal": [int(a) for a in h.normal], "offset": q(h.offset)}


def signature_doc(sig) -> list:
    return [states(S) for S in sig.minimal_sets()]


def weights_from(args) -> WeightConfiguration:
    doc = load(args.weights, WEIGHTS_SCHEMA, "weights")
    ws = tuple(tuple(w) for w in doc["weights"])
    if "dim" in doc and any(len(w) != doc["dim"] for w in ws):
        raise InputError("weights: every weight must have length dim")
    gram = GramForm(tuple(tuple(to_q(x) for x in row) for row in doc["gram"])) if "gram" in doc else None
    check_weights(len(ws))
    W = WeightConfiguration(ws, tuple(doc["labels"]) if "labels" in doc else None, gram)
    echo = {"weights": [list(w) for w in W.weights]}
    if gram is not None:
        echo["gram"] = [qv(row) for row in gram.matrix]
    ECHO.update(echo)
    return W


def lin_from(arg) -> LinearizationClass:
    doc = load(arg, LIN_SCHEMA, "linearization")
    L = LinearizationClass(tuple(to_q(x) for x in doc["p"]), to_q(doc.get("d", 1)))
    ECHO["linearization"] = {"p": qv(L.p), "d": q(L.d)}
    return L


def cell_doc(k: int, c) -> dict:
    return {
        "index": k,
        "kind": c.kind.value,
        "dim": c.dim,
        "witness": qv(c.point),
        "walls": list(c.walls),
        "on_boundary": c.on_boundary,
        "signature": signature_doc(c.signature),
    }


def wall_doc(w) -> dict:
    return {"hyperplane": hyperplane_doc(w.hyperplane), "states": states(w.state_set),
            "is_boundary": w.is_boundary}


def sd_doc(sd) -> dict:
    return {"sign": sd.sign, "sq": q(sd.sq)}


# ---- commands

def cmd_classify(args) -> dict:
    W = weights_from(args)
    L = lin_from(args.lin)
    if args.point is not None:
        x = ProjPoint({int(k): to_q(v) for k, v in load(args.point, POINT_SCHEMA, "point").items()})
        S = x.support
    elif args.states is not None:
        S = frozenset(load(args.states, STATES_SCHEMA, "states"))
        x = S
    else:
        raise InputError("classify needs --point or --states")
    cls = classify(x, L, W)
    M = bigM(S, L, W)
    out = {
        "class": cls.value,
        "M": sd_doc(M),
        "M_normalized": sd_doc(bigM(S, LinearizationClass(L.normalized), W)),
        "state_set": states(S),
        "p_hat": qv(L.normalized),
    }
    if cls.value == "Unstable":
        a = adapted(x, L, W)
        out["adapted"] = {"beta": qv(a.beta), "lambda": list(a.lam.lam)}
    return out


def cmd_cone(args) -> dict:
    W = weights_from(args)
    cone = g_ample_cone(W)
    out = {"generators": [qv(g) for g in cone.generators], "slice_vertices": [qv(v) for v in cone.slice.distinct]}
    if W.spanning:
        out["facets"] = [{"a": qv(f.a), "b": q(f.b)} for f in cone.slice.facets]
    if args.lin:
        out["effective"] = is_effective(lin_from(args.lin), W)
    return out


def cmd_walls(args) -> dict:
    W = weights_from(args)
    return {"walls": [wall_doc(w) for w in walls(W)]}


def cmd_chambers(args) -> dict:
    W = weights_from(args)
    cx = chamber_complex(W)
    return {"chambers": [cell_doc(k, cx.cells[k]) for k in cx.chamber_indices]}


def cmd_cells(args) -> dict:
    W = weights_from(args)
    cx = chamber_complex(W)
    return {"cells": [cell_doc(k, c) for k, c in enumerate(cx.cells)],
            "walls": [wall_doc(w) for w in cx.walls]}


def cmd_class(args) -> dict:
    W = weights_from(args)
    L = lin_from(args.lin)
    out = {"p_hat": qv(L.normalized), "signature": signature_doc(git_class(L, W))}
    if W.spanning:
        cx = chamber_complex(W)
        k = cx.locate(L.normalized)
        out["cell"] = k
        out["kind"] = cx.cells[k].kind.value
    return out


def cmd_stratify(args) -> dict:
    W = weights_from(args)
    L = lin_from(args.lin)
    st = stratify(W, L)
    out = {"strata": [{"beta": qv(s.beta), "d_squared": q(s.d_squared),
                       "states": [states(S) for S in s.member_states]} for s in st.strata]}
    if args.point:
        x = ProjPoint({int(k): to_q(v) for k, v in load(args.point, POINT_SCHEMA, "point").items()})
        out["assigned"] = st.strata.index(st.assign(x))
    return out


def cmd_cross(args) -> dict:
    W = weights_from(args)
    cx = chamber_complex(W)
    if args.cell_at is not None:
        pt = tuple(to_q(x) for x in load(args.cell_at, VECTOR_SCHEMA, "cell-at"))
        if len(pt) != W.n:
            raise DimensionMismatch("cell-at point and torus ranks differ")
        k = cx.locate(pt)
    elif args.cell is not None:
        k = args.cell
        if not 0 <= k < len(cx.cells):
            raise InputError(f"cell index {k} out of range")
    else:
        raise InputError("cross needs --cell-at or --cell")
    F = cx.cells[k]
    cp, cm, _ = relevant_chambers(F, W, cx)
    X = cross_wall(F, cp, cm, W, cx)
    comps = []
    for c in X.components:
        comps.append({
            "lambda": list(c.lam.lam), "c": q(c.c),
            "pivotal_states": [states(S) for S in c.pivotal_states],
            "level_set": states(c.level_set),
            "plus_weights": qv(c.plus_weights), "minus_weights": qv(c.minus_weights),
            "d_plus": c.d_plus, "d_minus": c.d_minus, "codim": c.codim,
        })
    return {
        "cell": cell_doc(k, F),
        "C_plus": cx.cells.index(cp), "C_minus": cx.cells.index(cm),
        "segment": [qv(p) for p in X.segment],
        "components": comps,
        "lost_semistable_plus": [states(S) for S in X.plus_report.lost_semistable],
        "lost_semistable_minus": [states(S) for S in X.minus_report.lost_semistable],
        "gained_stable_plus": [states(S) for S in X.plus_report.gained_stable],
        "gained_stable_minus": [states(S) for S in X.minus_report.gained_stable],
    }


def points_from(args) -> PointConfig:
    doc = load(args.points, POINTS_SCHEMA, "points")
    return PointConfig(doc["n"], tuple(tuple(to_q(x) for x in p) for p in doc["points"]))


def cmd_config_stability(args) -> dict:
    P = points_from(args)
    k = load(args.k, K_SCHEMA, "k")
    out = {"class": is_semistable(P, k).value, "nonempty_ss": nonempty_ss(k, P.n)}
    if P.spans():
        out["pluecker_class"] = classify_via_pluecker(P, k).value
    return out


def cmd_config_walls(args) -> dict:
    hs = config_walls(args.n, args.m)
    return {"walls": [hyperplane_doc(h) for h in hs],
            "chart_walls": [hyperplane_doc(h) for h in
                            sorted({wall_to_chart(h, args.n) for h in hs}, key=QHyperplane.sort_key)]}


def cmd_gm_check(args) -> dict:
    r = gm_crosscheck(args.n, args.m)
    return {
        "match": r.match, "walls_match": r.walls_match, "chambers_match": r.chambers_match,
        "config_walls": [hyperplane_doc(h) for h in r.config_walls],
        "torus_walls": [hyperplane_doc(h) for h in r.torus_walls],
        "regions": [{"witness": qv(x.witness), "cell": x.chamber, "match": x.match} for x in r.regions],
    }


def cmd_plot(args) -> str:
    if args.hypersimplex:
        n, m = args.hypersimplex
        check_pluecker(n, m)
        W = gm_chart(n, m)
    elif args.weights:
        W = weights_from(args)
    else:
        raise InputError("plot needs --weights or --hypersimplex")
    sec = None
    if args.section:
        doc = load(args.section, SECTION_SCHEMA, "section")
        sec = Section(*(tuple(to_q(x) for x in doc[k]) for k in ("origin", "u", "v")))
    return plot_section(chamber_complex(W), sec)


COMMANDS = {
    "classify": cmd_classify, "cone": cmd_cone, "walls": cmd_walls, "chambers": cmd_chambers,
    "cells": cmd_cells, "class": cmd_class, "stratify": cmd_stratify, "cross": cmd_cross,
    "config-stability": cmd_config_stability, "config-walls": cmd_config_walls,
    "gm-check": cmd_gm_check, "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="torusgit", description="Exact variation of torus GIT quotients.")
    ap.add_argument("--version", action="version", version=f"torusgit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def torus(name, help_, lin=False, lin_optional=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--weights", required=True, help="weights JSON file or inline JSON")
        if lin:
            p.add_argument("--lin", required=not lin_optional, help='linearization, e.g. {"p":[1],"d":2}')
        return p

    p = torus("classify", "stability of a point or state set", lin=True)
    p.add_argument("--point", help='sparse point {"index": coordinate}')
    p.add_argument("--states", help="state set as a JSON list of indices")
    torus("cone", "G-ample cone and its slice polytope", lin=True, lin_optional=True)
    torus("walls", "walls of the chamber decomposition")
    torus("chambers", "chambers with witnesses and signatures")
    torus("cells", "all cells (chambers and wall cells)")
    torus("class", "GIT class of a linearization", lin=True)
    p = torus("stratify", "closest-point stratification", lin=True)
    p.add_argument("--point", help="optional point to assign to a stratum")
    p = torus("cross", "wall-crossing data for a codimension-one cell")
    p.add_argument("--cell-at", help="a normalized point inside the cell, JSON list")
    p.add_argument("--cell", type=int, help="cell index as listed by `cells`")
    p = sub.add_parser("config-stability", help="stability of weighted points on P^n")
    p.add_argument("--points", required=True, help='{"n": n, "points": [[...], ...]}')
    p.add_argument("--k", required=True, help="positive integer weights, JSON list")
    for name, help_ in (("config-walls", "hypersimplex wall hyperplanes"),
                        ("gm-check", "compare the point-configuration and Pluecker torus chamber systems")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
    p = sub.add_parser("plot", help="SVG picture of the chamber decomposition")
    p.add_argument("--weights", help="weights JSON file or inline JSON")
    p.add_argument("--hypersimplex", type=int, nargs=2, metavar=("N", "M"))
    p.add_argument("--section", help='2-plane {"origin":[...],"u":[...],"v":[...]} for rank > 2')
    p.add_argument("-o", "--output", help="write the SVG here instead of stdout")
    return ap


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    ECHO.clear()
    try:
        result = COMMANDS[args.command](args)
    except (InputError, DimensionMismatch, NotFullDimensional) as e:
        print(f"torusgit {args.command}: {e}", file=stderr)
        return 2
    except TorusGITError as e:
        stdout.write(dumps({"command": args.command, "version": __version__,
                            "error": {"type": type(e).__name__, "message": str(e)}}))
        return 1
    except ValueError as e:
        print(f"torusgit {args.command}: {e}", file=stderr)
        return 2
    if args.command == "plot":
        if args.output:
            Path(args.output).write_text(result, encoding="utf-8")
        else:
            stdout.write(result)
        return 0
    stdout.write(dumps({"command": args.command, "version": __version__, "input": dict(ECHO),
                        "result": result}))
    return 0


def main() -> None:
    sys.exit(run())
